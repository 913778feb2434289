#include "cglmp/phase_rules.hpp"

#include <numbers>

namespace cglmp {

PhaseRule::PhaseRule(Side side, Dimension d) : side_(side), d_(d), n_(d.size()) {
  const std::int64_t dv = d.value();
  if (side == Side::Positive) {
    segments_ = {Segment{0, dv - 1}, Segment{dv, dv - 1}, Segment{dv, dv - 1}};
  } else {
    const std::int64_t t = (dv - 2) / 3;  // floor; dv - 2 >= 0
    segments_ = {Segment{0, t}, Segment{t + 1, dv - 2 - t}, Segment{dv - 1 - t, dv - 1}};
  }
  for (int s = 0; s < 3; ++s) {
    const auto& seg = segments_[static_cast<std::size_t>(s)];
    for (std::int64_t j = seg.first; j <= seg.last; ++j)
      n_[static_cast<std::size_t>(j)] = j + s * dv;
  }
}

int PhaseRule::segment_of(std::int64_t j) const {
  for (int s = 0; s < 3; ++s) {
    const auto& seg = segments_[static_cast<std::size_t>(s)];
    if (j >= seg.first && j <= seg.last) return s;
  }
  throw InvalidArgument("index outside [0, d)");
}

PhaseRule positive_rule(Dimension d) { return PhaseRule(Side::Positive, d); }

PhaseRule negative_rule(Dimension d) { return PhaseRule(Side::Negative, d); }

PhaseRule rule_for(Side side, Dimension d) { return PhaseRule(side, d); }

PhaseSettings phases_from_rule(const PhaseRule& rule) {
  const Dimension d = rule.dimension();
  PhaseSettings p = PhaseSettings::zeros(d);
  const double base = std::numbers::pi / static_cast<double>(d.value());
  for (std::size_t j = 0; j < d.size(); ++j) {
    const auto n = static_cast<double>(rule.label(j));
    p.phi2[j] = n * base;
    p.vphi1[j] = n * base / 2.0;
    p.vphi2[j] = -n * base / 2.0;
  }
  return p;
}

}  // namespace cglmp
