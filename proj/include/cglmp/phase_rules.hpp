#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cglmp/core_model.hpp"

namespace cglmp {

/// Integer phase labels n_j defining all four phase vectors through
///   phi1(j) = 0, phi2(j) = n_j pi / d, vphi1(j) = n_j pi / 2d, vphi2(j) = -n_j pi / 2d.
///
/// Every rule here has the form n_j = j + d * segment(j) with a
/// nondecreasing segment index in {0, 1, 2}.
class PhaseRule {
 public:
  struct Segment {
    std::int64_t first;  // inclusive
    std::int64_t last;   // inclusive; last < first means empty
    bool empty() const noexcept { return last < first; }
    std::int64_t size() const noexcept { return empty() ? 0 : last - first + 1; }
  };

  PhaseRule(Side side, Dimension d);

  Side side() const noexcept { return side_; }
  Dimension dimension() const noexcept { return d_; }
  const std::vector<std::int64_t>& labels() const noexcept { return n_; }
  std::int64_t label(std::size_t j) const { return n_[j]; }

  /// The three index ranges n_j = j, d + j, 2d + j. They partition [0, d).
  const std::array<Segment, 3>& segments() const noexcept { return segments_; }
  int segment_of(std::int64_t j) const;

 private:
  Side side_;
  Dimension d_;
  std::vector<std::int64_t> n_;
  std::array<Segment, 3> segments_;
};

/// n_j = j.
PhaseRule positive_rule(Dimension d);

/// With t = floor((d - 2) / 3): n_j = j for j <= t, d + j for
/// t < j <= d - 2 - t, and 2d + j for j >= d - 1 - t.
PhaseRule negative_rule(Dimension d);

PhaseRule rule_for(Side side, Dimension d);

/// Phase vectors in radians, not reduced mod 2 pi.
PhaseSettings phases_from_rule(const PhaseRule& rule);

}  // namespace cglmp
