#include "cglmp/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cglmp/kernels.hpp"

namespace cglmp {

std::string_view to_string(Side side) {
  return side == Side::Positive ? "positive" : "negative";
}

Side parse_side(std::string_view text) {
  if (text == "positive") return Side::Positive;
  if (text == "negative") return Side::Negative;
  throw InvalidArgument("unknown side '" + std::string(text) + "'");
}

Dimension::Dimension(std::int64_t d) : d_(d) {
  if (d < 2) throw InvalidDimension("dimension must be >= 2, got " + std::to_string(d));
}

SchmidtState::SchmidtState(std::vector<double> alphas) : alphas_(std::move(alphas)) {
  if (alphas_.size() < 2) throw InvalidDimension("Schmidt state needs at least 2 coefficients");
  kernels::CompensatedSum norm;
  for (double a : alphas_) {
    if (!std::isfinite(a)) throw InvalidArgument("non-finite Schmidt coefficient");
    norm.add(a * a);
  }
  if (std::abs(norm.value() - 1.0) > kNormTolerance)
    throw InvalidArgument("Schmidt coefficients are not normalized (sum of squares " +
                          std::to_string(norm.value()) + ")");
}

SchmidtState SchmidtState::normalized(std::vector<double> raw) {
  const double n = std::sqrt(kernels::compensated_dot(raw, raw));
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidArgument("cannot normalize a zero vector");
  for (double& a : raw) a /= n;
  return SchmidtState(std::move(raw));
}

SchmidtState SchmidtState::maximally_entangled(Dimension d) {
  return SchmidtState::normalized(std::vector<double>(d.size(), 1.0));
}

SchmidtState SchmidtState::product(Dimension d) {
  std::vector<double> a(d.size(), 0.0);
  a[0] = 1.0;
  return SchmidtState(std::move(a));
}

SchmidtState SchmidtState::canonical() const {
  SchmidtState out = *this;
  const auto it = std::find_if(out.alphas_.begin(), out.alphas_.end(),
                               [](double a) { return a != 0.0; });
  if (it != out.alphas_.end() && *it < 0.0)
    for (double& a : out.alphas_) a = -a;
  return out;
}

PhaseSettings PhaseSettings::zeros(Dimension d) {
  const std::vector<double> z(d.size(), 0.0);
  return PhaseSettings{z, z, z, z};
}

void PhaseSettings::validate(Dimension d) const {
  for (const auto* v : {&phi1, &phi2, &vphi1, &vphi2})
    if (v->size() != d.size())
      throw InvalidDimension("phase vector length " + std::to_string(v->size()) +
                             " does not match d = " + std::to_string(d.value()));
}

Dimension PhaseSettings::dimension() const {
  Dimension d(static_cast<std::int64_t>(phi1.size()));
  validate(d);
  return d;
}

const std::vector<double>& PhaseSettings::alice(int setting) const {
  if (setting == 1) return phi1;
  if (setting == 2) return phi2;
  throw InvalidArgument("measurement setting must be 1 or 2");
}

const std::vector<double>& PhaseSettings::bob(int setting) const {
  if (setting == 1) return vphi1;
  if (setting == 2) return vphi2;
  throw InvalidArgument("measurement setting must be 1 or 2");
}

NoiseModel::NoiseModel(double fraction) : fraction_(fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0))
    throw InvalidArgument("noise fraction must lie in [0, 1]");
}

ClassicalBounds classical_bounds(Dimension d) {
  const auto n = static_cast<double>(d.value());
  if (d.value() == 2) return {-2.0, 2.0};
  return {-2.0 * (n + 1.0) / (n - 1.0), 2.0};
}

std::int64_t correlation_residue(int i, int j, std::int64_t m, std::int64_t n, Dimension d) {
  if (i < 1 || i > 2 || j < 1 || j > 2) throw InvalidArgument("setting index must be 1 or 2");
  const std::int64_t dv = d.value();
  if (m < 0 || m >= dv || n < 0 || n >= dv) throw InvalidArgument("outcome out of range [0, d)");
  const std::int64_t eps = (i - j) >= 0 ? 1 : -1;
  const std::int64_t r = (eps * (m + n)) % dv;
  return r < 0 ? r + dv : r;
}

double correlation_eigenvalue(int i, int j, std::int64_t m, std::int64_t n, Dimension d) {
  return d.spin() - static_cast<double>(correlation_residue(i, j, m, n, d));
}

namespace {

void check_compatible(const SchmidtState& state, const PhaseSettings& phases) {
  phases.validate(state.dimension());
}

}  // namespace

double joint_probability(const SchmidtState& state, const PhaseSettings& phases, int a, int b,
                         std::int64_t k, std::int64_t l) {
  check_compatible(state, phases);
  const Dimension d = state.dimension();
  if (k < 0 || k >= d.value() || l < 0 || l >= d.value())
    throw InvalidArgument("outcome out of range [0, d)");
  const auto& pa = phases.alice(a);
  const auto& pb = phases.bob(b);
  const auto alpha = state.alphas();
  const double w = 2.0 * std::numbers::pi / static_cast<double>(d.value());
  const auto kl = static_cast<double>(k - l);
  double acc = 0.0;
  for (std::size_t j = 0; j < d.size(); ++j)
    for (std::size_t m = 0; m < d.size(); ++m)
      acc += alpha[j] * alpha[m] *
             std::cos(w * (static_cast<double>(j) - static_cast<double>(m)) * kl + pa[j] - pa[m] +
                      pb[j] - pb[m]);
  return acc / static_cast<double>(d.value() * d.value());
}

std::vector<double> joint_distribution(const SchmidtState& state, const PhaseSettings& phases,
                                       int a, int b) {
  check_compatible(state, phases);
  std::vector<double> out(state.dimension().size() * state.dimension().size());
  kernels::parallel::joint_distribution(state.alphas(), phases, a, b, out);
  return out;
}

std::array<double, 4> correlators(const SchmidtState& state, const PhaseSettings& phases,
                                  NoiseModel noise) {
  check_compatible(state, phases);
  const Dimension d = state.dimension();
  const std::size_t n = d.size();
  const double white = 1.0 / static_cast<double>(n * n);
  const double keep = 1.0 - noise.fraction();
  constexpr std::array<std::array<int, 2>, 4> pairs{{{1, 1}, {1, 2}, {2, 1}, {2, 2}}};
  std::array<double, 4> q{};
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [i, j] = pairs[p];
    const auto prob = joint_distribution(state, phases, i, j);
    kernels::CompensatedSum acc;
    for (std::size_t m = 0; m < n; ++m) {
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t port = (n - k) % n;
        const double pr = noise.fraction() * white + keep * prob[m * n + port];
        acc.add(correlation_eigenvalue(i, j, static_cast<std::int64_t>(m),
                                       static_cast<std::int64_t>(k), d) *
                pr);
      }
    }
    q[p] = acc.value() / d.spin();
  }
  return q;
}

std::array<double, 4> correlators(const SchmidtState& state, const PhaseSettings& phases) {
  return correlators(state, phases, NoiseModel(0.0));
}

double bell_value_from_probabilities(const SchmidtState& state, const PhaseSettings& phases,
                                     NoiseModel noise) {
  const auto q = correlators(state, phases, noise);
  return q[0] + q[1] - q[2] + q[3];
}

double bell_value_from_probabilities(const SchmidtState& state, const PhaseSettings& phases) {
  return bell_value_from_probabilities(state, phases, NoiseModel(0.0));
}

double bell_value_closed_form(const SchmidtState& state, const PhaseSettings& phases) {
  check_compatible(state, phases);
  return kernels::parallel::closed_form_sum(state.alphas(), phases);
}

NoiseThreshold noise_threshold_positive(double i_max, double margin) {
  if (!(i_max > 0.0)) throw InvalidArgument("positive-side threshold needs i_max > 0");
  const double f = 1.0 - 2.0 / i_max;
  if (f <= margin) return {0.0, false};
  return {f, true};
}

NoiseThreshold noise_threshold_negative(double i_min, Dimension d, double margin) {
  if (!(i_min < 0.0)) throw InvalidArgument("negative-side threshold needs i_min < 0");
  const double bound = -classical_bounds(d).lower;
  const double f = 1.0 + bound / i_min;
  if (f <= margin) return {0.0, false};
  return {f, true};
}

Entropy entropy_ratio(const SchmidtState& state) {
  kernels::CompensatedSum acc;
  for (double a : state.alphas()) {
    const double p = a * a;
    if (p > 0.0) acc.add(-p * std::log2(p));
  }
  const double bits = std::max(0.0, acc.value());
  const double smax = std::log2(static_cast<double>(state.dimension().value()));
  return {bits, std::clamp(bits / smax, 0.0, 1.0)};
}

}  // namespace cglmp
