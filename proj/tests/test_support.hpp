#pragma once

// Random generators and independent reference computations shared by the
// unit tests. Nothing here calls into the code paths it is used to check.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "cglmp/core_model.hpp"

namespace cglmp::test {

inline constexpr double kPi = std::numbers::pi;

inline std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::vector<double> v(n);
  for (double& x : v) x = normal(rng);
  return v;
}

inline SchmidtState random_state(Dimension d, std::mt19937_64& rng) {
  return SchmidtState::normalized(random_vector(d.size(), rng));
}

inline PhaseSettings random_phases(Dimension d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  PhaseSettings p = PhaseSettings::zeros(d);
  for (auto* v : {&p.phi1, &p.phi2, &p.vphi1, &p.vphi2})
    for (double& x : *v) x = angle(rng);
  return p;
}

/// |<k, l| (U_a (x) U_b) |Phi>|^2 with U_kl = gamma^{kl} e^{i phi(l)} / sqrt(d)
/// on Alice's side and the conjugate transition matrix on Bob's side, which is
/// the beam-splitter convention whose joint probabilities depend on (k - l).
/// Computed from complex amplitudes rather than the cosine double sum.
inline double amplitude_probability(const SchmidtState& s, const std::vector<double>& pa,
                                    const std::vector<double>& pb, std::int64_t k,
                                    std::int64_t l) {
  const auto d = static_cast<std::int64_t>(s.alphas().size());
  std::complex<double> amp = 0.0;
  for (std::int64_t j = 0; j < d; ++j) {
    const double theta = 2.0 * kPi * static_cast<double>((k - l) * j) / static_cast<double>(d) +
                         pa[static_cast<std::size_t>(j)] + pb[static_cast<std::size_t>(j)];
    amp += s[static_cast<std::size_t>(j)] * std::polar(1.0, theta);
  }
  return std::norm(amp) / static_cast<double>(d * d);
}

/// Plain dense matrix-vector product.
inline std::vector<double> naive_matvec(const std::vector<double>& a, const std::vector<double>& x) {
  const std::size_t d = x.size();
  std::vector<double> y(d, 0.0);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t m = 0; m < d; ++m) y[j] += a[j * d + m] * x[m];
  return y;
}

}  // namespace cglmp::test
