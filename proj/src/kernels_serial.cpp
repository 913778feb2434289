#include <cmath>
#include <numbers>

#include "cglmp/kernels.hpp"

namespace cglmp::kernels {

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

CompensatedSum& CompensatedSum::operator+=(const CompensatedSum& other) noexcept {
  add(other.sum_);
  add(other.compensation_);
  return *this;
}

double compensated_dot(std::span<const double> a, std::span<const double> b) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < a.size(); ++i) acc.add(a[i] * b[i]);
  return acc.value();
}

double general_element(const PhaseSettings& p, std::size_t j, std::size_t m, std::size_t d) {
  if (j == m) return 0.0;
  const double x = std::numbers::pi * (static_cast<double>(j) - static_cast<double>(m)) /
                   static_cast<double>(d);
  const double a1 = p.phi1[j] - p.phi1[m];
  const double a2 = p.phi2[j] - p.phi2[m];
  const double b1 = p.vphi1[j] - p.vphi1[m];
  const double b2 = p.vphi2[j] - p.vphi2[m];
  const double bracket = -std::sin(a1 + b1 - x) + std::sin(a1 + b2 + x) + std::sin(a2 + b1 - x) -
                         std::sin(a2 + b2 - x);
  return bracket / (static_cast<double>(d - 1) * std::sin(x));
}

std::int64_t strategy_numerator(std::int64_t a1, std::int64_t a2, std::int64_t b1, std::int64_t b2,
                                Dimension d) {
  const std::int64_t m11 = correlation_residue(1, 1, a1, b1, d);
  const std::int64_t m12 = correlation_residue(1, 2, a1, b2, d);
  const std::int64_t m21 = correlation_residue(2, 1, a2, b1, d);
  const std::int64_t m22 = correlation_residue(2, 2, a2, b2, d);
  return (d.value() - 1) - (m11 + m12 - m21 + m22);
}

namespace serial {

void dense_matvec(std::span<const double> a, std::span<const double> x, std::span<double> y) {
  const std::size_t d = x.size();
  for (std::size_t j = 0; j < d; ++j) {
    const double* row = a.data() + j * d;
    double acc = 0.0;
    for (std::size_t m = 0; m < d; ++m) acc += row[m] * x[m];
    y[j] = acc;
  }
}

double closed_form_sum(std::span<const double> alphas, const PhaseSettings& phases) {
  const std::size_t d = alphas.size();
  CompensatedSum acc;
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t m = 0; m < d; ++m) {
      if (j == m) continue;
      acc.add(alphas[j] * alphas[m] * general_element(phases, j, m, d));
    }
  }
  return acc.value();
}

void joint_distribution(std::span<const double> alphas, const PhaseSettings& phases, int a, int b,
                        std::span<double> out) {
  const std::size_t d = alphas.size();
  const auto& pa = phases.alice(a);
  const auto& pb = phases.bob(b);
  const double w = 2.0 * std::numbers::pi / static_cast<double>(d);
  const double norm = 1.0 / static_cast<double>(d * d);
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t l = 0; l < d; ++l) {
      const double kl = static_cast<double>(k) - static_cast<double>(l);
      double acc = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t m = 0; m < d; ++m) {
          const double jm = static_cast<double>(j) - static_cast<double>(m);
          acc += alphas[j] * alphas[m] *
                 std::cos(w * jm * kl + pa[j] - pa[m] + pb[j] - pb[m]);
        }
      }
      out[k * d + l] = acc * norm;
    }
  }
}

StrategyExtremes strategy_scan(Dimension d) {
  const std::int64_t n = d.value();
  StrategyExtremes best;
  bool first = true;
  for (std::int64_t a1 = 0; a1 < n; ++a1)
    for (std::int64_t a2 = 0; a2 < n; ++a2)
      for (std::int64_t b1 = 0; b1 < n; ++b1)
        for (std::int64_t b2 = 0; b2 < n; ++b2) {
          const std::int64_t v = strategy_numerator(a1, a2, b1, b2, d);
          if (first || v < best.min_numerator) {
            best.min_numerator = v;
            best.argmin = {a1, a2, b1, b2};
          }
          if (first || v > best.max_numerator) {
            best.max_numerator = v;
            best.argmax = {a1, a2, b1, b2};
          }
          first = false;
        }
  return best;
}

}  // namespace serial
}  // namespace cglmp::kernels
