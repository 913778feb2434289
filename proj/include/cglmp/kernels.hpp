#pragma once

// Inner loops of the library, each in two flavours: `serial` is the
// reference implementation the tests compare against, `parallel` is the
// OpenMP version used by the public API.

#include <array>
#include <cstdint>
#include <span>

#include "cglmp/core_model.hpp"

namespace cglmp::kernels {

/// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + compensation_; }
  CompensatedSum& operator+=(const CompensatedSum& other) noexcept;

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

double compensated_dot(std::span<const double> a, std::span<const double> b);

/// Off-diagonal Bell-operator element for arbitrary phase vectors:
///   1/((d-1) sin(x)) * { -sin(D11 - x) + sin(D12 + x) + sin(D21 - x) - sin(D22 - x) }
/// with x = pi (j - m) / d and Dab = phi_a(j) - phi_a(m) + vphi_b(j) - vphi_b(m).
/// Returns 0 for j == m.
double general_element(const PhaseSettings& phases, std::size_t j, std::size_t m, std::size_t d);

/// Extremes of (d - 1) * I_d / 2 over deterministic strategies, in integers.
struct StrategyExtremes {
  std::int64_t min_numerator = 0;
  std::int64_t max_numerator = 0;
  std::array<std::int64_t, 4> argmin{};  // (a1, a2, b1, b2)
  std::array<std::int64_t, 4> argmax{};
};

/// (d - 1) - (M11 + M12 - M21 + M22) for one strategy; I_d = 2 * value / (d - 1).
std::int64_t strategy_numerator(std::int64_t a1, std::int64_t a2, std::int64_t b1, std::int64_t b2,
                                Dimension d);

namespace serial {

/// y = A x for a row-major d x d matrix.
void dense_matvec(std::span<const double> a, std::span<const double> x, std::span<double> y);

/// sum_{j != m} alpha_j alpha_m general_element(j, m), compensated.
double closed_form_sum(std::span<const double> alphas, const PhaseSettings& phases);

/// Row-major d x d table of P(A_a = k, B_b = l).
void joint_distribution(std::span<const double> alphas, const PhaseSettings& phases, int a, int b,
                        std::span<double> out);

/// Lexicographic scan over (a1, a2, b1, b2); ties keep the first witness.
StrategyExtremes strategy_scan(Dimension d);

}  // namespace serial

namespace parallel {

void dense_matvec(std::span<const double> a, std::span<const double> x, std::span<double> y);
double closed_form_sum(std::span<const double> alphas, const PhaseSettings& phases);
void joint_distribution(std::span<const double> alphas, const PhaseSettings& phases, int a, int b,
                        std::span<double> out);
/// Same witnesses as the serial scan: partitions merge in lexicographic order.
StrategyExtremes strategy_scan(Dimension d);

}  // namespace parallel

}  // namespace cglmp::kernels
