#include <cmath>
#include <numbers>
#include <vector>

#include "cglmp/kernels.hpp"

namespace cglmp::kernels::parallel {

void dense_matvec(std::span<const double> a, std::span<const double> x, std::span<double> y) {
  const auto d = static_cast<std::int64_t>(x.size());
#pragma omp parallel for schedule(static) if (d >= 256)
  for (std::int64_t j = 0; j < d; ++j) {
    const double* row = a.data() + j * d;
    double acc = 0.0;
#pragma omp simd reduction(+ : acc)
    for (std::int64_t m = 0; m < d; ++m) acc += row[m] * x[m];
    y[j] = acc;
  }
}

double closed_form_sum(std::span<const double> alphas, const PhaseSettings& phases) {
  const auto d = static_cast<std::int64_t>(alphas.size());
  // One compensated partial per row, summed in row order so the result does
  // not depend on the thread count.
  std::vector<CompensatedSum> rows(static_cast<std::size_t>(d));
#pragma omp parallel for schedule(dynamic, 16) if (d >= 64)
  for (std::int64_t j = 0; j < d; ++j) {
    CompensatedSum acc;
    for (std::int64_t m = 0; m < d; ++m) {
      if (j == m) continue;
      acc.add(alphas[j] * alphas[m] *
              general_element(phases, static_cast<std::size_t>(j), static_cast<std::size_t>(m),
                              static_cast<std::size_t>(d)));
    }
    rows[static_cast<std::size_t>(j)] = acc;
  }
  CompensatedSum total;
  for (const auto& r : rows) total += r;
  return total.value();
}

void joint_distribution(std::span<const double> alphas, const PhaseSettings& phases, int a, int b,
                        std::span<double> out) {
  const auto d = static_cast<std::int64_t>(alphas.size());
  const auto& pa = phases.alice(a);
  const auto& pb = phases.bob(b);
  const double w = 2.0 * std::numbers::pi / static_cast<double>(d);
  const double norm = 1.0 / static_cast<double>(d * d);
#pragma omp parallel for collapse(2) schedule(static) if (d >= 8)
  for (std::int64_t k = 0; k < d; ++k) {
    for (std::int64_t l = 0; l < d; ++l) {
      const double kl = static_cast<double>(k - l);
      double acc = 0.0;
      for (std::int64_t j = 0; j < d; ++j) {
        for (std::int64_t m = 0; m < d; ++m) {
          acc += alphas[j] * alphas[m] *
                 std::cos(w * static_cast<double>(j - m) * kl + pa[j] - pa[m] + pb[j] - pb[m]);
        }
      }
      out[k * d + l] = acc * norm;
    }
  }
}

StrategyExtremes strategy_scan(Dimension d) {
  const std::int64_t n = d.value();
  std::vector<StrategyExtremes> partial(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic) if (n >= 6)
  for (std::int64_t a1 = 0; a1 < n; ++a1) {
    StrategyExtremes best;
    bool first = true;
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
    partial[static_cast<std::size_t>(a1)] = best;
  }
  // Merge in a1 order with strict comparisons: the earliest witness wins.
  StrategyExtremes out = partial.front();
  for (std::size_t i = 1; i < partial.size(); ++i) {
    if (partial[i].min_numerator < out.min_numerator) {
      out.min_numerator = partial[i].min_numerator;
      out.argmin = partial[i].argmin;
    }
    if (partial[i].max_numerator > out.max_numerator) {
      out.max_numerator = partial[i].max_numerator;
      out.argmax = partial[i].argmax;
    }
  }
  return out;
}

}  // namespace cglmp::kernels::parallel
