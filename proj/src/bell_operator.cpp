#include "cglmp/bell_operator.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <string>

#include "cglmp/kernels.hpp"
#include "toeplitz_bank.hpp"

namespace cglmp {

namespace {

void check_index(std::int64_t j, std::int64_t m, Dimension d) {
  if (j < 0 || m < 0 || j >= d.value() || m >= d.value())
    throw InvalidArgument("matrix index out of range [0, d)");
}

// Generator of block (s, s') for delta_s = s - s', using
// sin(a - delta_s pi / 2) with a = delta pi / 2d reduced by hand.
double segmented_generator(std::int64_t d, int delta_s, std::int64_t delta) {
  if (delta == 0) return 0.0;
  const double a = std::numbers::pi * static_cast<double>(delta) / (2.0 * static_cast<double>(d));
  const double c = 2.0 / static_cast<double>(d - 1);
  switch (delta_s) {
    case 0: return c / std::cos(a);
    case 1: return -c / std::sin(a);
    case -1: return c / std::sin(a);
    default: return -c / std::cos(a);  // +-2
  }
}

double dense_radius(std::span<const double> a, std::size_t d) {
  double best = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    double row = 0.0;
    for (std::size_t m = 0; m < d; ++m) row += std::abs(a[j * d + m]);
    best = std::max(best, row);
  }
  return best;
}

void check_dense_cap(Dimension d, std::int64_t cap) {
  if (d.value() > cap)
    throw CapacityError("dense Bell matrix requested for d = " + std::to_string(d.value()) +
                        " above the cap " + std::to_string(cap));
}

}  // namespace

double element_general(const PhaseSettings& phases, std::int64_t j, std::int64_t m) {
  const Dimension d = phases.dimension();
  check_index(j, m, d);
  return kernels::general_element(phases, static_cast<std::size_t>(j), static_cast<std::size_t>(m),
                                  d.size());
}

double element_rule(const PhaseRule& rule, std::int64_t j, std::int64_t m) {
  const Dimension d = rule.dimension();
  check_index(j, m, d);
  if (j == m) return 0.0;
  const std::int64_t dv = d.value();
  const std::int64_t delta = j - m;
  const std::int64_t dn = rule.label(static_cast<std::size_t>(j)) -
                          rule.label(static_cast<std::size_t>(m));
  const double num = std::sin(static_cast<double>(2 * delta - dn) * std::numbers::pi /
                              (2.0 * static_cast<double>(dv)));
  const double den = std::sin(static_cast<double>(delta) * std::numbers::pi / static_cast<double>(dv));
  return 4.0 / static_cast<double>(dv - 1) * num / den;
}

BellMatrix BellMatrix::dense(Dimension d, std::vector<double> row_major) {
  if (row_major.size() != d.size() * d.size())
    throw InvalidDimension("dense storage must hold d * d entries");
  BellMatrix b(d, Kind::Dense);
  b.dense_ = std::move(row_major);
  b.gershgorin_ = dense_radius(b.dense_, d.size());
  return b;
}

BellMatrix BellMatrix::structured(const PhaseRule& rule) {
  const Dimension d = rule.dimension();
  const std::int64_t dv = d.value();
  BellMatrix b(d, rule.side() == Side::Positive ? Kind::PositiveToeplitz : Kind::SegmentedToeplitz);

  std::array<detail::ToeplitzBank::Range, 3> ranges{};
  for (std::size_t s = 0; s < 3; ++s)
    ranges[s] = {rule.segments()[s].first, rule.segments()[s].last};

  std::array<bool, 5> needed{};
  for (std::size_t s = 0; s < 3; ++s)
    for (std::size_t t = 0; t < 3; ++t)
      if (!ranges[s].empty() && !ranges[t].empty()) needed[s + 2 - t] = true;

  std::array<std::vector<double>, 5> generators;
  for (int k = 0; k < 5; ++k) {
    if (!needed[static_cast<std::size_t>(k)]) continue;
    auto& g = generators[static_cast<std::size_t>(k)];
    g.resize(static_cast<std::size_t>(2 * dv - 1));
#pragma omp parallel for schedule(static) if (dv >= 4096)
    for (std::int64_t delta = -(dv - 1); delta <= dv - 1; ++delta)
      g[static_cast<std::size_t>(delta + dv - 1)] = segmented_generator(dv, k - 2, delta);
  }

  b.segment_.resize(d.size());
  for (std::int64_t j = 0; j < dv; ++j)
    b.segment_[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(rule.segment_of(j));
  b.bank_ = std::make_shared<const detail::ToeplitzBank>(dv, std::move(generators), ranges);
  b.gershgorin_ = b.bank_->gershgorin_radius(b.segment_);
  return b;
}

double BellMatrix::operator()(std::int64_t j, std::int64_t m) const {
  check_index(j, m, d_);
  if (is_dense()) return dense_[static_cast<std::size_t>(j) * d_.size() + static_cast<std::size_t>(m)];
  const int ds = segment_[static_cast<std::size_t>(j)] - segment_[static_cast<std::size_t>(m)];
  return bank_->generator(ds, j - m);
}

void BellMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != d_.size() || y.size() != d_.size())
    throw InvalidDimension("matvec operand length does not match d = " + std::to_string(d_.value()));
  if (is_dense()) {
    kernels::parallel::dense_matvec(dense_, x, y);
  } else {
    bank_->multiply(x, y);
  }
}

std::vector<double> BellMatrix::to_dense(std::int64_t cap) const {
  check_dense_cap(d_, cap);
  if (is_dense()) return dense_;
  const std::int64_t dv = d_.value();
  std::vector<double> out(d_.size() * d_.size());
#pragma omp parallel for schedule(static) if (dv >= 256)
  for (std::int64_t j = 0; j < dv; ++j)
    for (std::int64_t m = 0; m < dv; ++m)
      out[static_cast<std::size_t>(j * dv + m)] = (*this)(j, m);
  return out;
}

BellMatrix build(const PhaseRule& rule, const BuildOptions& options) {
  const Dimension d = rule.dimension();
  bool dense = false;
  switch (options.representation) {
    case Representation::Dense:
      check_dense_cap(d, options.dense_cap);
      dense = true;
      break;
    case Representation::Structured: dense = false; break;
    case Representation::Auto: dense = d.value() <= options.dense_cap; break;
  }
  if (!dense) return BellMatrix::structured(rule);

  const std::int64_t dv = d.value();
  std::vector<double> a(d.size() * d.size());
#pragma omp parallel for schedule(static) if (dv >= 256)
  for (std::int64_t j = 0; j < dv; ++j)
    for (std::int64_t m = 0; m < dv; ++m)
      a[static_cast<std::size_t>(j * dv + m)] = element_rule(rule, j, m);
  return BellMatrix::dense(d, std::move(a));
}

BellMatrix build(const PhaseSettings& phases, const BuildOptions& options) {
  const Dimension d = phases.dimension();
  if (options.representation == Representation::Structured)
    throw InvalidArgument("general phase settings have no structured representation");
  check_dense_cap(d, options.dense_cap);
  const std::size_t n = d.size();
  std::vector<double> a(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t m = 0; m < n; ++m) a[j * n + m] = kernels::general_element(phases, j, m, n);
  return BellMatrix::dense(d, std::move(a));
}

std::vector<double> matvec(const BellMatrix& b, std::span<const double> x) {
  std::vector<double> y(b.dimension().size());
  b.multiply(x, y);
  return y;
}

double quadratic_form(const BellMatrix& b, std::span<const double> x) {
  const auto y = matvec(b, x);
  return kernels::compensated_dot(x, y);
}

double quadratic_form(const BellMatrix& b, const SchmidtState& state) {
  return quadratic_form(b, state.alphas());
}

void write_grid_csv(const BellMatrix& b, std::ostream& out) {
  constexpr std::int64_t kGridCap = 64;
  if (b.dimension().value() > kGridCap)
    throw CapacityError("matrix dumps are limited to d <= 64");
  const std::int64_t d = b.dimension().value();
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(17);
  for (std::int64_t j = 0; j < d; ++j) {
    for (std::int64_t m = 0; m < d; ++m) {
      if (m > 0) out << ',';
      out << b(j, m);
    }
    out << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

}  // namespace cglmp
