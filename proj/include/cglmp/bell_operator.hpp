#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "cglmp/core_model.hpp"
#include "cglmp/phase_rules.hpp"

namespace cglmp {

namespace detail {
class ToeplitzBank;
}

/// Off-diagonal Bell-operator element B_{jm} = <jj|B|mm> for arbitrary
/// phase vectors; 0 on the diagonal.
double element_general(const PhaseSettings& phases, std::int64_t j, std::int64_t m);

/// 4/(d-1) sin[(2(j-m) - (n_j - n_m)) pi / 2d] / sin[(j-m) pi / d]; 0 on the diagonal.
double element_rule(const PhaseRule& rule, std::int64_t j, std::int64_t m);

enum class Representation { Auto, Dense, Structured };

struct BuildOptions {
  static constexpr std::int64_t kDefaultDenseCap = 20000;

  Representation representation = Representation::Auto;
  /// Largest d for which a dense d x d array may be materialized.
  std::int64_t dense_cap = kDefaultDenseCap;
};

/// Real symmetric d x d Bell matrix in the |jj> basis.
///
/// Dense matrices hold all d^2 entries. Structured matrices exploit
/// n_j - n_m = (j - m) + d (s_j - s_m): every block between index segments
/// s and s' is Toeplitz in (j - m), generated by one of five sequences
/// g_{s-s'}(j - m) of length 2d - 1. Products with x go through circulant
/// embedding and real FFTs, O(d log d).
class BellMatrix {
 public:
  enum class Kind { Dense, PositiveToeplitz, SegmentedToeplitz };

  static BellMatrix dense(Dimension d, std::vector<double> row_major);
  static BellMatrix structured(const PhaseRule& rule);

  Dimension dimension() const noexcept { return d_; }
  Kind kind() const noexcept { return kind_; }
  bool is_dense() const noexcept { return kind_ == Kind::Dense; }

  /// Element on demand; structured forms never materialize d^2 values.
  double operator()(std::int64_t j, std::int64_t m) const;

  /// y = B x. Throws InvalidDimension on a length mismatch.
  void multiply(std::span<const double> x, std::span<double> y) const;

  /// max_j sum_m |B_jm|, cached at construction.
  double gershgorin_radius() const noexcept { return gershgorin_; }

  /// Row-major copy of all entries. Throws CapacityError above `cap`.
  std::vector<double> to_dense(std::int64_t cap = BuildOptions::kDefaultDenseCap) const;

 private:
  BellMatrix(Dimension d, Kind kind) : d_(d), kind_(kind) {}

  Dimension d_;
  Kind kind_;
  double gershgorin_ = 0.0;
  std::vector<double> dense_;
  // Structured data: segment index per row and the shared FFT bank.
  std::vector<std::uint8_t> segment_;
  std::shared_ptr<const detail::ToeplitzBank> bank_;
};

BellMatrix build(const PhaseRule& rule, const BuildOptions& options = {});

/// General phases have no exploitable structure: always dense.
BellMatrix build(const PhaseSettings& phases, const BuildOptions& options = {});

std::vector<double> matvec(const BellMatrix& b, std::span<const double> x);

/// x^T B x.
double quadratic_form(const BellMatrix& b, const SchmidtState& state);
double quadratic_form(const BellMatrix& b, std::span<const double> x);

/// Comma-separated d x d grid, one row per line, 17 significant digits.
/// Debugging aid; d <= 64.
void write_grid_csv(const BellMatrix& b, std::ostream& out);

}  // namespace cglmp
