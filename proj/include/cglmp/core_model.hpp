#pragma once

// The CGLMP functional in correlation-function form,
//   I_d = Q11 + Q12 - Q21 + Q22,
// evaluated for a Schmidt-form state sum_i alpha_i |ii> measured through
// unbiased multiport beam splitters with tunable phase vectors.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cglmp/error.hpp"

namespace cglmp {

enum class Side { Positive, Negative };

std::string_view to_string(Side side);
Side parse_side(std::string_view text);

/// Local dimension d >= 2 of each party.
class Dimension {
 public:
  explicit Dimension(std::int64_t d);

  std::int64_t value() const noexcept { return d_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(d_); }
  /// Spin S = (d - 1) / 2.
  double spin() const noexcept { return 0.5 * static_cast<double>(d_ - 1); }

  friend bool operator==(Dimension, Dimension) = default;

 private:
  std::int64_t d_;
};

/// Real Schmidt coefficients of sum_i alpha_i |ii>. Signs are allowed.
class SchmidtState {
 public:
  static constexpr double kNormTolerance = 1e-12;

  /// Throws InvalidArgument unless sum alpha_i^2 = 1 within kNormTolerance.
  explicit SchmidtState(std::vector<double> alphas);

  /// Rescales an arbitrary nonzero vector to unit norm.
  static SchmidtState normalized(std::vector<double> raw);
  static SchmidtState maximally_entangled(Dimension d);
  static SchmidtState product(Dimension d);

  Dimension dimension() const { return Dimension(static_cast<std::int64_t>(alphas_.size())); }
  std::span<const double> alphas() const noexcept { return alphas_; }
  double operator[](std::size_t i) const { return alphas_[i]; }

  /// Copy with the first nonzero coefficient made positive.
  SchmidtState canonical() const;

 private:
  std::vector<double> alphas_;
};

/// Phase vectors of the four local measurements: phi1, phi2 for Alice's
/// settings and vphi1, vphi2 for Bob's.
struct PhaseSettings {
  std::vector<double> phi1;
  std::vector<double> phi2;
  std::vector<double> vphi1;
  std::vector<double> vphi2;

  static PhaseSettings zeros(Dimension d);

  /// Throws InvalidDimension unless all four vectors have length d.
  void validate(Dimension d) const;
  Dimension dimension() const;

  const std::vector<double>& alice(int setting) const;
  const std::vector<double>& bob(int setting) const;
};

/// White-noise fraction F of rho(F) = F * 1/d^2 + (1 - F) |Phi><Phi|.
class NoiseModel {
 public:
  explicit NoiseModel(double fraction);
  double fraction() const noexcept { return fraction_; }

 private:
  double fraction_;
};

struct ClassicalBounds {
  double lower;
  double upper;
};

/// Local-realistic range of I_d: [-2, 2] for d = 2, else [-2(d+1)/(d-1), 2].
ClassicalBounds classical_bounds(Dimension d);

/// f^{ij}(m, n) = S - ((eps(i - j) (m + n)) mod d) with the remainder taken in [0, d).
double correlation_eigenvalue(int i, int j, std::int64_t m, std::int64_t n, Dimension d);

/// Integer remainder part of the above: (eps(i - j) (m + n)) mod d in [0, d).
std::int64_t correlation_residue(int i, int j, std::int64_t m, std::int64_t n, Dimension d);

/// P(A_a = k, B_b = l) for the UMBS measurement pair (a, b), in the
/// (k - l) outcome labelling of the beam-splitter transition matrix.
double joint_probability(const SchmidtState& state, const PhaseSettings& phases, int a, int b,
                         std::int64_t k, std::int64_t l);

/// Full d x d table of joint_probability for one setting pair, row-major in (k, l).
std::vector<double> joint_distribution(const SchmidtState& state, const PhaseSettings& phases, int a,
                                       int b);

/// Q11, Q12, Q21, Q22 from the joint distributions. Bob's outcome n of the
/// correlation function reads the beam-splitter port (-n mod d).
std::array<double, 4> correlators(const SchmidtState& state, const PhaseSettings& phases);
std::array<double, 4> correlators(const SchmidtState& state, const PhaseSettings& phases,
                                  NoiseModel noise);

/// I_d through the probability tables. O(d^4); intended as an oracle.
double bell_value_from_probabilities(const SchmidtState& state, const PhaseSettings& phases);
double bell_value_from_probabilities(const SchmidtState& state, const PhaseSettings& phases,
                                     NoiseModel noise);

/// I_d through the real-valued double sum over j != m. O(d^2).
double bell_value_closed_form(const SchmidtState& state, const PhaseSettings& phases);

struct NoiseThreshold {
  double f_min;    // 0 when there is no violation
  bool violation;  // f_min > 0
};

/// F_min = 1 - 2 / i_max. Values <= margin are reported as 0 without violation.
NoiseThreshold noise_threshold_positive(double i_max, double margin = 0.0);

/// F_min = 1 + |lower bound(d)| / i_min. Values <= margin are reported as 0.
NoiseThreshold noise_threshold_negative(double i_min, Dimension d, double margin = 0.0);

struct Entropy {
  double bits;   // -sum alpha_i^2 log2 alpha_i^2
  double ratio;  // bits / log2(d)
};

Entropy entropy_ratio(const SchmidtState& state);

}  // namespace cglmp
