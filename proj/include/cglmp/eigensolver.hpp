#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "cglmp/bell_operator.hpp"

namespace cglmp {

struct IterationInfo {
  std::int64_t iteration;  // matvecs so far
  double rayleigh;         // v^T B v for the current unit vector
  double residual;         // ||B v - rayleigh v||_2
};

struct SolverConfig {
  double tolerance = 1e-10;  // on the residual
  std::int64_t max_iterations = 1'000'000;
  std::uint64_t seed = 20080101;
  /// Called every `observe_every` iterations and on exit; may be empty.
  std::function<void(const IterationInfo&)> observer;
  std::int64_t observe_every = 1;

  void validate() const;
};

struct EigenResult {
  double eigenvalue = 0.0;
  std::vector<double> eigenvector;  // unit norm, first nonzero entry positive
  std::int64_t iterations = 0;
  double residual = 0.0;
};

/// Raised when the residual does not reach the tolerance in time. Carries
/// the iterate with the smallest residual seen.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, EigenResult best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const EigenResult& best() const noexcept { return best_; }

 private:
  EigenResult best_;
};

/// Largest eigenpair by power iteration on B + R I, R the Gershgorin radius.
EigenResult max_eigen(const BellMatrix& b, const SolverConfig& config = {});

/// Smallest eigenpair by power iteration on R I - B.
EigenResult min_eigen(const BellMatrix& b, const SolverConfig& config = {});

EigenResult extremal_eigen(const BellMatrix& b, Side side, const SolverConfig& config = {});

/// All eigenvalues, ascending, from a dense symmetric eigendecomposition.
/// Verification aid; d <= cap.
std::vector<double> full_spectrum_oracle(const BellMatrix& b, std::int64_t cap = 2048);

}  // namespace cglmp
