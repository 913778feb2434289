#include "cglmp/eigensolver.hpp"

#include <cmath>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "cglmp/kernels.hpp"

namespace cglmp {

void SolverConfig::validate() const {
  if (!(tolerance > 0.0)) throw InvalidArgument("solver tolerance must be > 0");
  if (max_iterations < 1) throw InvalidArgument("max_iterations must be >= 1");
  if (observe_every < 1) throw InvalidArgument("observe_every must be >= 1");
}

namespace {

double norm2(std::span<const double> v) { return std::sqrt(kernels::compensated_dot(v, v)); }

void canonicalize(std::vector<double>& v) {
  for (double x : v) {
    if (std::abs(x) > 1e-14) {
      if (x < 0.0)
        for (double& y : v) y = -y;
      return;
    }
  }
}

// sign = +1 targets the largest eigenvalue, -1 the smallest.
EigenResult power_iteration(const BellMatrix& b, const SolverConfig& cfg, double sign) {
  cfg.validate();
  const std::size_t d = b.dimension().size();
  const double shift = b.gershgorin_radius();

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal;
  std::vector<double> v(d);
  for (double& x : v) x = normal(rng);
  double n = norm2(v);
  for (double& x : v) x /= n;

  std::vector<double> w(d);
  EigenResult best;
  best.residual = INFINITY;

  auto report = [&](std::int64_t it, double theta, double res, bool force) {
    if (cfg.observer && (force || it % cfg.observe_every == 0)) cfg.observer({it, theta, res});
  };

  for (std::int64_t it = 1; it <= cfg.max_iterations; ++it) {
    b.multiply(v, w);
    const double theta = kernels::compensated_dot(v, w);
    kernels::CompensatedSum r2;
    for (std::size_t i = 0; i < d; ++i) {
      const double r = w[i] - theta * v[i];
      r2.add(r * r);
    }
    const double residual = std::sqrt(r2.value());

    if (residual < best.residual) {
      best.eigenvalue = theta;
      best.eigenvector = v;
      best.iterations = it;
      best.residual = residual;
    }
    const bool done = residual <= cfg.tolerance;
    report(it, theta, residual, done);
    if (done) {
      best.iterations = it;
      canonicalize(best.eigenvector);
      return best;
    }

    // v <- (shift I + sign B) v, normalized.
    for (std::size_t i = 0; i < d; ++i) w[i] = shift * v[i] + sign * w[i];
    n = norm2(w);
    if (!(n > 0.0)) break;  // B v = -shift v exactly: cannot happen for a PSD shift
    for (std::size_t i = 0; i < d; ++i) v[i] = w[i] / n;
  }

  canonicalize(best.eigenvector);
  throw NonConvergence("power iteration did not reach residual " + std::to_string(cfg.tolerance) +
                           " within " + std::to_string(cfg.max_iterations) +
                           " iterations (best " + std::to_string(best.residual) + ")",
                       std::move(best));
}

}  // namespace

EigenResult max_eigen(const BellMatrix& b, const SolverConfig& config) {
  return power_iteration(b, config, +1.0);
}

EigenResult min_eigen(const BellMatrix& b, const SolverConfig& config) {
  return power_iteration(b, config, -1.0);
}

EigenResult extremal_eigen(const BellMatrix& b, Side side, const SolverConfig& config) {
  return side == Side::Positive ? max_eigen(b, config) : min_eigen(b, config);
}

std::vector<double> full_spectrum_oracle(const BellMatrix& b, std::int64_t cap) {
  const auto dense = b.to_dense(cap);
  const auto d = static_cast<Eigen::Index>(b.dimension().value());
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> a(
      dense.data(), d, d);
  const Eigen::MatrixXd sym = a;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace cglmp
