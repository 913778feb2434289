#include "cglmp/phase_search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "cglmp/kernels.hpp"

namespace cglmp {

namespace {

constexpr std::int64_t kObjectiveCap = 12;

PhaseSettings unpack(std::span<const double> x, std::size_t d) {
  PhaseSettings p;
  p.phi1.assign(d, 0.0);
  p.phi2.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(d));
  p.vphi1.assign(x.begin() + static_cast<std::ptrdiff_t>(d),
                 x.begin() + static_cast<std::ptrdiff_t>(2 * d));
  p.vphi2.assign(x.begin() + static_cast<std::ptrdiff_t>(2 * d), x.end());
  return p;
}

void gauge_fix(PhaseSettings& p) {
  for (auto* v : {&p.phi1, &p.phi2, &p.vphi1, &p.vphi2}) {
    const double ref = v->front();
    for (double& x : *v) x -= ref;
  }
}

struct Simplex {
  std::vector<double> x;
  double f;
  std::int64_t evaluations;
};

// Adaptive Nelder-Mead (dimension-dependent coefficients).
Simplex nelder_mead(const std::function<double(std::span<const double>)>& fun,
                    std::vector<double> start, double step, std::int64_t budget) {
  const std::size_t n = start.size();
  const double dn = static_cast<double>(n);
  const double reflect = 1.0;
  const double expand = 1.0 + 2.0 / dn;
  const double contract = 0.75 - 1.0 / (2.0 * dn);
  const double shrink = 1.0 - 1.0 / dn;

  std::vector<std::vector<double>> pts(n + 1, start);
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step;
  std::int64_t evals = 0;
  for (std::size_t i = 0; i <= n; ++i) fv[i] = fun(pts[i]), ++evals;

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  while (evals < budget) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return fv[a] < fv[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];

    double spread = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t k = 0; k < n; ++k) spread = std::max(spread, std::abs(pts[i][k] - pts[best][k]));
    if (fv[worst] - fv[best] <= 1e-15 && spread <= 1e-10) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i)
      if (i != worst)
        for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k] / dn;

    for (std::size_t k = 0; k < n; ++k) trial[k] = centroid[k] + reflect * (centroid[k] - pts[worst][k]);
    const double fr = fun(trial);
    ++evals;
    if (fr < fv[best]) {
      for (std::size_t k = 0; k < n; ++k) trial2[k] = centroid[k] + expand * (trial[k] - centroid[k]);
      const double fe = fun(trial2);
      ++evals;
      if (fe < fr) {
        pts[worst] = trial2, fv[worst] = fe;
      } else {
        pts[worst] = trial, fv[worst] = fr;
      }
      continue;
    }
    if (fr < fv[second]) {
      pts[worst] = trial, fv[worst] = fr;
      continue;
    }
    const bool outside = fr < fv[worst];
    for (std::size_t k = 0; k < n; ++k)
      trial2[k] = outside ? centroid[k] + contract * (trial[k] - centroid[k])
                          : centroid[k] - contract * (centroid[k] - pts[worst][k]);
    const double fc = fun(trial2);
    ++evals;
    if (fc < std::min(fr, fv[worst])) {
      pts[worst] = trial2, fv[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < n; ++k) pts[i][k] = pts[best][k] + shrink * (pts[i][k] - pts[best][k]);
      fv[i] = fun(pts[i]);
      ++evals;
    }
  }
  const auto it = std::min_element(fv.begin(), fv.end());
  const auto idx = static_cast<std::size_t>(it - fv.begin());
  return {pts[idx], *it, evals};
}

}  // namespace

double objective(const PhaseSettings& phases, Side side) {
  const Dimension d = phases.dimension();
  if (d.value() > kObjectiveCap)
    throw CapacityError("phase-search objective is limited to d <= " + std::to_string(kObjectiveCap));
  const auto n = static_cast<Eigen::Index>(d.value());
  Eigen::MatrixXd b(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index m = 0; m < n; ++m)
      b(j, m) = kernels::general_element(phases, static_cast<std::size_t>(j),
                                         static_cast<std::size_t>(m), d.size());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return side == Side::Positive ? ev(n - 1) : ev(0);
}

SearchResult search(const SearchProblem& problem) {
  if (problem.restarts < 1) throw InvalidArgument("restarts must be >= 1");
  if (problem.d.value() > problem.dimension_cap)
    throw CapacityError("phase search is limited to d <= " + std::to_string(problem.dimension_cap));

  const std::size_t d = problem.d.size();
  const double sense = problem.side == Side::Positive ? -1.0 : 1.0;  // minimize sense * value
  auto fun = [&](std::span<const double> x) { return sense * objective(unpack(x, d), problem.side); };

  struct Outcome {
    std::vector<double> x;
    double value;
    std::int64_t evaluations;
  };
  std::vector<Outcome> outcomes(static_cast<std::size_t>(problem.restarts));

#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < problem.restarts; ++r) {
    std::seed_seq seq{problem.seed, static_cast<std::uint64_t>(r)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<double> x(3 * d);
    for (double& v : x) v = angle(rng);

    // Restart the simplex around the incumbent until it stops improving.
    std::int64_t used = 0;
    Simplex s{x, fun(x), 1};
    used += 1;
    double step = 0.5;
    while (used < problem.max_evaluations) {
      Simplex next = nelder_mead(fun, s.x, step, problem.max_evaluations - used);
      used += next.evaluations;
      const double gain = s.f - next.f;
      if (next.f < s.f) s = std::move(next);
      if (gain <= 1e-13) {
        if (step <= 1e-3) break;
        step *= 0.1;
      }
    }
    outcomes[static_cast<std::size_t>(r)] = {s.x, sense * s.f, used};
  }

  SearchResult out;
  std::size_t best = 0;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    out.history.push_back({static_cast<int>(r), outcomes[r].value});
    out.evaluations += outcomes[r].evaluations;
    if (sense * outcomes[r].value < sense * outcomes[best].value) best = r;
  }
  out.best_value = outcomes[best].value;
  out.best_phases = unpack(outcomes[best].x, d);
  gauge_fix(out.best_phases);
  return out;
}

}  // namespace cglmp
