#pragma once

#include <cstdint>
#include <vector>

#include "cglmp/core_model.hpp"

namespace cglmp {

/// Random-restart Nelder-Mead over the free UMBS angles (phi2, vphi1, vphi2;
/// phi1 is fixed to zero), 3d parameters in total.
struct SearchProblem {
  Dimension d{2};
  Side side = Side::Positive;
  int restarts = 20;
  std::uint64_t seed = 1;
  std::int64_t max_evaluations = 200'000;  // per restart
  std::int64_t dimension_cap = 9;
};

struct RestartRecord {
  int restart;
  double value;
};

struct SearchResult {
  PhaseSettings best_phases;  // every vector shifted so entry 0 is zero
  double best_value = 0.0;
  std::vector<RestartRecord> history;  // one entry per restart, in order
  std::int64_t evaluations = 0;
};

/// Largest (positive side) or smallest (negative side) eigenvalue of the
/// Bell matrix built from arbitrary phases. Dense eigensolve; d <= 12.
double objective(const PhaseSettings& phases, Side side);

/// Deterministic for a given seed; ties go to the lowest restart index.
SearchResult search(const SearchProblem& problem);

}  // namespace cglmp
