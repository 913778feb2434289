#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "cglmp/bell_operator.hpp"
#include "cglmp/eigensolver.hpp"
#include "cglmp/records.hpp"

namespace cglmp::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kNonConvergence = 2,
  kVerificationFailure = 3,
};

struct SolveOptions {
  SolverConfig solver;
  BuildOptions build;
};

struct Solution {
  ScanRecord record;
  std::vector<double> alphas;  // canonical Schmidt coefficients
};

/// Phase rule -> Bell matrix -> extremal eigenpair -> F_min and entropy.
/// Throws NonConvergence if the eigensolver fails.
Solution solve(Dimension d, Side side, const SolveOptions& options);

/// Same, but a solver failure becomes a record with an error message and
/// the best iterate's values.
Solution solve_or_record_failure(Dimension d, Side side, const SolveOptions& options);

/// Accepts "7", "2,3,5", "2:10", "2:100:7" (step), and "2:1e6:geometric:40".
/// Result is ascending with duplicates removed; every value >= 2.
std::vector<std::int64_t> parse_dimension_grid(std::string_view spec);

/// Entry point shared by the `cglmp` tool and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cglmp::cli
