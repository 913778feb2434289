#pragma once

#include <cstdint>

#include "cglmp/core_model.hpp"

namespace cglmp {

/// Deterministic outcomes assigned to A1, A2, B1, B2.
struct DeterministicStrategy {
  std::int64_t a1 = 0;
  std::int64_t a2 = 0;
  std::int64_t b1 = 0;
  std::int64_t b2 = 0;

  friend bool operator==(const DeterministicStrategy&, const DeterministicStrategy&) = default;
};

/// I_d for one strategy: (1/S)[f11(a1,b1) + f12(a1,b2) - f21(a2,b1) + f22(a2,b2)].
double strategy_value(const DeterministicStrategy& s, Dimension d);

struct ClassicalExtremes {
  double min = 0.0;
  double max = 0.0;
  DeterministicStrategy argmin;
  DeterministicStrategy argmax;
  /// Exact extremes of (d - 1) I_d / 2; min = 2 * min_numerator / (d - 1).
  std::int64_t min_numerator = 0;
  std::int64_t max_numerator = 0;
};

/// Brute force over all d^4 deterministic strategies, lexicographic order,
/// first witness kept on ties. Throws CapacityError for d > cap.
ClassicalExtremes classical_extremes(Dimension d, std::int64_t cap = 20);

}  // namespace cglmp
