#include "cglmp/classical_oracle.hpp"

#include <string>

#include "cglmp/kernels.hpp"

namespace cglmp {

double strategy_value(const DeterministicStrategy& s, Dimension d) {
  const std::int64_t n = kernels::strategy_numerator(s.a1, s.a2, s.b1, s.b2, d);
  return 2.0 * static_cast<double>(n) / static_cast<double>(d.value() - 1);
}

ClassicalExtremes classical_extremes(Dimension d, std::int64_t cap) {
  if (d.value() > cap)
    throw CapacityError("classical enumeration is limited to d <= " + std::to_string(cap));
  const auto scan = kernels::parallel::strategy_scan(d);
  const auto denom = static_cast<double>(d.value() - 1);
  ClassicalExtremes out;
  out.min_numerator = scan.min_numerator;
  out.max_numerator = scan.max_numerator;
  out.min = 2.0 * static_cast<double>(scan.min_numerator) / denom;
  out.max = 2.0 * static_cast<double>(scan.max_numerator) / denom;
  out.argmin = {scan.argmin[0], scan.argmin[1], scan.argmin[2], scan.argmin[3]};
  out.argmax = {scan.argmax[0], scan.argmax[1], scan.argmax[2], scan.argmax[3]};
  return out;
}

}  // namespace cglmp
