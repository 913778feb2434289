#pragma once

#include <stdexcept>
#include <string>

namespace cglmp {

/// d < 2, or a size that does not match the dimension.
class InvalidDimension : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A request exceeds a configured size cap (dense matrix, brute force, search).
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace cglmp
