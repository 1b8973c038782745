#pragma once

#include <stdexcept>
#include <string>

namespace mod1 {

/// Bad dimensions, out-of-range parameters, malformed input. Maps to CLI exit 2.
class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

/// Numerical breakdown (eigensolver did not converge, root not bracketed,
/// singular normal system). Maps to CLI exit 1.
class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mod1
