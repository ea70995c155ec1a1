#pragma once

#include <stdexcept>
#include <string>

namespace fracwave {

// Precondition violated by the caller (bad parameter, mismatched grids).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A valid request that cannot be completed numerically: a field that is not
// real when it must be, an integrator that stalled, an eigen-solver failure.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fracwave
