#pragma once

#include <stdexcept>
#include <string>

namespace simplexflow {

/// Raised when an input violates a documented precondition. The CLI maps
/// this to exit status 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computation goes bad after validation passed (non-finite
/// state, I/O failure). The CLI maps this to exit status 2.
class RuntimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace simplexflow
