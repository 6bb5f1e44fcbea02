#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace procalab {

/// Input violates an operation's precondition (bad grid, unsupported stencil,
/// longitudinal mode at zero mass, ...). The CLI maps this to exit code 2.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two fields that must share a grid shape do not.
class ShapeError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A London screening system whose elimination hit a zero pivot.
class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace procalab
