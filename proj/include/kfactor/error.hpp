#pragma once

#include <stdexcept>
#include <string>

namespace kfactor {

/// Precondition or domain violation in a caller-supplied argument.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exact operation refused an instance larger than its configured budget.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A randomized construction or search stage did not succeed.
class StageFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kfactor
