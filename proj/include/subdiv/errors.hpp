#pragma once

#include <stdexcept>
#include <string>

namespace subdiv {

/// Malformed or out-of-contract input. Maps to CLI exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation was refused because it would exceed a size or time budget.
/// Maps to CLI exit code 3.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace subdiv
