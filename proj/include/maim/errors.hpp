#pragma once

#include <stdexcept>

namespace maim {

// Error taxonomy used across the library. Parameter and configuration
// violations throw std::invalid_argument, bad indices throw
// std::out_of_range; the CLI maps these to exit code 2.

// Filesystem / stream failures. CLI exit code 3.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A broken internal invariant (e.g. an empty cell in a valid partition).
// Reaching this is a bug, not a user error. CLI exit code 4.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace maim
