#pragma once

#include <stdexcept>
#include <string>

namespace monodraw {

/// Input fails structural validation (bad rotation system, mismatched sizes, ...).
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Graph does not belong to the class the algorithm requires.
struct ClassificationError : std::runtime_error {
  explicit ClassificationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A construction ran out of floating-point slack.
struct PrecisionError : std::runtime_error {
  explicit PrecisionError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Iterative solver failed to reach the requested residual.
struct ConvergenceError : std::runtime_error {
  explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A maintained invariant broke mid-construction; indicates a bug upstream.
struct InvariantError : std::logic_error {
  explicit InvariantError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace monodraw
