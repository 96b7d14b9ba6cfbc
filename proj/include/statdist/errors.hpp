#pragma once

#include <stdexcept>
#include <string>

namespace statdist {

// Incompatible shapes: vector lengths, matrix sizes, party layouts.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A precondition the caller could have checked.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iterative solve stopped above the requested tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

// A pair-rotation target outside the reachable set of diagonal values.
class InfeasibleTargetError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

// Malformed input file; carries the 1-based offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, long line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  long line() const noexcept { return line_; }

 private:
  long line_;
};

}  // namespace statdist
