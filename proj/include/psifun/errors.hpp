#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace psifun {

/// Evaluation hit a pole (or a denominator below the underflow guard).
class PoleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A linear system was singular to working precision.
class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Newton-Schulz hit its iteration cap without the stopping rule firing.
/// Carries the err2 history of the offending step and, when raised inside
/// the pipeline, the index of the squaring step (or seed rung) that failed.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, std::vector<double> err2_history,
                  int squaring_step = 0)
      : std::runtime_error(what),
        err2_history_(std::move(err2_history)),
        squaring_step_(squaring_step) {}

  const std::vector<double>& err2_history() const { return err2_history_; }
  int squaring_step() const { return squaring_step_; }
  void set_squaring_step(int s) { squaring_step_ = s; }

 private:
  std::vector<double> err2_history_;
  int squaring_step_;
};

/// Malformed input file; line is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, long line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

}  // namespace psifun
