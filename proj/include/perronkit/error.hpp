#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace perronkit {

/// Base class for all library failures that are not plain argument errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t actual)
      : Error("dimension mismatch: expected " + std::to_string(expected) +
              ", got " + std::to_string(actual)),
        expected_(expected),
        actual_(actual) {}

  std::size_t expected() const noexcept { return expected_; }
  std::size_t actual() const noexcept { return actual_; }

 private:
  std::size_t expected_;
  std::size_t actual_;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// An iteration ran out of budget. Carries the last iterate so callers can
/// inspect how far it got.
class NotConverged : public Error {
 public:
  NotConverged(const std::string& what, std::vector<double> best_iterate,
               int iterations, double last_gap)
      : Error(what),
        best_iterate_(std::move(best_iterate)),
        iterations_(iterations),
        last_gap_(last_gap) {}

  const std::vector<double>& best_iterate() const noexcept { return best_iterate_; }
  int iterations() const noexcept { return iterations_; }
  double last_gap() const noexcept { return last_gap_; }

 private:
  std::vector<double> best_iterate_;
  int iterations_;
  double last_gap_;
};

/// The power iteration produced a zero component; only reachable when the
/// input is not weakly irreducible and the identity shift is disabled.
class ZeroIterate : public Error {
 public:
  using Error::Error;
};

/// The fixed-point sequence decreased somewhere for every scaling tried.
class MonotonicityViolated : public Error {
 public:
  MonotonicityViolated(double gamma, int iteration, double decrease)
      : Error("fixed-point iterate decreased by " + std::to_string(decrease) +
              " at iteration " + std::to_string(iteration) +
              " (smallest gamma tried " + std::to_string(gamma) + ")"),
        gamma_(gamma),
        iteration_(iteration),
        decrease_(decrease) {}

  double gamma() const noexcept { return gamma_; }
  int iteration() const noexcept { return iteration_; }
  double decrease() const noexcept { return decrease_; }

 private:
  double gamma_;
  int iteration_;
  double decrease_;
};

}  // namespace perronkit
