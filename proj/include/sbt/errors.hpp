#pragma once

#include <stdexcept>
#include <cstdio>
#include <string>

namespace sbt {

namespace detail {
inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}
}  // namespace detail

/// Violated precondition on an argument (bad order, aliasing grid, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Adaptive quadrature did not reach its tolerance within the refinement budget.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved_error)
      : std::runtime_error(what + " (achieved error estimate " + detail::sci(achieved_error) + ")"),
        achieved_error_(achieved_error) {}

  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

/// A truncated series or a truncated integration domain cannot certify the
/// requested tolerance; the caller has to enlarge the cutoff or the radius.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, double tail_bound)
      : std::runtime_error(what + " (tail bound " + detail::sci(tail_bound) + ")"), tail_bound_(tail_bound) {}

  double tail_bound() const noexcept { return tail_bound_; }

 private:
  double tail_bound_;
};

/// Result would leave the representable double range.
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

}  // namespace sbt
