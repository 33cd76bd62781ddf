#pragma once

#include <stdexcept>
#include <string>

namespace uavnoma {

/// Malformed input document (syntax or missing keys).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A domain invariant does not hold. The message names the invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The QoS threshold cannot be met. `margin` is p_max minus the power the
/// weakest-first recursion needs (negative when infeasible), in watts.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& what, double margin)
      : std::runtime_error(what), margin_(margin) {}
  double margin() const noexcept { return margin_; }

 private:
  double margin_;
};

/// The convex subproblem solver failed to reach its tolerance.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace uavnoma
