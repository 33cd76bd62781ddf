#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace uavnoma::convex {

/// Value and derivatives of one constraint restricted to its support.
struct LocalEval {
  double value = 0.0;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
};

/// Smooth convex constraint g(x) <= 0 touching only `support`. `eval`
/// receives x gathered on the support; when `derivatives` is false only
/// `value` needs to be written. A non-finite value marks a point outside
/// the domain of g.
struct Constraint {
  std::vector<int> support;
  std::function<void(const Eigen::VectorXd& local, LocalEval& out, bool derivatives)> eval;
  int tag = 0;
};

/// minimize cost^T x  subject to  g_k(x) <= 0 for every constraint.
struct Problem {
  int num_vars = 0;
  Eigen::VectorXd cost;
  std::vector<Constraint> constraints;

  double constraint_value(std::size_t k, const Eigen::VectorXd& x) const;
  /// max_k g_k(x); +inf if any constraint is undefined at x.
  double max_constraint(const Eigen::VectorXd& x) const;
};

struct Settings {
  double gap_tol = 1e-7;         ///< stop when (#constraints) / t <= gap_tol
  double t0 = 1.0;
  double mu = 20.0;              ///< barrier weight growth per centering
  double newton_tol = 1e-10;     ///< Newton decrement^2 / 2 at which centering stops
  int max_newton_per_center = 200;
  int max_newton_total = 4000;
  double phase1_margin = 0.05;   ///< phase I stops once every g_k <= -margin
};

struct Result {
  Eigen::VectorXd x;
  double objective = 0.0;
  int newton_iterations = 0;
  int centerings = 0;
  bool used_phase1 = false;
  double final_gap = 0.0;
};

/// Log-barrier interior-point method with damped Newton centering. If `x0`
/// is not strictly feasible a phase-I problem (minimize s s.t. g_k(x) <= s)
/// is solved first. Throws SolverError when no strictly feasible point is
/// found or the Newton budget runs out before the gap target.
Result minimize(const Problem& problem, const Eigen::VectorXd& x0, const Settings& settings = {});

}  // namespace uavnoma::convex
