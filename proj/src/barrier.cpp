#include "uavnoma/barrier.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "uavnoma/errors.hpp"

namespace uavnoma::convex {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::VectorXd gather(const Eigen::VectorXd& x, const std::vector<int>& support) {
  Eigen::VectorXd local(static_cast<Eigen::Index>(support.size()));
  for (std::size_t a = 0; a < support.size(); ++a) local(static_cast<Eigen::Index>(a)) = x(support[a]);
  return local;
}

// t cost^T x - sum log(-g_k(x)); +inf outside the strict interior.
double barrier_value(const Problem& p, const Eigen::VectorXd& x, double t) {
  double f = t * p.cost.dot(x);
  LocalEval ev;
  for (const auto& c : p.constraints) {
    c.eval(gather(x, c.support), ev, false);
    if (!(ev.value < 0.0)) return kInf;  // also catches NaN
    f -= std::log(-ev.value);
  }
  return f;
}

// Returns false if some constraint is not strictly satisfied.
bool barrier_derivatives(const Problem& p, const Eigen::VectorXd& x, double t, Eigen::VectorXd& grad,
                         Eigen::MatrixXd& hess) {
  grad = t * p.cost;
  hess.setZero(p.num_vars, p.num_vars);
  LocalEval ev;
  for (const auto& c : p.constraints) {
    c.eval(gather(x, c.support), ev, true);
    if (!(ev.value < 0.0)) return false;
    const double w = -1.0 / ev.value;
    const auto n = static_cast<Eigen::Index>(c.support.size());
    for (Eigen::Index a = 0; a < n; ++a) {
      const int ia = c.support[static_cast<std::size_t>(a)];
      grad(ia) += w * ev.grad(a);
      for (Eigen::Index b = 0; b < n; ++b) {
        const int ib = c.support[static_cast<std::size_t>(b)];
        hess(ia, ib) += w * w * ev.grad(a) * ev.grad(b) + w * ev.hess(a, b);
      }
    }
  }
  return true;
}

// Solves hess * dx = -grad with symmetric diagonal scaling; adds a ridge when
// the factorization is not positive definite.
Eigen::VectorXd newton_direction(const Eigen::MatrixXd& hess, const Eigen::VectorXd& grad) {
  const Eigen::Index n = hess.rows();
  Eigen::VectorXd d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = hess(i, i) > 0.0 ? 1.0 / std::sqrt(hess(i, i)) : 1.0;
  Eigen::MatrixXd scaled = d.asDiagonal() * hess * d.asDiagonal();
  const Eigen::VectorXd rhs = -(d.asDiagonal() * grad);
  double ridge = 0.0;
  for (int attempt = 0; attempt < 12; ++attempt) {
    Eigen::MatrixXd m = scaled;
    if (ridge > 0.0) m.diagonal().array() += ridge;
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() == Eigen::Success) {
      const Eigen::VectorXd y = llt.solve(rhs);
      if (y.allFinite()) return d.asDiagonal() * y;
    }
    ridge = ridge == 0.0 ? 1e-12 : ridge * 100.0;
  }
  throw SolverError("barrier: Newton system is not positive definite");
}

struct CenterStats {
  int newton = 0;
};

// Damped Newton minimization of the barrier function at weight t.
void center(const Problem& p, Eigen::VectorXd& x, double t, const Settings& s, CenterStats& stats,
            int& budget) {
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
  double fx = barrier_value(p, x, t);
  for (int it = 0; it < s.max_newton_per_center; ++it) {
    if (budget-- <= 0) throw SolverError("barrier: Newton iteration budget exhausted");
    if (!barrier_derivatives(p, x, t, grad, hess)) {
      throw SolverError("barrier: iterate left the strict interior");
    }
    const Eigen::VectorXd dx = newton_direction(hess, grad);
    const double slope = grad.dot(dx);
    ++stats.newton;
    if (-slope / 2.0 <= s.newton_tol) return;

    double step = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls, step *= 0.5) {
      const Eigen::VectorXd trial = x + step * dx;
      const double ft = barrier_value(p, trial, t);
      if (ft <= fx + 0.25 * step * slope) {
        x = trial;
        fx = ft;
        accepted = true;
        break;
      }
    }
    // No decrease representable in double precision: the point is centered
    // as well as it can be.
    if (!accepted) return;
  }
}

Result run_barrier(const Problem& p, Eigen::VectorXd x, const Settings& s, int& budget,
                   const std::function<bool(const Eigen::VectorXd&, double)>& early_exit) {
  Result res;
  const double m = static_cast<double>(p.constraints.size());
  double t = s.t0;
  CenterStats stats;
  while (true) {
    center(p, x, t, s, stats, budget);
    ++res.centerings;
    if (early_exit && early_exit(x, t)) break;
    if (m / t <= s.gap_tol) break;
    t *= s.mu;
  }
  res.x = std::move(x);
  res.objective = p.cost.dot(res.x);
  res.newton_iterations = stats.newton;
  res.final_gap = m / t;
  return res;
}

}  // namespace

double Problem::constraint_value(std::size_t k, const Eigen::VectorXd& x) const {
  LocalEval ev;
  constraints[k].eval(gather(x, constraints[k].support), ev, false);
  return ev.value;
}

double Problem::max_constraint(const Eigen::VectorXd& x) const {
  double worst = -kInf;
  for (std::size_t k = 0; k < constraints.size(); ++k) {
    const double v = constraint_value(k, x);
    if (!std::isfinite(v)) return kInf;
    worst = std::max(worst, v);
  }
  return worst;
}

Result minimize(const Problem& problem, const Eigen::VectorXd& x0, const Settings& settings) {
  int budget = settings.max_newton_total;
  Eigen::VectorXd start = x0;
  bool used_phase1 = false;
  int phase1_newton = 0;

  const double worst = problem.max_constraint(x0);
  if (!std::isfinite(worst)) throw SolverError("barrier: start point outside a constraint domain");
  if (!(worst < 0.0)) {
    // Phase I over (x, s): minimize s  s.t.  g_k(x) - s <= 0,  -1 - s <= 0.
    used_phase1 = true;
    const int n = problem.num_vars;
    Problem aux;
    aux.num_vars = n + 1;
    aux.cost = Eigen::VectorXd::Zero(n + 1);
    aux.cost(n) = 1.0;
    for (const auto& c : problem.constraints) {
      Constraint shifted;
      shifted.support = c.support;
      shifted.support.push_back(n);
      shifted.tag = c.tag;
      const auto inner = c.eval;
      const auto k = static_cast<Eigen::Index>(c.support.size());
      shifted.eval = [inner, k](const Eigen::VectorXd& local, LocalEval& out, bool derivs) {
        LocalEval ev;
        inner(local.head(k), ev, derivs);
        out.value = ev.value - local(k);
        if (derivs) {
          out.grad.resize(k + 1);
          out.grad.head(k) = ev.grad;
          out.grad(k) = -1.0;
          out.hess.setZero(k + 1, k + 1);
          out.hess.topLeftCorner(k, k) = ev.hess;
        }
      };
      aux.constraints.push_back(std::move(shifted));
    }
    Constraint floor;
    floor.support = {n};
    floor.eval = [](const Eigen::VectorXd& local, LocalEval& out, bool derivs) {
      out.value = -1.0 - local(0);
      if (derivs) {
        out.grad = Eigen::VectorXd::Constant(1, -1.0);
        out.hess = Eigen::MatrixXd::Zero(1, 1);
      }
    };
    aux.constraints.push_back(std::move(floor));

    Eigen::VectorXd y(n + 1);
    y.head(n) = x0;
    y(n) = std::max(worst, 0.0) + 1.0;
    Settings s1 = settings;
    s1.t0 = 1.0;
    const double margin = settings.phase1_margin;
    const Result r1 = run_barrier(aux, y, s1, budget, [&](const Eigen::VectorXd& v, double) {
      return problem.max_constraint(v.head(n)) <= -margin;
    });
    phase1_newton = r1.newton_iterations;
    start = r1.x.head(n);
    if (!(problem.max_constraint(start) < 0.0)) {
      std::ostringstream os;
      os << "barrier: no strictly feasible point found (phase I optimum " << r1.x(n) << ")";
      throw SolverError(os.str());
    }
  }

  Result res = run_barrier(problem, start, settings, budget, nullptr);
  res.used_phase1 = used_phase1;
  res.newton_iterations += phase1_newton;
  return res;
}

}  // namespace uavnoma::convex
