#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "uavnoma/errors.hpp"
#include "uavnoma/sca.hpp"

namespace uavnoma::sca {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kAnchorTol = 1e-6;

// log2(1 + e^x) without overflow.
double log2_1p_exp(double x) {
  const double ln = x > 30.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
  return ln / std::numbers::ln2;
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

using convex::LocalEval;

}  // namespace

ScaState::ScaState(std::size_t users)
    : m(users),
      alpha(users * users, 0.0),
      p(users, 0.0),
      s(users, 0.0),
      u(users, 0.0),
      v(users, 0.0),
      y(users * users, 0.0),
      z(users, 0.0),
      phi(users * users, 0.0) {}

double ScaState::max_phi() const {
  double worst = 0.0;
  for (double f : phi) worst = std::max(worst, f);
  return worst;
}

double ScaState::max_alpha_gap() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const double a = alpha_at(i, j);
      worst = std::max(worst, std::min(std::abs(a), std::abs(1.0 - a)));
    }
  }
  return worst;
}

double ScaState::objective() const {
  double sum_u = 0.0;
  for (double x : u) sum_u += x;
  double sum_phi = 0.0;
  for (double f : phi) sum_phi += f;
  return sum_u - lambda * sum_phi;
}

Affine1 taylor_square(double xbar) { return {2.0 * xbar, -xbar * xbar}; }

Affine1 taylor_exp(double vbar) {
  const double e = std::exp(vbar);
  return {e, e * (1.0 - vbar)};
}

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::qos_floor: return "qos_floor";
    case Kind::power_nonneg: return "power_nonneg";
    case Kind::power_budget: return "power_budget";
    case Kind::alpha_box: return "alpha_box";
    case Kind::penalty_nonneg: return "penalty_nonneg";
    case Kind::interference_nonneg: return "interference_nonneg";
    case Kind::area_box: return "area_box";
    case Kind::binary_relax: return "binary_relax";
    case Kind::order: return "order";
    case Kind::rate: return "rate";
    case Kind::signal: return "signal";
    case Kind::distance: return "distance";
    case Kind::interference: return "interference";
    case Kind::product: return "product";
  }
  return "?";
}

ConvexSubproblem::ConvexSubproblem(const Scenario& scenario, const ScaState& anchor,
                                   SubproblemOptions options)
    : scenario_(scenario), anchor_(anchor), options_(options) {
  build();
}

int ConvexSubproblem::pair_index(std::size_t i, std::size_t j) const {
  const std::size_t m = anchor_.m;
  return static_cast<int>(i * (m - 1) + (j < i ? j : j - 1));
}

ConvexSubproblem::AlphaRef ConvexSubproblem::alpha_ref(std::size_t i, std::size_t j) const {
  if (i == j) return {-1, 0.0, 0.0};
  if (options_.freeze_alpha) return {-1, 0.0, anchor_.alpha_at(i, j)};
  const std::size_t m = anchor_.m;
  const std::size_t lo = std::min(i, j);
  const std::size_t hi = std::max(i, j);
  // position of (lo, hi) among unordered pairs in row-major order
  const std::size_t k = lo * (2 * m - lo - 1) / 2 + (hi - lo - 1);
  const int index = idx_a_ + static_cast<int>(k);
  return i < j ? AlphaRef{index, 1.0, 0.0} : AlphaRef{index, -1.0, 1.0};
}

void ConvexSubproblem::build() {
  const Scenario& sc = scenario_;
  const ScaState& a = anchor_;
  const std::size_t m = a.m;
  const int mi = static_cast<int>(m);
  const int pairs = mi * (mi - 1);
  const int free_alpha = options_.freeze_alpha ? 0 : pairs / 2;

  idx_q_ = 0;
  idx_a_ = 2;
  idx_p_ = idx_a_ + free_alpha;
  idx_s_ = idx_p_ + mi;
  idx_u_ = idx_s_ + mi;
  idx_v_ = idx_u_ + mi;
  idx_z_ = idx_v_ + mi;
  idx_y_ = idx_z_ + mi;
  idx_phi_ = idx_y_ + pairs;
  const int n = idx_phi_ + (options_.freeze_alpha ? 0 : pairs);

  problem_.num_vars = n;
  problem_.cost = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < mi; ++i) problem_.cost(idx_u_ + i) = -1.0;
  if (!options_.freeze_alpha) {
    for (int k = 0; k < pairs; ++k) problem_.cost(idx_phi_ + k) = a.lambda;
  }

  const double h2 = sc.altitude_h * sc.altitude_h;
  const double g0 = sc.gamma0;
  const double rate_scale = std::max(1.0, sc.r_star);
  const double interf_scale = 1.0 + g0 * sc.p_max / h2;
  const double qbx = a.q.x;
  const double qby = a.q.y;
  std::vector<double> dbar(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double dx = qbx - sc.users[i].x;
    const double dy = qby - sc.users[i].y;
    dbar[i] = h2 + dx * dx + dy * dy;
  }

  auto& cons = problem_.constraints;
  // Affine row: sum coef * x + constant, divided by scale.
  auto add_affine = [&](Kind kind, std::vector<std::pair<int, double>> terms, double constant,
                        double scale) {
    convex::Constraint c;
    c.tag = static_cast<int>(kind);
    Eigen::VectorXd coef(static_cast<Eigen::Index>(terms.size()));
    for (std::size_t k = 0; k < terms.size(); ++k) {
      c.support.push_back(terms[k].first);
      coef(static_cast<Eigen::Index>(k)) = terms[k].second / scale;
    }
    const double k0 = constant / scale;
    c.eval = [coef, k0](const Eigen::VectorXd& x, LocalEval& out, bool derivs) {
      out.value = coef.dot(x) + k0;
      if (derivs) {
        out.grad = coef;
        out.hess.setZero(coef.size(), coef.size());
      }
    };
    cons.push_back(std::move(c));
  };
  // Adds coef * alpha_ij to an affine row.
  auto alpha_term = [&](std::vector<std::pair<int, double>>& terms, double& constant,
                        std::size_t i, std::size_t j, double coef) {
    const AlphaRef r = alpha_ref(i, j);
    if (r.index >= 0) terms.emplace_back(r.index, coef * r.sign);
    constant += coef * r.offset;
  };

  // QoS floor, power sign and budget.
  for (int i = 0; i < mi; ++i) add_affine(Kind::qos_floor, {{idx_u_ + i, -1.0}}, sc.r_star, rate_scale);
  for (int i = 0; i < mi; ++i) add_affine(Kind::power_nonneg, {{idx_p_ + i, -1.0}}, 0.0, sc.p_max);
  {
    std::vector<std::pair<int, double>> terms;
    for (int i = 0; i < mi; ++i) terms.emplace_back(idx_p_ + i, 1.0);
    add_affine(Kind::power_budget, terms, -sc.p_max, sc.p_max);
  }
  if (!options_.freeze_alpha) {
    for (int k = 0; k < free_alpha; ++k) {
      add_affine(Kind::alpha_box, {{idx_a_ + k, -1.0}}, 0.0, 1.0);
      add_affine(Kind::alpha_box, {{idx_a_ + k, 1.0}}, -1.0, 1.0);
    }
    for (int k = 0; k < pairs; ++k) {
      add_affine(Kind::penalty_nonneg, {{idx_phi_ + k, -1.0}}, 0.0, 1.0);
      // never active at an optimum: the tangent of alpha - alpha^2 stays below 1
      add_affine(Kind::penalty_nonneg, {{idx_phi_ + k, 1.0}}, -1.0, 1.0);
    }
  }
  for (int k = 0; k < pairs; ++k) {
    add_affine(Kind::interference_nonneg, {{idx_y_ + k, -1.0}}, 0.0, interf_scale);
  }
  {
    const Box& box = sc.area;
    add_affine(Kind::area_box, {{idx_q_, -1.0}}, box.xmin, box.width());
    add_affine(Kind::area_box, {{idx_q_, 1.0}}, -box.xmax, box.width());
    add_affine(Kind::area_box, {{idx_q_ + 1, -1.0}}, box.ymin, box.height());
    add_affine(Kind::area_box, {{idx_q_ + 1, 1.0}}, -box.ymax, box.height());
  }

  // alpha - (2 abar alpha - abar^2) - phi <= 0
  if (!options_.freeze_alpha) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (i == j) continue;
        const Affine1 sq = taylor_square(a.alpha_at(i, j));
        std::vector<std::pair<int, double>> terms;
        double constant = -sq.intercept;
        alpha_term(terms, constant, i, j, 1.0 - sq.slope);
        terms.emplace_back(idx_phi_ + pair_index(i, j), -1.0);
        add_affine(Kind::binary_relax, terms, constant, 1.0);
      }
    }
  }

  // Decoding order vs. distance, both distance terms linearized except the
  // convex square on the left.
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const AlphaRef ar = alpha_ref(i, j);
      const double cbar = dbar[i] - a.alpha_at(i, j);
      const double xi = sc.users[i].x, yi = sc.users[i].y;
      const double xj = sc.users[j].x, yj = sc.users[j].y;
      const double di = dbar[i], dj = dbar[j];
      const double abar = a.alpha_at(i, j);
      const double scale = std::max(1.0, dj);
      convex::Constraint c;
      c.tag = static_cast<int>(Kind::order);
      c.support = {idx_q_, idx_q_ + 1};
      if (ar.index >= 0) c.support.push_back(ar.index);
      c.eval = [=](const Eigen::VectorXd& x, LocalEval& out, bool derivs) {
        const double qx = x(0), qy = x(1);
        const double al = ar.index >= 0 ? ar.sign * x(2) + ar.offset : ar.offset;
        const double ex = qx - xi, ey = qy - yi;
        const double w = h2 + ex * ex + ey * ey + al;
        const double lin_i = di + 2.0 * ((qbx - xi) * (qx - qbx) + (qby - yi) * (qy - qby));
        const double lin_j = dj + 2.0 * ((qbx - xj) * (qx - qbx) + (qby - yj) * (qy - qby));
        // w^2/4 + cbar^2/4 - cbar (lin_i - al)/2 - lin_j, regrouped so the
        // O(d^2) terms cancel analytically
        const double dqx = qx - qbx, dqy = qy - qby;
        const double e = 2.0 * ((qbx - xi) * dqx + (qby - yi) * dqy) - (al - abar);
        out.value = (0.25 * ((dqx * dqx + dqy * dqy + 2.0 * al) * (w - al + lin_i) + e * e) - lin_j) / scale;
        if (!derivs) return;
        const auto k = x.size();
        out.grad.resize(k);
        out.hess.setZero(k, k);
        out.grad(0) = w * ex - cbar * (qbx - xi) - 2.0 * (qbx - xj);
        out.grad(1) = w * ey - cbar * (qby - yi) - 2.0 * (qby - yj);
        out.hess(0, 0) = 2.0 * ex * ex + w;
        out.hess(1, 1) = 2.0 * ey * ey + w;
        out.hess(0, 1) = out.hess(1, 0) = 2.0 * ex * ey;
        if (k == 3) {
          out.grad(2) = ar.sign * 0.5 * (w + cbar);
          out.hess(0, 2) = out.hess(2, 0) = ar.sign * ex;
          out.hess(1, 2) = out.hess(2, 1) = ar.sign * ey;
          out.hess(2, 2) = 0.5;
        }
        out.grad /= scale;
        out.hess /= scale;
      };
      cons.push_back(std::move(c));
    }
  }

  // u_i <= log2(1 + e^{zbar - vbar}) + slope (z - v - (zbar - vbar))
  for (int i = 0; i < mi; ++i) {
    const double xbar = a.z[i] - a.v[i];
    const double f = log2_1p_exp(xbar);
    const double slope = logistic(xbar) / std::numbers::ln2;
    add_affine(Kind::rate, {{idx_u_ + i, 1.0}, {idx_z_ + i, -slope}, {idx_v_ + i, slope}},
               -f + slope * xbar, rate_scale);
  }

  // (H^2 + |Q - q_i|^2) / (gamma0 P_i) <= e^{-zbar} (1 - z + zbar)
  for (std::size_t i = 0; i < m; ++i) {
    const double xi = sc.users[i].x, yi = sc.users[i].y;
    const double ez = std::exp(-a.z[i]);
    const double zb = a.z[i];
    convex::Constraint c;
    c.tag = static_cast<int>(Kind::signal);
    c.support = {idx_q_, idx_q_ + 1, idx_p_ + static_cast<int>(i), idx_z_ + static_cast<int>(i)};
    c.eval = [=](const Eigen::VectorXd& x, LocalEval& out, bool derivs) {
      const double qx = x(0), qy = x(1), pw = x(2), zz = x(3);
      if (!(pw > 0.0)) {
        out.value = kNaN;
        return;
      }
      const double ex = qx - xi, ey = qy - yi;
      const double num = h2 + ex * ex + ey * ey;
      const double gp = g0 * pw;
      out.value = (num / gp - ez * (1.0 - zz + zb)) / ez;
      if (!derivs) return;
      out.grad.resize(4);
      out.grad << 2.0 * ex / gp, 2.0 * ey / gp, -num / (gp * pw), ez;
      out.hess.setZero(4, 4);
      out.hess(0, 0) = out.hess(1, 1) = 2.0 / gp;
      out.hess(0, 2) = out.hess(2, 0) = -2.0 * ex / (gp * pw);
      out.hess(1, 2) = out.hess(2, 1) = -2.0 * ey / (gp * pw);
      out.hess(2, 2) = 2.0 * num / (gp * pw * pw);
      out.grad /= ez;
      out.hess /= ez;
    };
    cons.push_back(std::move(c));
  }

  // s_i <= dbar_i + 2 (qbar - q_i)^T (Q - qbar)
  for (std::size_t i = 0; i < m; ++i) {
    const double gx = 2.0 * (qbx - sc.users[i].x);
    const double gy = 2.0 * (qby - sc.users[i].y);
    add_affine(Kind::distance,
               {{idx_s_ + static_cast<int>(i), 1.0}, {idx_q_, -gx}, {idx_q_ + 1, -gy}},
               -dbar[i] + gx * qbx + gy * qby, dbar[i]);
  }

  // 1 + sum_j y_ij <= e^{vbar} (v - vbar + 1)
  for (std::size_t i = 0; i < m; ++i) {
    const Affine1 ev = taylor_exp(a.v[i]);
    std::vector<std::pair<int, double>> terms;
    for (std::size_t j = 0; j < m; ++j) {
      if (j != i) terms.emplace_back(idx_y_ + pair_index(i, j), 1.0);
    }
    terms.emplace_back(idx_v_ + static_cast<int>(i), -ev.slope);
    add_affine(Kind::interference, terms, 1.0 - ev.intercept, std::exp(a.v[i]));
  }

  // gamma0 (alpha + P_j)^2 + (y - s_j)^2 <= tangent of gamma0 (alpha - P_j)^2 + (y + s_j)^2
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const AlphaRef ar = alpha_ref(i, j);
      const double bb = a.y_at(i, j) + a.s[j];
      const double dd = a.alpha_at(i, j) - a.p[j];
      const double abar = a.alpha_at(i, j), pbar = a.p[j], ybar = a.y_at(i, j), sbar = a.s[j];
      const double scale = 1.0 + 4.0 * (ybar * sbar + g0 * abar * pbar);
      convex::Constraint c;
      c.tag = static_cast<int>(Kind::product);
      const bool has_alpha = ar.index >= 0;
      if (has_alpha) c.support.push_back(ar.index);
      c.support.push_back(idx_p_ + static_cast<int>(j));
      c.support.push_back(idx_y_ + pair_index(i, j));
      c.support.push_back(idx_s_ + static_cast<int>(j));
      c.eval = [=](const Eigen::VectorXd& x, LocalEval& out, bool derivs) {
        const int o = has_alpha ? 1 : 0;
        const double al = has_alpha ? ar.sign * x(0) + ar.offset : ar.offset;
        const double pw = x(o), yy = x(o + 1), ss = x(o + 2);
        // same function as the squared form, without the O(s^2) cancellation
        const double da = (al - abar) - (pw - pbar);
        const double dy = (yy - ybar) + (ss - sbar);
        out.value = (g0 * da * da + 4.0 * g0 * al * pw + dy * dy - 4.0 * yy * ss) / scale;
        if (!derivs) return;
        const auto k = x.size();
        out.grad.resize(k);
        out.hess.setZero(k, k);
        out.grad(o) = 2.0 * g0 * (al + pw) + 2.0 * g0 * dd;
        out.grad(o + 1) = 2.0 * (yy - ss) - 2.0 * bb;
        out.grad(o + 2) = -2.0 * (yy - ss) - 2.0 * bb;
        out.hess(o, o) = 2.0 * g0;
        out.hess(o + 1, o + 1) = 2.0;
        out.hess(o + 2, o + 2) = 2.0;
        out.hess(o + 1, o + 2) = out.hess(o + 2, o + 1) = -2.0;
        if (has_alpha) {
          out.grad(0) = ar.sign * (2.0 * g0 * (al + pw) - 2.0 * g0 * dd);
          out.hess(0, 0) = 2.0 * g0;
          out.hess(0, 1) = out.hess(1, 0) = ar.sign * 2.0 * g0;
        }
        out.grad /= scale;
        out.hess /= scale;
      };
      cons.push_back(std::move(c));
    }
  }
}

Eigen::VectorXd ConvexSubproblem::pack(const ScaState& st) const {
  const std::size_t m = anchor_.m;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(problem_.num_vars);
  x(idx_q_) = st.q.x;
  x(idx_q_ + 1) = st.q.y;
  for (std::size_t i = 0; i < m; ++i) {
    x(idx_p_ + static_cast<int>(i)) = st.p[i];
    x(idx_s_ + static_cast<int>(i)) = st.s[i];
    x(idx_u_ + static_cast<int>(i)) = st.u[i];
    x(idx_v_ + static_cast<int>(i)) = st.v[i];
    x(idx_z_ + static_cast<int>(i)) = st.z[i];
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      x(idx_y_ + pair_index(i, j)) = st.y_at(i, j);
      if (!options_.freeze_alpha) {
        x(idx_phi_ + pair_index(i, j)) = st.phi_at(i, j);
        if (i < j) x(alpha_ref(i, j).index) = st.alpha_at(i, j);
      }
    }
  }
  return x;
}

ScaState ConvexSubproblem::unpack(const Eigen::VectorXd& x) const {
  const std::size_t m = anchor_.m;
  ScaState st = anchor_;
  st.q = {x(idx_q_), x(idx_q_ + 1)};
  for (std::size_t i = 0; i < m; ++i) {
    st.p[i] = x(idx_p_ + static_cast<int>(i));
    st.s[i] = x(idx_s_ + static_cast<int>(i));
    st.u[i] = x(idx_u_ + static_cast<int>(i));
    st.v[i] = x(idx_v_ + static_cast<int>(i));
    st.z[i] = x(idx_z_ + static_cast<int>(i));
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      st.y_at(i, j) = x(idx_y_ + pair_index(i, j));
      if (!options_.freeze_alpha) {
        st.phi_at(i, j) = x(idx_phi_ + pair_index(i, j));
        const AlphaRef r = alpha_ref(i, j);
        st.alpha_at(i, j) = r.sign * x(r.index) + r.offset;
      }
    }
  }
  return st;
}

double ConvexSubproblem::objective(const ScaState& st) const { return st.objective(); }

std::size_t ConvexSubproblem::count(Kind k) const {
  return static_cast<std::size_t>(std::count_if(
      problem_.constraints.begin(), problem_.constraints.end(),
      [k](const convex::Constraint& c) { return c.tag == static_cast<int>(k); }));
}

double ConvexSubproblem::max_violation(const ScaState& st) const {
  return problem_.max_constraint(pack(st));
}

double ConvexSubproblem::max_violation(const ScaState& st, Kind k) const {
  const Eigen::VectorXd x = pack(st);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < problem_.constraints.size(); ++c) {
    if (problem_.constraints[c].tag == static_cast<int>(k)) {
      worst = std::max(worst, problem_.constraint_value(c, x));
    }
  }
  return worst;
}

double original_violation(const Scenario& sc, const ScaState& st) {
  const std::size_t m = st.m;
  const double h2 = sc.altitude_h * sc.altitude_h;
  const double rate_scale = std::max(1.0, sc.r_star);
  const double interf_scale = 1.0 + sc.gamma0 * sc.p_max / h2;
  std::vector<double> d(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double dx = st.q.x - sc.users[i].x;
    const double dy = st.q.y - sc.users[i].y;
    d[i] = h2 + dx * dx + dy * dy;
  }
  double worst = -std::numeric_limits<double>::infinity();
  auto note = [&](double v) { worst = std::max(worst, std::isfinite(v) ? v : 1e300); };

  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    total += st.p[i];
    note(-st.p[i] / sc.p_max);
    note((sc.r_star - st.u[i]) / rate_scale);
    note((st.u[i] - log2_1p_exp(st.z[i] - st.v[i])) / rate_scale);
    const double signal = st.p[i] > 0.0 ? sc.gamma0 * st.p[i] / d[i] : 0.0;
    note((std::exp(st.z[i]) - signal) / std::max(std::exp(st.z[i]), 1e-300));
    note((st.s[i] - d[i]) / d[i]);
    note(std::abs(st.alpha_at(i, i)));
    double interference = 1.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const double al = st.alpha_at(i, j);
      note(-al);
      note(al - 1.0);
      note(std::abs(al + st.alpha_at(j, i) - 1.0));
      note(-st.phi_at(i, j));
      note(al - al * al - st.phi_at(i, j));
      note((al * d[i] - d[j]) / d[j]);
      note((sc.gamma0 * al * st.p[j] / st.s[j] - st.y_at(i, j)) / interf_scale);
      interference += st.y_at(i, j);
    }
    note((interference - std::exp(st.v[i])) / std::exp(st.v[i]));
  }
  note((total - sc.p_max) / sc.p_max);
  return worst;
}

ConvexSubproblem build_subproblem(const Scenario& scenario, const ScaState& anchor,
                                  SubproblemOptions options) {
  if (anchor.m != scenario.size()) throw ValidationError("anchor size does not match the scenario");
  const double viol = original_violation(scenario, anchor);
  if (viol > kAnchorTol) {
    std::ostringstream os;
    os << "anchor violates the original constraints (normalized violation " << viol << ")";
    throw ValidationError(os.str());
  }
  return ConvexSubproblem(scenario, anchor, options);
}

SubproblemSolution solve_subproblem(const ConvexSubproblem& sub, const convex::Settings& settings) {
  const convex::Result r = convex::minimize(sub.problem(), sub.pack(sub.anchor()), settings);
  SubproblemSolution out;
  out.newton_iterations = r.newton_iterations;
  out.state = sub.unpack(r.x);
  out.objective = sub.objective(out.state);
  const double anchor_obj = sub.objective(sub.anchor());
  if (out.objective < anchor_obj) {
    out.state = sub.anchor();
    out.objective = anchor_obj;
    out.kept_anchor = true;
  }
  return out;
}

ScaState equality_anchor(const Scenario& sc, const UavPosition& q, const PowerAllocation& p,
                         const DecodingOrder& order, double lambda) {
  const std::size_t m = sc.size();
  ScaState st(m);
  st.q = q;
  st.lambda = lambda;
  st.p = p.watts;
  st.s = squared_distances(sc, q);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      st.alpha_at(i, j) = order.at(i, j);
      st.y_at(i, j) = sc.gamma0 * st.alpha_at(i, j) * st.p[j] / st.s[j];
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    double interference = 1.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (j != i) interference += st.y_at(i, j);
    }
    st.v[i] = std::log(interference);
    st.z[i] = std::log(sc.gamma0 * st.p[i] / st.s[i]);
    st.u[i] = log2_1p_exp(st.z[i] - st.v[i]);
  }
  return st;
}

}  // namespace uavnoma::sca
