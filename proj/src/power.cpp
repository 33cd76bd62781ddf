#include "uavnoma/power.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "uavnoma/errors.hpp"

namespace uavnoma {

namespace {

// Feasibility is decided on the sorted recursion with this relative slack so
// that the boundary case lhs == p_max survives rounding.
constexpr double kBoundaryTol = 1e-12;

double required_power(const ChannelGains& g, const std::vector<std::size_t>& asc, double r) {
  const double growth = std::exp2(r);
  double scale = 1.0;  // 2^{(i-1) r}
  double sum = 0.0;
  for (std::size_t k = 0; k < asc.size(); ++k) {
    sum += scale / g[asc[k]];
    scale *= growth;
  }
  return (growth - 1.0) * sum;
}

std::string infeasible_message(double margin) {
  std::ostringstream os;
  os << "infeasible: QoS power recursion exceeds p_max, margin = " << margin << " W";
  return os.str();
}

}  // namespace

FeasibilityReport feasibility(const ChannelGains& g, double p_max, double r_star) {
  const auto asc = ascending_gain_order(g);
  FeasibilityReport rep;
  rep.lhs = required_power(g, asc, r_star);
  rep.margin = p_max - rep.lhs;
  rep.feasible = rep.lhs <= p_max * (1.0 + kBoundaryTol);
  return rep;
}

PowerAllocation closed_form_power(const ChannelGains& g, double p_max, double r_star) {
  const std::size_t m = g.size();
  const auto asc = ascending_gain_order(g);
  const double lhs = required_power(g, asc, r_star);
  if (lhs > p_max * (1.0 + kBoundaryTol)) {
    throw InfeasibleError(infeasible_message(p_max - lhs), p_max - lhs);
  }

  PowerAllocation p;
  p.watts.assign(m, 0.0);
  const double excess = std::exp2(r_star) - 1.0;
  double scale = 1.0;
  double spent = 0.0;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    const double pk = excess * scale / g[asc[k]];
    p.watts[asc[k]] = pk;
    spent += pk;
    scale *= std::exp2(r_star);
  }
  p.watts[asc[m - 1]] = std::max(0.0, p_max - spent);
  return p;
}

PowerAllocation lp_oracle(const ChannelGains& g, double p_max, double r_star) {
  const std::size_t m = g.size();
  if (m == 0) throw ValidationError("lp_oracle needs at least one user");
  if (m > 6) throw ValidationError("lp_oracle enumerates vertices and is limited to M <= 6");

  // Sorted variables x_k = P_(k). Rows a^T x <= b:
  //   sum x <= p_max; -x_k <= 0; c (1 + sum_{j<k} x_j h_j) - x_k h_k <= 0.
  const auto asc = ascending_gain_order(g);
  const double c = std::exp2(r_star) - 1.0;
  const auto n = static_cast<Eigen::Index>(m);
  const Eigen::Index rows = 2 * n + 1;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, n);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);
  a.row(0).setOnes();
  b(0) = p_max;
  for (Eigen::Index k = 0; k < n; ++k) {
    a(1 + k, k) = -1.0;
    const Eigen::Index r = 1 + n + k;
    for (Eigen::Index j = 0; j < k; ++j) a(r, j) = c * g[asc[j]];
    a(r, k) = -g[asc[k]];
    b(r) = -c;
  }
  Eigen::VectorXd objective(n);
  for (Eigen::Index k = 0; k < n; ++k) objective(k) = g[asc[k]];

  double best = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_x;
  std::vector<int> pick(static_cast<std::size_t>(n));
  // Walk all n-subsets of the rows in lexicographic order.
  for (Eigen::Index k = 0; k < n; ++k) pick[k] = static_cast<int>(k);
  while (true) {
    Eigen::MatrixXd sub(n, n);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      sub.row(k) = a.row(pick[k]);
      rhs(k) = b(pick[k]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
    if (lu.rank() == n) {
      const Eigen::VectorXd x = lu.solve(rhs);
      const Eigen::VectorXd slack = b - a * x;
      bool ok = true;
      for (Eigen::Index r = 0; r < rows && ok; ++r) {
        const double scale = 1.0 + std::abs(b(r)) + (a.row(r).cwiseAbs() * x.cwiseAbs()).value();
        ok = slack(r) >= -1e-11 * scale;
      }
      if (ok) {
        const double value = objective.dot(x);
        if (value > best) {
          best = value;
          best_x = x;
        }
      }
    }
    // next combination
    Eigen::Index k = n - 1;
    while (k >= 0 && pick[k] == static_cast<int>(rows - n + k)) --k;
    if (k < 0) break;
    ++pick[k];
    for (Eigen::Index j = k + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }

  if (best_x.size() == 0) {
    const double margin = feasibility(g, p_max, r_star).margin;
    throw InfeasibleError(infeasible_message(margin), margin);
  }
  PowerAllocation p;
  p.watts.assign(m, 0.0);
  for (Eigen::Index k = 0; k < n; ++k) p.watts[asc[k]] = best_x(k);
  return p;
}

double r_star_max(const Scenario& s, const UavPosition& pos) {
  const ChannelGains g = gains(s, pos);
  const auto asc = ascending_gain_order(g);
  double lo = 0.0;
  double hi = std::log2(1.0 + s.p_max * s.gamma0 / (s.altitude_h * s.altitude_h));
  for (int it = 0; it < 200 && hi - lo > 1e-9; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (required_power(g, asc, mid) <= s.p_max) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

RStarReport r_star_candidates(const Scenario& s) {
  RStarReport rep;
  for (std::size_t i = 0; i < s.size(); ++i) {
    rep.per_user.push_back(r_star_max(s, s.users[i]));
    if (rep.per_user[i] > rep.per_user[rep.best_user]) rep.best_user = i;
  }
  rep.r_star = rep.per_user[rep.best_user];
  return rep;
}

}  // namespace uavnoma
