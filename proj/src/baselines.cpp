#include "uavnoma/baselines.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <sstream>

#include "uavnoma/errors.hpp"
#include "uavnoma/power.hpp"

namespace uavnoma {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> axis_points(double lo, double hi, double step) {
  std::vector<double> v;
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long k = 0; k <= n; ++k) v.push_back(lo + static_cast<double>(k) * step);
  if (hi - v.back() > 1e-9 * std::max(1.0, std::abs(hi))) v.push_back(hi);
  return v;
}

std::optional<double> noma_score(const Scenario& s, const UavPosition& q) {
  const ChannelGains g = gains(s, q);
  if (!feasibility(g, s.p_max, s.r_star).feasible) return std::nullopt;
  return sum_rate(g, closed_form_power(g, s.p_max, s.r_star));
}

bool fdma_feasible(const ChannelGains& g, double p_max, double r_star) {
  const double m = static_cast<double>(g.size());
  const double num = std::exp2(m * r_star) - 1.0;
  double total = 0.0;
  for (double h : g.values) total += num / (m * h);
  return total <= p_max * (1.0 + 1e-12);
}

std::optional<double> fdma_score(const Scenario& s, const UavPosition& q) {
  const ChannelGains g = gains(s, q);
  if (!fdma_feasible(g, s.p_max, s.r_star)) return std::nullopt;
  double total = 0.0;
  for (double r : fdma_rates(g, waterfill_floors(g, s.p_max, s.r_star))) total += r;
  return total;
}

}  // namespace

void SearchGrid::validate() const {
  if (!(coarse_step > 0.0)) throw ValidationError("grid coarse_step must be positive");
  if (refine_iters < 0) throw ValidationError("grid refine_iters must be non-negative");
  if (!(box.xmax >= box.xmin && box.ymax >= box.ymin)) throw ValidationError("grid box is empty");
}

SearchGrid default_grid(const Scenario& s) { return SearchGrid{s.area}; }

PositionSearch search_positions(const SearchGrid& grid,
                                const std::function<std::optional<double>(const UavPosition&)>& score) {
  grid.validate();
  PositionSearch out;
  for (double x : axis_points(grid.box.xmin, grid.box.xmax, grid.coarse_step)) {
    for (double y : axis_points(grid.box.ymin, grid.box.ymax, grid.coarse_step)) {
      ++out.evaluations;
      const auto v = score({x, y});
      if (v && (!out.best || *v > out.score)) {
        out.best = UavPosition{x, y};
        out.score = *v;
      }
    }
  }
  if (!out.best) return out;

  static constexpr std::array<std::array<double, 2>, 8> kDirs{
      {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
  double step = grid.coarse_step / 2.0;
  for (int round = 0; round < grid.refine_iters; ++round, step /= 2.0) {
    for (int moves = 0; moves < 64; ++moves) {
      bool moved = false;
      for (const auto& d : kDirs) {
        const UavPosition cand{out.best->x + d[0] * step, out.best->y + d[1] * step};
        if (!grid.box.contains(cand)) continue;
        ++out.evaluations;
        const auto v = score(cand);
        if (v && *v > out.score) {
          out.best = cand;
          out.score = *v;
          moved = true;
        }
      }
      if (!moved) break;
    }
  }
  return out;
}

SolveResult grid_oracle(const Scenario& s, const SearchGrid& grid) {
  const auto t0 = std::chrono::steady_clock::now();
  const PositionSearch found = search_positions(grid, [&](const UavPosition& q) { return noma_score(s, q); });
  SolveResult res;
  if (!found.best) {
    std::ostringstream os;
    os << "infeasible: QoS power recursion exceeds p_max at every grid point (r_star = " << s.r_star << ")";
    res = infeasible_result(s, "oracle", os.str());
  } else {
    const ChannelGains g = gains(s, *found.best);
    res = noma_result(s, "oracle", *found.best, closed_form_power(g, s.p_max, s.r_star));
  }
  res.iterations = found.evaluations;
  res.wall_time = seconds_since(t0);
  return res;
}

SolveResult solve_nfdp(const Scenario& s) {
  const auto t0 = std::chrono::steady_clock::now();
  UavPosition c{0.0, 0.0};
  for (const auto& u : s.users) {
    c.x += u.x;
    c.y += u.y;
  }
  c.x /= static_cast<double>(s.size());
  c.y /= static_cast<double>(s.size());
  const ChannelGains g = gains(s, c);
  const FeasibilityReport rep = feasibility(g, s.p_max, s.r_star);
  SolveResult res;
  if (!rep.feasible) {
    std::ostringstream os;
    os << "infeasible: QoS power recursion exceeds p_max at the centroid, margin = " << rep.margin << " W";
    res = infeasible_result(s, "nfdp", os.str());
  } else {
    res = noma_result(s, "nfdp", c, closed_form_power(g, s.p_max, s.r_star));
  }
  res.iterations = 1;
  res.wall_time = seconds_since(t0);
  return res;
}

PowerAllocation waterfill_floors(const ChannelGains& g, double p_max, double r_star) {
  const std::size_t n = g.size();
  const double m = static_cast<double>(n);
  const double num = std::exp2(m * r_star) - 1.0;
  std::vector<double> floor(n), inv(n);
  double floors = 0.0;
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    floor[i] = num / (m * g[i]);
    inv[i] = 1.0 / (m * g[i]);
    floors += floor[i];
    hi = std::max(hi, floor[i] + inv[i]);
  }
  if (floors > p_max * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "infeasible: FDMA QoS floors exceed p_max, margin = " << p_max - floors << " W";
    throw InfeasibleError(os.str(), p_max - floors);
  }
  hi += p_max;
  auto total = [&](double mu) {
    double t = 0.0;
    for (std::size_t i = 0; i < n; ++i) t += std::max(floor[i], mu - inv[i]);
    return t;
  };
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    (total(mid) < p_max ? lo : hi) = mid;
  }
  // Exact level on the unclamped set found by bisection.
  const double mu_b = 0.5 * (lo + hi);
  double rest = p_max;
  double inv_sum = 0.0;
  int open = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (mu_b - inv[i] > floor[i]) {
      inv_sum += inv[i];
      ++open;
    } else {
      rest -= floor[i];
    }
  }
  PowerAllocation p;
  p.watts = floor;
  if (open == 0) return p;
  const double mu = (rest + inv_sum) / open;
  for (std::size_t i = 0; i < n; ++i) {
    if (mu_b - inv[i] > floor[i]) p.watts[i] = std::max(floor[i], mu - inv[i]);
  }
  return p;
}

std::vector<double> fdma_rates(const ChannelGains& g, const PowerAllocation& p) {
  const double m = static_cast<double>(g.size());
  std::vector<double> r(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = std::log2(1.0 + m * p[i] * g[i]) / m;
  return r;
}

SolveResult solve_fdma(const Scenario& s, const SearchGrid& grid) {
  const auto t0 = std::chrono::steady_clock::now();
  const PositionSearch found = search_positions(grid, [&](const UavPosition& q) { return fdma_score(s, q); });
  SolveResult res;
  if (!found.best) {
    std::ostringstream os;
    os << "infeasible: FDMA QoS floors exceed p_max at every grid point (r_star = " << s.r_star << ")";
    res = infeasible_result(s, "fdma", os.str());
  } else {
    const ChannelGains g = gains(s, *found.best);
    res.scheme = "fdma";
    res.r_star = s.r_star;
    res.p_max = s.p_max;
    res.position = *found.best;
    res.powers = waterfill_floors(g, s.p_max, s.r_star);
    res.rates = fdma_rates(g, res.powers);
    res.sum_rate = 0.0;
    for (double r : res.rates) res.sum_rate += r;
    res.jain = jain_index(res.rates);
    res.feasible = true;
  }
  res.iterations = found.evaluations;
  res.wall_time = seconds_since(t0);
  return res;
}

}  // namespace uavnoma
