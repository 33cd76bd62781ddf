#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "support.hpp"
#include "uavnoma/baselines.hpp"
#include "uavnoma/errors.hpp"
#include "uavnoma/lowcx.hpp"

using namespace uavnoma;

namespace {

double dist(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

void check_waterfill_kkt(const ChannelGains& g, const PowerAllocation& p, double p_max, double r) {
  const double m = static_cast<double>(g.size());
  CHECK(std::abs(p.total() - p_max) <= 1e-12 * std::max(1.0, p_max));
  std::vector<double> marginal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double floor = (std::exp2(m * r) - 1.0) / (m * g[i]);
    CHECK(p[i] >= floor * (1.0 - 1e-12));
    if (p[i] > floor * (1.0 + 1e-9)) marginal.push_back(g[i] / (1.0 + m * p[i] * g[i]));
  }
  for (double x : marginal) CHECK(std::abs(x - marginal[0]) <= 1e-8 * marginal[0]);
}

}  // namespace

TEST_SUITE("baselines") {

TEST_CASE("grid oracle, single user") {
  const Scenario s = make_scenario({{123.4, 250.7}}, 100, 1e6, 1.0, 0.5, Box{0, 0, 400, 400});
  const SolveResult r = grid_oracle(s, default_grid(s));
  REQUIRE(r.feasible);
  CHECK(dist(r.position, s.users[0]) <= 0.01);
  CHECK(r.sum_rate == doctest::Approx(std::log2(101.0)).epsilon(1e-9));
  CHECK(r.scheme == "oracle");
}

TEST_CASE("grid oracle at a vanishing rate sits above one user") {
  const Scenario s = reference_scenario(1e-6);
  const SearchGrid grid = default_grid(s);
  const SolveResult r = grid_oracle(s, grid);
  const auto best = best_candidate(overhead_candidates(s, s.r_star));
  REQUIRE(best.has_value());
  CHECK(dist(r.position, s.users[*best]) <= grid.coarse_step);
}

TEST_CASE("finer coarse grid never loses") {
  for (double r : {0.3, 0.8}) {
    const Scenario s = reference_scenario(r);
    SearchGrid g4 = default_grid(s), g2 = default_grid(s);
    g2.coarse_step = 2.0;
    CHECK(grid_oracle(s, g2).sum_rate >= grid_oracle(s, g4).sum_rate - 1e-9);
  }
}

TEST_CASE("refinement never returns worse than the coarse grid") {
  const Scenario s = reference_scenario(0.6);
  SearchGrid coarse = default_grid(s);
  coarse.refine_iters = 0;
  CHECK(grid_oracle(s, default_grid(s)).sum_rate >= grid_oracle(s, coarse).sum_rate);
}

TEST_CASE("grid oracle reports infeasibility") {
  const Scenario s = reference_scenario(3.0);
  SearchGrid g = default_grid(s);
  g.coarse_step = 20.0;
  const SolveResult r = grid_oracle(s, g);
  CHECK_FALSE(r.feasible);
  CHECK(std::isnan(r.position.x));
}

TEST_CASE("search grid validation") {
  SearchGrid g{Box{0, 0, 10, 10}, 0.0, 3};
  CHECK_THROWS_AS(g.validate(), ValidationError);
  g.coarse_step = 1.0;
  g.refine_iters = -1;
  CHECK_THROWS_AS(g.validate(), ValidationError);
}

TEST_CASE("centroid deployment") {
  const Scenario sq = make_scenario({{-50, -50}, {50, -50}, {-50, 50}, {50, 50}}, 100, 1e6, 1.0, 0.5);
  const SolveResult r = solve_nfdp(sq);
  CHECK(r.position.x == doctest::Approx(0.0));
  CHECK(r.position.y == doctest::Approx(0.0));
  CHECK(r.scheme == "nfdp");

  const Scenario one = make_scenario({{80, 90}}, 100, 1e6, 1.0, 0.5, Box{0, 0, 400, 400});
  const double lc = solve_lowcx(one).sum_rate;
  CHECK(solve_nfdp(one).sum_rate == doctest::Approx(lc).epsilon(1e-12));
  CHECK(grid_oracle(one, default_grid(one)).sum_rate == doctest::Approx(lc).epsilon(1e-9));

  const SolveResult bad = solve_nfdp(reference_scenario(1.4));
  CHECK_FALSE(bad.feasible);
  CHECK(bad.note.find("margin") != std::string::npos);
}

TEST_CASE("water-filling examples") {
  const auto eq = waterfill_floors(ChannelGains{{50.0, 50.0}}, 1.0, 1e-9);
  CHECK(eq[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(eq[1] == doctest::Approx(0.5).epsilon(1e-9));

  const auto uneq = waterfill_floors(ChannelGains{{100.0, 80.0}}, 1.0, 1e-9);
  CHECK(uneq[0] == doctest::Approx(0.500625).epsilon(1e-7));
  CHECK(uneq[1] == doctest::Approx(0.499375).epsilon(1e-7));

  // user 2 has a weak channel: its floor exceeds the unconstrained water level
  const ChannelGains g{{100.0, 2.0}};
  const double r = 1.0;
  const auto p = waterfill_floors(g, 1.0, r);
  const double floor2 = (std::exp2(2.0 * r) - 1.0) / (2.0 * 2.0);
  CHECK(p[1] == doctest::Approx(floor2).epsilon(1e-12));
  CHECK(p[0] == doctest::Approx(1.0 - floor2).epsilon(1e-12));

  CHECK_THROWS_AS(waterfill_floors(ChannelGains{{1.0, 1.0}}, 1.0, 1.0), InfeasibleError);
}

TEST_CASE("water-filling stationarity on random instances") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> gain(0.5, 200.0), rate(0.01, 1.0);
  int done = 0;
  for (int trial = 0; trial < 300; ++trial) {
    ChannelGains g;
    for (int i = 0; i < 2 + trial % 4; ++i) g.values.push_back(gain(rng));
    const double r = rate(rng);
    try {
      check_waterfill_kkt(g, waterfill_floors(g, 1.0, r), 1.0, r);
      ++done;
    } catch (const InfeasibleError&) {
    }
  }
  CHECK(done > 100);
}

TEST_CASE("fdma with one user matches noma") {
  const Scenario s = make_scenario({{210, 190}}, 100, 1e6, 2.0, 0.7, Box{0, 0, 400, 400});
  const SolveResult f = solve_fdma(s, default_grid(s));
  const SolveResult n = grid_oracle(s, default_grid(s));
  CHECK(f.sum_rate == doctest::Approx(n.sum_rate).epsilon(1e-12));
  CHECK(f.position == n.position);
  CHECK(f.powers[0] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("fdma on a symmetric square at a high rate goes to the centre") {
  const Scenario s =
      make_scenario({{100, 100}, {300, 100}, {100, 300}, {300, 300}}, 100, 1e6, 1.0, 1.27, Box{0, 0, 400, 400});
  const SolveResult f = solve_fdma(s, default_grid(s));
  REQUIRE(f.feasible);
  CHECK(dist(f.position, {200, 200}) <= 0.05);
  CHECK(f.scheme == "fdma");
  check_waterfill_kkt(gains(s, f.position), f.powers, s.p_max, s.r_star);
}

TEST_CASE("fdma infeasible everywhere") {
  const Scenario s = reference_scenario(2.5);
  SearchGrid g = default_grid(s);
  g.coarse_step = 20.0;
  const SolveResult f = solve_fdma(s, g);
  CHECK_FALSE(f.feasible);
  CHECK(f.note.find("infeasible") != std::string::npos);
}

}
