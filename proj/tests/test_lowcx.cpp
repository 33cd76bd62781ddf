#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "uavnoma/baselines.hpp"
#include "uavnoma/lowcx.hpp"

using namespace uavnoma;

TEST_SUITE("lowcx") {

TEST_CASE("single user") {
  const Scenario s = make_scenario({{50, 50}}, 100, 1e6, 1.0, 0.5, Box{0, 0, 400, 400});
  const SolveResult r = solve_lowcx(s);
  REQUIRE(r.feasible);
  CHECK(r.position == Point2{50, 50});
  CHECK(r.powers[0] == 1.0);
  CHECK(r.sum_rate == doctest::Approx(std::log2(101.0)).epsilon(1e-12));
  CHECK(r.scheme == "nlc");
}

TEST_CASE("ties go to the lowest index") {
  const Scenario s = make_scenario({{100, 200}, {300, 200}}, 100, 1e6, 1.0, 0.5, Box{0, 0, 400, 400});
  const auto c = overhead_candidates(s, s.r_star);
  CHECK(c[0].sum_rate == doctest::Approx(c[1].sum_rate).epsilon(1e-14));
  CHECK(solve_lowcx(s).position == Point2{100, 200});
}

TEST_CASE("one candidate per user") {
  const Scenario s = reference_scenario(0.5);
  const auto c = overhead_candidates(s, s.r_star);
  REQUIRE(c.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(c[i].user_index == i);
    CHECK(c[i].position == s.users[i]);
    CHECK(c[i].powers.has_value() == std::isfinite(c[i].sum_rate));
  }
  CHECK(solve_lowcx(s).iterations == 4);
}

TEST_CASE("above the largest supportable rate every candidate fails") {
  const Scenario s = reference_scenario(1.5);
  const auto c = overhead_candidates(s, s.r_star);
  for (const auto& x : c) {
    CHECK_FALSE(x.powers.has_value());
    CHECK(x.sum_rate == -INFINITY);
  }
  const SolveResult r = solve_lowcx(s);
  CHECK_FALSE(r.feasible);
  CHECK(std::isnan(r.sum_rate));
  CHECK(r.note.find("infeasible") != std::string::npos);
}

TEST_CASE("deterministic") {
  const Scenario s = reference_scenario(0.7);
  const SolveResult a = solve_lowcx(s), b = solve_lowcx(s);
  CHECK(a.position == b.position);
  CHECK(a.powers.watts == b.powers.watts);
  CHECK(a.rates == b.rates);
}

TEST_CASE("reference scenario is within 5% of the grid oracle") {
  const Scenario s = reference_scenario(0.5);
  const SolveResult lc = solve_lowcx(s);
  const SolveResult orc = grid_oracle(s, default_grid(s));
  CHECK(lc.sum_rate >= 0.95 * orc.sum_rate);
  CHECK(lc.sum_rate <= orc.sum_rate + 1e-6);
}

TEST_CASE("never beats the grid oracle") {
  std::mt19937_64 rng(404);
  int checked = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const Scenario s = testing_support::random_scenario(rng, 2 + trial % 4, 0.2 + 0.1 * (trial % 5));
    const SolveResult lc = solve_lowcx(s);
    if (!lc.feasible) continue;
    ++checked;
    const SolveResult orc = grid_oracle(s, default_grid(s));
    REQUIRE(orc.feasible);
    CHECK(lc.sum_rate <= orc.sum_rate + 1e-6);
  }
  CHECK(checked > 6);
}

}
