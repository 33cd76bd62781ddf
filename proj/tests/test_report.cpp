#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "uavnoma/errors.hpp"
#include "uavnoma/report.hpp"
#include "uavnoma/result.hpp"

using namespace uavnoma;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

std::size_t fields(const std::string& line) { return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1; }

SweepSpec r_sweep(std::vector<std::string> schemes) {
  SweepSpec spec;
  spec.variable = SweepVariable::r_star;
  spec.start = 0.1;
  spec.stop = 1.0;
  spec.step = 0.1;
  spec.schemes = std::move(schemes);
  return spec;
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("jain index examples") {
  CHECK(jain_index(std::vector<double>{1, 1, 1, 1}) == doctest::Approx(1.0));
  CHECK(jain_index(std::vector<double>{2.5, 0, 0, 0}) == doctest::Approx(0.25));
  CHECK(jain_index(std::vector<double>{1, 2, 3}) == doctest::Approx(6.0 / 7.0));
  CHECK_THROWS_AS(jain_index(std::vector<double>{0, 0}), ValidationError);
  CHECK_THROWS_AS(jain_index(std::vector<double>{}), ValidationError);
}

TEST_CASE("jain index bounds and scale invariance") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> r(0.0, 5.0), k(0.01, 100.0);
  for (int t = 0; t < 2000; ++t) {
    std::vector<double> x(1 + t % 6);
    for (double& v : x) v = r(rng);
    const double j = jain_index(x);
    CHECK(j >= 1.0 / static_cast<double>(x.size()) - 1e-12);
    CHECK(j <= 1.0 + 1e-12);
    const double c = k(rng);
    std::vector<double> y = x;
    for (double& v : y) v *= c;
    CHECK(jain_index(y) == doctest::Approx(j).epsilon(1e-12));
  }
}

TEST_CASE("number formatting") {
  CHECK(format_real(0.5) == "0.5");
  CHECK(format_real(6.571038029881234) == "6.57103802988");
  CHECK(format_real(NAN) == "nan");
  CHECK(format_real(0.0) == "0");
}

TEST_CASE("csv header and rows") {
  CHECK(csv_header(2) ==
        "scheme,r_star,p_max,pos_x,pos_y,p_1,p_2,r_1,r_2,sum_rate,jain,feasible,converged,iterations,wall_time_s");
  const Scenario s = reference_scenario(0.5);
  const SolveResult r = run_scheme(s, "nlc", {}, default_grid(s));
  const std::string row = csv_row(r);
  CHECK(fields(row) == fields(csv_header(4)));
  CHECK(row.rfind("nlc,0.5,1,120,180,", 0) == 0);
  CHECK(row.substr(row.size() - 2) == ",0");

  const SolveResult bad = run_scheme(s.with_r_star(2.0), "nfdp", {}, default_grid(s));
  const std::string bad_row = csv_row(bad);
  CHECK(fields(bad_row) == fields(csv_header(4)));
  CHECK(bad_row.find(",nan,nan,") != std::string::npos);
  CHECK(bad_row.find(",0,") != std::string::npos);

  std::ostringstream empty;
  write_csv(empty, 4, {});
  CHECK(empty.str() == csv_header(4) + "\n");
}

TEST_CASE("timing column only with timing") {
  SolveResult r = run_scheme(reference_scenario(0.5), "nlc", {}, default_grid(reference_scenario(0.5)));
  r.wall_time = 1.25;
  CHECK(csv_row(r, false).substr(csv_row(r, false).size() - 2) == ",0");
  CHECK(csv_row(r, true).substr(csv_row(r, true).size() - 5) == ",1.25");
}

TEST_CASE("unknown scheme") {
  const Scenario s = reference_scenario(0.5);
  CHECK_THROWS_AS(run_scheme(s, "tdma", {}, default_grid(s)), ValidationError);
}

TEST_CASE("sweep layout, determinism and trends") {
  const Scenario s = reference_scenario(0.5);
  const SweepResult a = run_sweep(s, r_sweep({"nlc", "fdma"}), {}, default_grid(s));
  REQUIRE(a.rows.size() == 20);
  REQUIRE(a.axis.size() == 10);
  for (std::size_t k = 0; k < 10; ++k) {
    CHECK(a.at(k, 0).scheme == "nlc");
    CHECK(a.at(k, 1).scheme == "fdma");
    CHECK(a.at(k, 0).r_star == doctest::Approx(0.1 * static_cast<double>(k + 1)));
    CHECK(a.at(k, 0).feasible);
    CHECK(a.at(k, 0).sum_rate >= a.at(k, 1).sum_rate);
  }
  CHECK(check_trends(a).empty());

  std::ostringstream x, y;
  write_csv(x, 4, a.rows);
  write_csv(y, 4, run_sweep(s, r_sweep({"nlc", "fdma"}), {}, default_grid(s)).rows);
  CHECK(x.str() == y.str());
  CHECK(lines(x.str()).size() == 21);
}

TEST_CASE("infeasible sweep points are flagged rows") {
  const Scenario s = reference_scenario(0.5);
  SweepSpec spec = r_sweep({"nlc", "nfdp"});
  spec.start = 1.0;
  spec.stop = 1.6;
  spec.step = 0.3;
  const SweepResult r = run_sweep(s, spec, {}, default_grid(s));
  REQUIRE(r.rows.size() == 6);
  CHECK(r.at(0, 0).feasible);
  CHECK_FALSE(r.at(2, 0).feasible);
  CHECK_FALSE(r.at(2, 1).feasible);
  CHECK(std::isnan(r.at(2, 0).sum_rate));
  CHECK(check_trends(r).empty());
}

TEST_CASE("trend checker reports a violation") {
  const Scenario s = reference_scenario(0.5);
  SweepResult r = run_sweep(s, r_sweep({"nlc"}), {}, default_grid(s));
  r.rows[5].sum_rate = r.rows[4].sum_rate + 0.1;
  const auto issues = check_trends(r);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].find("nlc") == 0);
}

TEST_CASE("power sweep trends") {
  const Scenario s = reference_scenario(1.0);
  SweepSpec spec;
  spec.variable = SweepVariable::p_max;
  spec.start = 0.5;
  spec.stop = 2.0;
  spec.step = 0.5;
  spec.schemes = {"nlc", "nfdp", "fdma"};
  const SweepResult r = run_sweep(s, spec, {}, default_grid(s));
  CHECK(check_trends(r).empty());
  CHECK(r.at(3, 0).p_max == 2.0);
}

TEST_CASE("trace csv") {
  std::ostringstream os;
  write_trace_csv(os, {{0, 0, 0.1, 2.5, 0.0, 120.0, 180.0}, {0, 1, 0.1, 2.75, 0.001, 120.5, 179.5}});
  CHECK(os.str() ==
        "outer_idx,inner_idx,lambda,objective,max_phi,q_x,q_y\n0,0,0.1,2.5,0,120,180\n0,1,0.1,2.75,0.001,120.5,179.5\n");
}

}
