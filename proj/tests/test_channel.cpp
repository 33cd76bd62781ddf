#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "support.hpp"
#include "uavnoma/channel.hpp"

using namespace uavnoma;

namespace {

Scenario single(Point2 user, double h) {
  return make_scenario({user}, h, 1e6, 1.0, 0.5, Box{-500, -500, 500, 500});
}

// Every valid order is a strict ranking; enumerate them through permutations.
DecodingOrder order_from_ranking(const std::vector<std::size_t>& strongest_first) {
  DecodingOrder o(strongest_first.size());
  for (std::size_t a = 0; a < strongest_first.size(); ++a) {
    for (std::size_t b = a + 1; b < strongest_first.size(); ++b) {
      o.set(strongest_first[a], strongest_first[b], 1);
    }
  }
  return o;
}

double total(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

TEST_SUITE("channel") {

TEST_CASE("squared distances") {
  CHECK(squared_distances(single({0, 0}, 100), {0, 0})[0] == 10000.0);
  CHECK(squared_distances(single({30, 40}, 100), {0, 0})[0] == 12500.0);
  CHECK(squared_distances(single({0, 0}, 1), {0, 0})[0] == 1.0);
}

TEST_CASE("gains") {
  CHECK(gains(single({0, 0}, 100), {0, 0})[0] == doctest::Approx(100.0));
  CHECK(gains(single({30, 40}, 100), {0, 0})[0] == doctest::Approx(80.0));
  const Scenario s = make_scenario({{10, 0}, {-10, 0}}, 100, 1e6, 1, 0.5, Box{-50, -50, 50, 50});
  const ChannelGains g = gains(s, {0, 0});
  CHECK(g[0] == g[1]);
}

TEST_CASE("decoding order") {
  const auto o = decoding_order_from_distances(std::vector<double>{1e4, 1.25e4});
  CHECK(o.at(0, 1) == 1);
  CHECK(o.at(1, 0) == 0);
  CHECK(o.at(0, 0) == 0);
  const auto tie = decoding_order_from_distances(std::vector<double>{2e4, 2e4});
  CHECK(tie.at(0, 1) == 1);
  CHECK(tie.at(1, 0) == 0);
  const auto one = decoding_order_from_distances(std::vector<double>{5e3});
  CHECK(one.size() == 1);
  CHECK(one.at(0, 0) == 0);
  CHECK(o.is_valid());
}

TEST_CASE("ascending gain order ranks ties like the decoding order") {
  const ChannelGains g{{5.0, 7.0, 5.0, 7.0}};
  const auto idx = ascending_gain_order(g);
  CHECK(idx == std::vector<std::size_t>{2, 0, 3, 1});
}

TEST_CASE("user rates examples") {
  const ChannelGains g{{80.0, 100.0}};
  const PowerAllocation p{{0.0125, 0.9875}};
  DecodingOrder o(2);
  o.set(1, 0, 1);  // user 2 (gain 100) is stronger
  const auto r = user_rates(g, o, p);
  CHECK(r[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r[1] == doctest::Approx(std::log2(50.375)).epsilon(1e-12));
  CHECK(sum_rate(g, p) == doctest::Approx(std::log2(100.75)).epsilon(1e-12));
  CHECK(total(r) == doctest::Approx(sum_rate(g, p)).epsilon(1e-12));

  const auto zero = user_rates(g, o, PowerAllocation{{0.0, 0.5}});
  CHECK(zero[0] == 0.0);
  CHECK(sum_rate(g, PowerAllocation{{0.0, 0.0}}) == 0.0);

  const ChannelGains g1{{100.0}};
  const PowerAllocation p1{{0.7}};
  CHECK(user_rates(g1, DecodingOrder(1), p1)[0] == doctest::Approx(std::log2(1.0 + 70.0)));
  CHECK(sum_rate(g1, p1) == doctest::Approx(std::log2(1.0 + 70.0)));
}

TEST_CASE("sum-rate identity for the distance order and every other valid order") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = 1 + trial % 5;
    const Scenario s = testing_support::random_scenario(rng, m);
    const Point2 q = testing_support::random_point(rng, s.area);
    PowerAllocation p;
    for (std::size_t i = 0; i < m; ++i) p.watts.push_back(trial % 7 == 0 && i == 0 ? 0.0 : u(rng));
    const ChannelGains g = gains(s, q);
    const double ref = sum_rate(g, p);
    CHECK(std::abs(total(user_rates(g, decoding_order(s, q), p)) - ref) <= 1e-9);
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      const DecodingOrder o = order_from_ranking(perm);
      REQUIRE(o.is_valid());
      CHECK(std::abs(total(user_rates(g, o, p)) - ref) <= 1e-9);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST_CASE("moving toward a user increases its gain") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Scenario s = testing_support::random_scenario(rng, 3);
    const Point2 q = testing_support::random_point(rng, s.area);
    const Point2 u = s.users[trial % 3];
    if (std::hypot(q.x - u.x, q.y - u.y) < 1e-3) continue;
    const Point2 closer{q.x + 0.3 * (u.x - q.x), q.y + 0.3 * (u.y - q.y)};
    CHECK(gains(s, closer)[trial % 3] > gains(s, q)[trial % 3]);
  }
}

TEST_CASE("midpoint convexity of the log-rate and quadratic-over-linear forms") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> box(-10.0, 10.0), pos(0.1, 10.0);
  auto f = [](double x, double y) { return std::log2(1.0 + std::exp(x - y)); };
  auto g = [](double x1, double x2, double y) { return ((x1 - 1.5) * (x1 - 1.5) + (x2 + 2.0) * (x2 + 2.0)) / y; };
  int bad_f = 0, bad_g = 0;
  for (int k = 0; k < 10000; ++k) {
    const double ax = box(rng), ay = box(rng), bx = box(rng), by = box(rng);
    if (f(0.5 * (ax + bx), 0.5 * (ay + by)) > 0.5 * (f(ax, ay) + f(bx, by)) + 1e-12) ++bad_f;
    const double a1 = box(rng), a2 = box(rng), ya = pos(rng), b1 = box(rng), b2 = box(rng), yb = pos(rng);
    const double mid = g(0.5 * (a1 + b1), 0.5 * (a2 + b2), 0.5 * (ya + yb));
    if (mid > 0.5 * (g(a1, a2, ya) + g(b1, b2, yb)) + 1e-12 * (1.0 + std::abs(mid))) ++bad_g;
  }
  CHECK(bad_f == 0);
  CHECK(bad_g == 0);
}

}
