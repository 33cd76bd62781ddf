#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "uavnoma/scenario.hpp"

namespace testing_support {

inline uavnoma::Scenario random_scenario(std::mt19937_64& rng, std::size_t m, double r_star = 0.5) {
  std::uniform_real_distribution<double> c(0.0, 400.0);
  std::vector<uavnoma::Point2> users;
  for (std::size_t i = 0; i < m; ++i) users.push_back({c(rng), c(rng)});
  return uavnoma::make_scenario(users, 100.0, 1e6, 1.0, r_star, uavnoma::Box{0, 0, 400, 400});
}

inline uavnoma::Point2 random_point(std::mt19937_64& rng, const uavnoma::Box& b) {
  std::uniform_real_distribution<double> x(b.xmin, b.xmax), y(b.ymin, b.ymax);
  const double px = x(rng);
  return {px, y(rng)};
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace testing_support
