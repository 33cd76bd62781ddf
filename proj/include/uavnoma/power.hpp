#pragma once

#include <vector>

#include "uavnoma/channel.hpp"
#include "uavnoma/scenario.hpp"

namespace uavnoma {

/// Minimum-power check for the weakest-first QoS recursion.
struct FeasibilityReport {
  bool feasible = false;
  double lhs = 0.0;     ///< (2^r - 1) * sum_i 2^{(i-1) r} / h_(i), watts
  double margin = 0.0;  ///< p_max - lhs, watts
};

FeasibilityReport feasibility(const ChannelGains& g, double p_max, double r_star);

/// Optimal powers for a fixed position. Every user but the strongest gets
/// exactly the power that holds its rate at r_star; the strongest takes the
/// remaining budget. Throws InfeasibleError when feasibility() fails.
PowerAllocation closed_form_power(const ChannelGains& g, double p_max, double r_star);

/// Same optimum found by enumerating every vertex of the power polytope
/// (budget, non-negativity and the linear QoS rows). Validation only: M <= 6.
/// Throws InfeasibleError for an empty polytope, ValidationError for M > 6.
PowerAllocation lp_oracle(const ChannelGains& g, double p_max, double r_star);

/// Largest QoS rate the position can support: the root of lhs(r) = p_max,
/// bisected on [0, log2(1 + p_max gamma0 / H^2)] to 1e-9.
double r_star_max(const Scenario& s, const UavPosition& pos);

struct RStarReport {
  std::vector<double> per_user;  ///< root with the UAV above each user
  double r_star = 0.0;           ///< max over users
  std::size_t best_user = 0;
};

RStarReport r_star_candidates(const Scenario& s);

}  // namespace uavnoma
