#pragma once

#include <optional>
#include <vector>

#include "uavnoma/channel.hpp"
#include "uavnoma/result.hpp"
#include "uavnoma/scenario.hpp"

namespace uavnoma {

/// Closed-form evaluation with the UAV directly above one user.
struct CandidateEvaluation {
  std::size_t user_index = 0;
  UavPosition position;
  std::optional<PowerAllocation> powers;  ///< empty when the QoS recursion is infeasible there
  double sum_rate = 0.0;                  ///< -inf when infeasible
};

/// Every over-user candidate for `r_star`, in user order.
std::vector<CandidateEvaluation> overhead_candidates(const Scenario& s, double r_star);

/// Index of the best feasible candidate (ties to the lowest index), or empty.
std::optional<std::size_t> best_candidate(const std::vector<CandidateEvaluation>& c);

/// Low-complexity scheme: keep the best over-user position. Never throws for
/// infeasibility; the result is flagged instead.
SolveResult solve_lowcx(const Scenario& s);

}  // namespace uavnoma
