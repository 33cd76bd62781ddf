#pragma once

#include <span>
#include <string>
#include <vector>

#include "uavnoma/channel.hpp"
#include "uavnoma/scenario.hpp"

namespace uavnoma {

/// (sum R)^2 / (M sum R^2). Throws ValidationError when every rate is zero.
double jain_index(std::span<const double> rates);

/// Outcome of one scheme on one scenario. Infeasible results carry NaN
/// position/powers/rates and feasible == false.
struct SolveResult {
  std::string scheme;
  double r_star = 0.0;
  double p_max = 0.0;
  UavPosition position;
  PowerAllocation powers;
  std::vector<double> rates;
  double sum_rate = 0.0;
  double jain = 0.0;
  bool feasible = false;
  bool converged = true;
  long iterations = 0;
  double wall_time = 0.0;
  std::string note;  ///< human-readable reason when infeasible or unconverged
};

/// NOMA result at `pos` with `powers`, rates from user_rates under the
/// distance-sorted decoding order.
SolveResult noma_result(const Scenario& s, std::string scheme, const UavPosition& pos,
                        PowerAllocation powers);

SolveResult infeasible_result(const Scenario& s, std::string scheme, std::string note);

}  // namespace uavnoma
