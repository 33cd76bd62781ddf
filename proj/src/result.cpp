#include "uavnoma/result.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "uavnoma/errors.hpp"

namespace uavnoma {

double jain_index(std::span<const double> rates) {
  double sum = 0.0;
  double sq = 0.0;
  for (double r : rates) {
    sum += r;
    sq += r * r;
  }
  if (rates.empty() || !(sq > 0.0)) throw ValidationError("jain index needs at least one positive rate");
  return sum * sum / (static_cast<double>(rates.size()) * sq);
}

SolveResult noma_result(const Scenario& s, std::string scheme, const UavPosition& pos,
                        PowerAllocation powers) {
  SolveResult res;
  res.scheme = std::move(scheme);
  res.r_star = s.r_star;
  res.p_max = s.p_max;
  res.position = pos;
  const ChannelGains g = gains(s, pos);
  res.rates = user_rates(g, decoding_order(s, pos), powers);
  res.sum_rate = sum_rate(g, powers);
  res.powers = std::move(powers);
  res.jain = jain_index(res.rates);
  res.feasible = true;
  return res;
}

SolveResult infeasible_result(const Scenario& s, std::string scheme, std::string note) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  SolveResult res;
  res.scheme = std::move(scheme);
  res.r_star = s.r_star;
  res.p_max = s.p_max;
  res.position = {nan, nan};
  res.powers.watts.assign(s.size(), nan);
  res.rates.assign(s.size(), nan);
  res.sum_rate = nan;
  res.jain = nan;
  res.feasible = false;
  res.note = std::move(note);
  return res;
}

}  // namespace uavnoma
