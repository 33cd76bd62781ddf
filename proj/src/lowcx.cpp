#include "uavnoma/lowcx.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "uavnoma/power.hpp"

namespace uavnoma {

std::vector<CandidateEvaluation> overhead_candidates(const Scenario& s, double r_star) {
  std::vector<CandidateEvaluation> out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CandidateEvaluation c;
    c.user_index = i;
    c.position = s.users[i];
    const ChannelGains g = gains(s, c.position);
    if (feasibility(g, s.p_max, r_star).feasible) {
      c.powers = closed_form_power(g, s.p_max, r_star);
      c.sum_rate = sum_rate(g, *c.powers);
    } else {
      c.sum_rate = -std::numeric_limits<double>::infinity();
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::optional<std::size_t> best_candidate(const std::vector<CandidateEvaluation>& c) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!c[i].powers) continue;
    if (!best || c[i].sum_rate > c[*best].sum_rate) best = i;
  }
  return best;
}

SolveResult solve_lowcx(const Scenario& s) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto candidates = overhead_candidates(s, s.r_star);
  const auto best = best_candidate(candidates);
  SolveResult res;
  if (!best) {
    std::ostringstream os;
    os << "infeasible: QoS power recursion fails above every user (r_star = " << s.r_star
       << " exceeds R*)";
    res = infeasible_result(s, "nlc", os.str());
  } else {
    const auto& c = candidates[*best];
    res = noma_result(s, "nlc", c.position, *c.powers);
  }
  res.iterations = static_cast<long>(candidates.size());
  res.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace uavnoma
