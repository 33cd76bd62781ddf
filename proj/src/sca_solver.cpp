#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "uavnoma/errors.hpp"
#include "uavnoma/lowcx.hpp"
#include "uavnoma/power.hpp"
#include "uavnoma/sca.hpp"

namespace uavnoma::sca {

void ScaConfig::validate() const {
  if (!(lambda0 > 0.0)) throw ValidationError("lambda0 must be positive");
  if (!(c > 1.0)) throw ValidationError("penalty growth factor c must exceed 1");
  if (!(eps1 > 0.0)) throw ValidationError("eps1 must be positive");
  if (!(eps2 > 0.0)) throw ValidationError("eps2 must be positive");
  if (n0 < 1) throw ValidationError("n0 must be at least 1");
  if (max_inner < 1 || max_outer < 1) throw ValidationError("iteration caps must be positive");
  if (ramp_steps < 1) throw ValidationError("ramp_steps must be at least 1");
}

namespace {

TraceRow trace_row(int outer, int inner, const ScaState& st) {
  return {outer, inner, st.lambda, st.objective(), st.max_phi(), st.q.x, st.q.y};
}

struct Start {
  UavPosition q;
  PowerAllocation p;
};

// Closed-form powers at q, else the best over-user candidate.
std::optional<Start> start_at(const Scenario& s, const UavPosition& q) {
  const ChannelGains g = gains(s, q);
  if (feasibility(g, s.p_max, s.r_star).feasible) return Start{q, closed_form_power(g, s.p_max, s.r_star)};
  const auto cands = overhead_candidates(s, s.r_star);
  const auto best = best_candidate(cands);
  if (!best) return std::nullopt;
  return Start{cands[*best].position, *cands[*best].powers};
}

ScaState anchor_for(const Scenario& s, const Start& st, double lambda) {
  return equality_anchor(s, st.q, st.p, decoding_order(s, st.q), lambda);
}

// Rounds the relaxed order; falls back to the distance order when rounding is
// ambiguous or contradicts the distances.
DecodingOrder round_order(const Scenario& s, const ScaState& st) {
  const std::size_t m = st.m;
  const std::vector<double> d = squared_distances(s, st.q);
  DecodingOrder order(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double a = st.alpha_at(i, j);
      if (a == 0.5) return decoding_order(s, st.q);
      const int bit = a > 0.5 ? 1 : 0;
      order.set(i, j, bit);
      order.set(j, i, 1 - bit);
      const bool consistent = bit == 1 ? d[i] <= d[j] : d[j] <= d[i];
      if (!consistent) return decoding_order(s, st.q);
    }
  }
  return order;
}

}  // namespace

ScaRun run_penalty_sca(const Scenario& s, ScaState anchor, const ScaConfig& cfg) {
  cfg.validate();
  ScaRun run;
  ScaState cur = std::move(anchor);
  int num = 0;
  bool capped = false;
  for (int outer = 0; outer < cfg.max_outer && num < cfg.n0; ++outer) {
    run.trace.push_back(trace_row(outer, 0, cur));
    double prev = cur.objective();
    capped = true;
    for (int inner = 1; inner <= cfg.max_inner; ++inner) {
      const ConvexSubproblem sub(s, cur, {});
      SubproblemSolution sol = solve_subproblem(sub, cfg.solver);
      ++run.subproblems;
      cur = std::move(sol.state);
      run.trace.push_back(trace_row(outer, inner, cur));
      const double gain = (sol.objective - prev) / std::max(std::abs(prev), 1e-12);
      prev = sol.objective;
      if (gain < cfg.eps1) {
        capped = false;
        break;
      }
    }
    ++run.outer_loops;
    if (cur.max_phi() > cfg.eps2) {
      cur.lambda *= cfg.c;
    } else {
      ++num;
    }
  }
  run.converged = num >= cfg.n0 && !capped;
  if (!run.converged) {
    std::ostringstream os;
    os << "unconverged: " << run.outer_loops << " outer loops, max phi " << cur.max_phi();
    run.note = os.str();
  }
  run.final_state = std::move(cur);
  return run;
}

ScaState initialize(const Scenario& s, const ScaConfig& cfg) {
  cfg.validate();
  const double r_target = s.r_star;
  double r0 = cfg.init_r0 > 0.0 ? cfg.init_r0 : std::min(0.1, 0.1 * r_target);
  r0 = std::min(r0, r_target);

  const auto cands = overhead_candidates(s, r0);
  const auto best = best_candidate(cands);
  if (!best) {
    std::ostringstream os;
    os << "infeasible: no over-user position supports the starting rate " << r0;
    throw InfeasibleError(os.str(), 0.0);
  }
  UavPosition q = cands[*best].position;

  const double step = (r_target - r0) / cfg.ramp_steps;
  for (int i = 1; i < cfg.ramp_steps; ++i) {
    const Scenario tmp = s.with_r_star(r0 + i * step);
    const auto st = start_at(tmp, q);
    if (!st) continue;
    try {
      const ScaRun run = run_penalty_sca(tmp, anchor_for(tmp, *st, cfg.lambda0), cfg);
      q = run.final_state.q;
    } catch (const SolverError&) {
      q = st->q;
    }
  }

  const auto st = start_at(s, q);
  if (!st) {
    const FeasibilityReport rep = feasibility(gains(s, q), s.p_max, r_target);
    std::ostringstream os;
    os << "infeasible: QoS power recursion exceeds p_max at every start point (r_star = "
       << r_target << ", margin = " << rep.margin << " W)";
    throw InfeasibleError(os.str(), rep.margin);
  }
  return anchor_for(s, *st, cfg.lambda0);
}

ScaRun solve_njdp_detailed(const Scenario& s, const ScaConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  ScaRun run;
  ScaState init;
  try {
    init = initialize(s, cfg);
  } catch (const InfeasibleError& e) {
    run.result = infeasible_result(s, "njdp", e.what());
    run.note = e.what();
    run.result.wall_time = elapsed();
    return run;
  }

  try {
    run = run_penalty_sca(s, init, cfg);
  } catch (const SolverError& e) {
    run = ScaRun{};
    run.final_state = init;
    run.note = std::string("unconverged: ") + e.what();
  }

  const ScaState& fin = run.final_state;
  run.rounded_order = round_order(s, fin);
  const ChannelGains g = gains(s, fin.q);
  PowerAllocation p{fin.p};
  for (double& w : p.watts) w = std::max(w, 0.0);
  std::vector<double> rates = user_rates(g, run.rounded_order, p);
  const bool short_rate =
      std::any_of(rates.begin(), rates.end(), [&](double r) { return r < s.r_star - 1e-6; });
  std::string note = run.note;
  if (short_rate && feasibility(g, s.p_max, s.r_star).feasible) {
    p = closed_form_power(g, s.p_max, s.r_star);
    run.rounded_order = decoding_order(s, fin.q);
    rates = user_rates(g, run.rounded_order, p);
    note += note.empty() ? "" : "; ";
    note += "powers re-derived in closed form after rounding the decoding order";
  }

  SolveResult& res = run.result;
  res.scheme = "njdp";
  res.r_star = s.r_star;
  res.p_max = s.p_max;
  res.position = fin.q;
  res.powers = p;
  res.rates = rates;
  res.sum_rate = sum_rate(g, p);
  res.jain = jain_index(rates);
  res.feasible = true;
  res.converged = run.converged;
  res.iterations = run.subproblems;
  res.note = note;
  res.wall_time = elapsed();
  return run;
}

SolveResult solve_njdp(const Scenario& s, const ScaConfig& cfg) {
  return solve_njdp_detailed(s, cfg).result;
}

}  // namespace uavnoma::sca
