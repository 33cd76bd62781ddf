#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "uavnoma/barrier.hpp"
#include "uavnoma/channel.hpp"
#include "uavnoma/result.hpp"
#include "uavnoma/scenario.hpp"

namespace uavnoma::sca {

/// Full variable set of the relaxed joint deployment/power problem.
///
/// Matrices are M x M row-major. alpha is the relaxed decoding order,
/// y_ij bounds user j's interference at user i, phi_ij the binariness
/// penalty slack. s bounds the squared distance from below, z and v are the
/// log signal and log interference-plus-noise levels, u the rate epigraph.
struct ScaState {
  std::size_t m = 0;
  UavPosition q;
  std::vector<double> alpha;
  std::vector<double> p;
  std::vector<double> s;
  std::vector<double> u;
  std::vector<double> v;
  std::vector<double> y;
  std::vector<double> z;
  std::vector<double> phi;
  double lambda = 0.1;

  ScaState() = default;
  explicit ScaState(std::size_t users);

  double& alpha_at(std::size_t i, std::size_t j) { return alpha[i * m + j]; }
  double alpha_at(std::size_t i, std::size_t j) const { return alpha[i * m + j]; }
  double& y_at(std::size_t i, std::size_t j) { return y[i * m + j]; }
  double y_at(std::size_t i, std::size_t j) const { return y[i * m + j]; }
  double& phi_at(std::size_t i, std::size_t j) { return phi[i * m + j]; }
  double phi_at(std::size_t i, std::size_t j) const { return phi[i * m + j]; }

  double max_phi() const;
  /// max over i != j of min(alpha_ij, 1 - alpha_ij).
  double max_alpha_gap() const;
  /// sum u - lambda * sum phi.
  double objective() const;
};

/// Penalty/SCA schedule. Defaults: lambda0 0.1, c 10, eps1 1e-4, eps2 1e-3,
/// n0 2, 100 inner and 30 outer iterations; initialization ramp from
/// r0 = min(0.1, 0.1 r*) in 10 steps.
struct ScaConfig {
  double lambda0 = 0.1;
  double c = 10.0;
  double eps1 = 1e-4;
  double eps2 = 1e-3;
  int n0 = 2;
  int max_inner = 100;
  int max_outer = 30;
  double init_r0 = 0.0;  ///< <= 0 selects min(0.1, 0.1 r*)
  int ramp_steps = 10;
  convex::Settings solver;

  void validate() const;
};

/// x -> a x + b.
struct Affine1 {
  double slope = 0.0;
  double intercept = 0.0;
  double operator()(double x) const { return slope * x + intercept; }
};

/// First-order expansion of x^2 at xbar (a global under-estimator).
Affine1 taylor_square(double xbar);
/// First-order expansion of e^v at vbar (a global under-estimator).
Affine1 taylor_exp(double vbar);

/// Constraint families of the convexified subproblem.
enum class Kind {
  qos_floor,           // u_i >= r*
  power_nonneg,        // P_i >= 0
  power_budget,        // sum P <= p_max
  alpha_box,           // 0 <= alpha_ij <= 1 (free entries only)
  penalty_nonneg,      // 0 <= phi_ij <= 1
  interference_nonneg, // y_ij >= 0
  area_box,            // Q inside the search area
  binary_relax,        // alpha - tangent(alpha^2) <= phi
  order,               // linearized decoding-order/distance coupling
  rate,                // u_i <= tangent of log2(1 + e^{z-v})
  signal,              // (H^2 + |Q - q_i|^2) / (gamma0 P_i) <= tangent of e^{-z}
  distance,            // s_i <= tangent of H^2 + |Q - q_i|^2
  interference,        // 1 + sum_j y_ij <= tangent of e^{v_i}
  product,             // difference-of-squares form of gamma0 alpha_ij P_j / s_j <= y_ij
};
constexpr std::size_t kKindCount = 14;
const char* kind_name(Kind k);

struct SubproblemOptions {
  /// Hold alpha (and phi) at the anchor; used to validate the solver on a
  /// fixed decoding order.
  bool freeze_alpha = false;
};

/// Convex restriction of the relaxed problem around an anchor point.
class ConvexSubproblem {
 public:
  ConvexSubproblem(const Scenario& scenario, const ScaState& anchor, SubproblemOptions options);

  const Scenario& scenario() const { return scenario_; }
  const ScaState& anchor() const { return anchor_; }
  const convex::Problem& problem() const { return problem_; }
  bool alpha_frozen() const { return options_.freeze_alpha; }

  Eigen::VectorXd pack(const ScaState& st) const;
  ScaState unpack(const Eigen::VectorXd& x) const;

  /// sum u - lambda sum phi at `st` (the quantity being maximized).
  double objective(const ScaState& st) const;
  std::size_t count(Kind k) const;
  /// Largest normalized constraint value at `st` (<= 0 means feasible).
  double max_violation(const ScaState& st) const;
  double max_violation(const ScaState& st, Kind k) const;

 private:
  void build();
  // alpha_ij as (variable index or -1, sign, offset): alpha = sign * x[idx] + offset.
  struct AlphaRef {
    int index = -1;
    double sign = 0.0;
    double offset = 0.0;
  };
  AlphaRef alpha_ref(std::size_t i, std::size_t j) const;
  int pair_index(std::size_t i, std::size_t j) const;  // ordered pair i != j

  Scenario scenario_;
  ScaState anchor_;
  SubproblemOptions options_;
  convex::Problem problem_;
  // layout
  int idx_q_ = 0;
  int idx_a_ = 2;
  int idx_p_ = 0, idx_s_ = 0, idx_u_ = 0, idx_v_ = 0, idx_z_ = 0, idx_y_ = 0, idx_phi_ = 0;
};

/// Throws ValidationError unless `anchor` satisfies the original (unconvexified)
/// constraints within 1e-6, which makes it feasible for its own subproblem.
ConvexSubproblem build_subproblem(const Scenario& scenario, const ScaState& anchor,
                                  SubproblemOptions options = {});

/// Normalized violation of the original constraints (<= 0 when all hold).
double original_violation(const Scenario& scenario, const ScaState& st);

struct SubproblemSolution {
  ScaState state;
  double objective = 0.0;
  int newton_iterations = 0;
  bool kept_anchor = false;  ///< the solver point did not beat the anchor
};

/// Interior-point solve. Never returns an objective below the anchor's.
SubproblemSolution solve_subproblem(const ConvexSubproblem& sub, const convex::Settings& settings = {});

/// Anchor where every auxiliary constraint holds with equality for the given
/// position, powers and binary decoding order; phi = 0.
ScaState equality_anchor(const Scenario& s, const UavPosition& q, const PowerAllocation& p,
                         const DecodingOrder& order, double lambda);

/// Initialization ramp: best over-user position at a small QoS rate, then
/// repeated penalty-SCA solves while the rate is raised towards r*.
/// Throws InfeasibleError when no start point can be found.
ScaState initialize(const Scenario& s, const ScaConfig& cfg);

struct TraceRow {
  int outer = 0;
  int inner = 0;  ///< 0 is the anchor that opens the inner loop
  double lambda = 0.0;
  double objective = 0.0;
  double max_phi = 0.0;
  double q_x = 0.0;
  double q_y = 0.0;
};

struct ScaRun {
  SolveResult result;
  ScaState final_state;
  DecodingOrder rounded_order{0};
  std::vector<TraceRow> trace;
  bool converged = false;
  int subproblems = 0;
  int outer_loops = 0;
  std::string note;
};

/// Penalty + SCA double loop from `anchor` on scenario `s`.
ScaRun run_penalty_sca(const Scenario& s, ScaState anchor, const ScaConfig& cfg);

/// Initialization followed by the penalty + SCA loop at the scenario's r*.
ScaRun solve_njdp_detailed(const Scenario& s, const ScaConfig& cfg = {});
SolveResult solve_njdp(const Scenario& s, const ScaConfig& cfg = {});

}  // namespace uavnoma::sca
