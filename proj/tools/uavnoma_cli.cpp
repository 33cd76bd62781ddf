#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uavnoma/baselines.hpp"
#include "uavnoma/errors.hpp"
#include "uavnoma/power.hpp"
#include "uavnoma/report.hpp"
#include "uavnoma/sca.hpp"
#include "uavnoma/scenario.hpp"

using namespace uavnoma;

namespace {

enum Exit { kOk = 0, kInfeasible = 1, kUsage = 2, kUnconverged = 3 };

struct Common {
  std::string scenario;
  std::string out;
  double r_star = 0.0;
  double p_max = 0.0;
  sca::ScaConfig cfg;
  double grid_step = 4.0;
  int refine_iters = 10;
  bool timing = false;
};

void add_scenario_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--scenario", c.scenario, "scenario JSON file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--r-star", c.r_star, "override the QoS rate (bits/s/Hz)")->check(CLI::PositiveNumber);
  cmd->add_option("--p-max", c.p_max, "override the power budget (W)")->check(CLI::PositiveNumber);
}

void add_solver_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--lambda0", c.cfg.lambda0, "initial penalty weight")->capture_default_str();
  cmd->add_option("--c", c.cfg.c, "penalty growth factor")->capture_default_str();
  cmd->add_option("--eps1", c.cfg.eps1, "inner-loop fractional-increase tolerance")->capture_default_str();
  cmd->add_option("--eps2", c.cfg.eps2, "penalty tolerance on max phi")->capture_default_str();
  cmd->add_option("--n0", c.cfg.n0, "clean outer passes before stopping")->capture_default_str();
  cmd->add_option("--max-inner", c.cfg.max_inner)->capture_default_str();
  cmd->add_option("--max-outer", c.cfg.max_outer)->capture_default_str();
  cmd->add_option("--grid-step", c.grid_step, "coarse grid spacing (m) for oracle and fdma")->capture_default_str();
  cmd->add_option("--refine-iters", c.refine_iters, "pattern-search halvings after the grid")
      ->capture_default_str();
}

Scenario load(const Common& c) {
  Scenario s = load_scenario(c.scenario);
  if (c.r_star > 0.0) s = s.with_r_star(c.r_star);
  if (c.p_max > 0.0) s = s.with_p_max(c.p_max);
  return s;
}

SearchGrid grid_for(const Scenario& s, const Common& c) {
  SearchGrid g = default_grid(s);
  g.coarse_step = c.grid_step;
  g.refine_iters = c.refine_iters;
  g.validate();
  return g;
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
}

void print_summary(const SolveResult& r) {
  std::cout << "scheme      " << r.scheme << '\n';
  std::cout << "r_star      " << format_real(r.r_star) << " bits/s/Hz, p_max " << format_real(r.p_max) << " W\n";
  if (!r.feasible) {
    std::cout << "status      infeasible\n";
    if (!r.note.empty()) std::cout << "reason      " << r.note << '\n';
    return;
  }
  std::cout << "position    (" << format_real(r.position.x) << ", " << format_real(r.position.y) << ") m\n";
  std::cout << "powers W   ";
  for (double p : r.powers.watts) std::cout << ' ' << format_real(p);
  std::cout << "\nrates      ";
  for (double x : r.rates) std::cout << ' ' << format_real(x);
  std::cout << "\nsum rate    " << format_real(r.sum_rate) << " bits/s/Hz\n";
  std::cout << "jain        " << format_real(r.jain) << '\n';
  std::cout << "iterations  " << r.iterations << (r.converged ? "" : " (not converged)") << '\n';
  if (!r.note.empty()) std::cout << "note        " << r.note << '\n';
}

int cmd_solve(const Common& c, const std::string& scheme) {
  const Scenario s = load(c);
  c.cfg.validate();
  const SolveResult r = run_scheme(s, scheme, c.cfg, grid_for(s, c));
  print_summary(r);
  if (!c.out.empty()) emit_csv(c.out, s.size(), {r}, c.timing);
  if (!r.feasible) return kInfeasible;
  return r.converged ? kOk : kUnconverged;
}

int cmd_sweep(const Common& c, const std::string& var, double from, double to, double step,
              const std::vector<std::string>& schemes) {
  const Scenario s = load(c);
  c.cfg.validate();
  SweepSpec spec;
  if (var == "r_star") {
    spec.variable = SweepVariable::r_star;
  } else if (var == "p_max") {
    spec.variable = SweepVariable::p_max;
  } else {
    throw ValidationError("--var must be r_star or p_max");
  }
  spec.start = from;
  spec.stop = to;
  spec.step = step;
  spec.schemes = schemes;
  validate(spec);
  const SweepResult r = run_sweep(s, spec, c.cfg, grid_for(s, c));
  std::ostringstream csv;
  write_csv(csv, s.size(), r.rows, c.timing);
  write_or_print(c.out, csv.str());
  std::size_t infeasible = 0;
  for (const auto& row : r.rows) infeasible += row.feasible ? 0 : 1;
  if (!c.out.empty()) {
    std::cout << r.rows.size() << " rows (" << infeasible << " infeasible) written to " << c.out << '\n';
  }
  for (const auto& issue : check_trends(r)) std::cerr << "trend warning: " << issue << '\n';
  return kOk;
}

int cmd_feasibility(const Common& c) {
  const Scenario s = load(c);
  const RStarReport rep = r_star_candidates(s);
  for (std::size_t i = 0; i < rep.per_user.size(); ++i) {
    std::cout << "user " << i + 1 << " (" << format_real(s.users[i].x) << ", " << format_real(s.users[i].y)
              << ")  r* = " << format_real(rep.per_user[i]) << '\n';
  }
  std::cout << "R* = " << format_real(rep.r_star) << " (above user " << rep.best_user + 1 << ")\n";
  std::cout << "scenario r_star " << format_real(s.r_star)
            << (s.r_star <= rep.r_star ? " is within R*" : " exceeds R*") << '\n';
  return kOk;
}

int cmd_gen(std::uint64_t seed, std::size_t m, const std::vector<double>& area, const std::string& out) {
  const Box box{area[0], area[1], area[2], area[3]};
  const Scenario s = generate_scenario(seed, m, box);
  write_or_print(out, scenario_to_json(s));
  return kOk;
}

int cmd_trace(const Common& c) {
  const Scenario s = load(c);
  const sca::ScaRun run = sca::solve_njdp_detailed(s, c.cfg);
  std::ostringstream csv;
  write_trace_csv(csv, run.trace);
  write_or_print(c.out, csv.str());
  if (!run.result.feasible) {
    std::cerr << run.result.note << '\n';
    return kInfeasible;
  }
  if (!c.out.empty()) {
    std::cout << run.trace.size() << " trace rows written to " << c.out << "; sum rate "
              << format_real(run.result.sum_rate) << '\n';
  }
  return run.result.converged ? kOk : kUnconverged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UAV uplink NOMA deployment and power planner"};
  app.require_subcommand(1);

  Common solve_c, sweep_c, feas_c, trace_c;
  std::string scheme;
  auto* solve = app.add_subcommand("solve", "run one scheme on a scenario");
  add_scenario_flags(solve, solve_c);
  add_solver_flags(solve, solve_c);
  solve->add_option("--scheme", scheme, "njdp, nlc, nfdp, fdma or oracle")
      ->required()
      ->check(CLI::IsMember({"njdp", "nlc", "nfdp", "fdma", "oracle"}));
  solve->add_option("--out", solve_c.out, "CSV output path");
  solve->add_flag("--timing", solve_c.timing, "write measured wall time to the CSV");

  std::string var;
  double from = 0.0, to = 0.0, step = 0.0;
  std::vector<std::string> schemes;
  auto* sweep = app.add_subcommand("sweep", "sweep r_star or p_max over several schemes");
  add_scenario_flags(sweep, sweep_c);
  add_solver_flags(sweep, sweep_c);
  sweep->add_option("--var", var, "r_star or p_max")->required()->check(CLI::IsMember({"r_star", "p_max"}));
  sweep->add_option("--from", from)->required();
  sweep->add_option("--to", to)->required();
  sweep->add_option("--step", step)->required();
  sweep->add_option("--schemes", schemes, "comma-separated scheme list")
      ->required()
      ->delimiter(',')
      ->check(CLI::IsMember({"njdp", "nlc", "nfdp", "fdma", "oracle"}));
  sweep->add_option("--out", sweep_c.out, "CSV output path (stdout if omitted)");
  sweep->add_flag("--timing", sweep_c.timing, "write measured wall times to the CSV");

  auto* feas = app.add_subcommand("feasibility", "print the largest supportable QoS rate above each user");
  add_scenario_flags(feas, feas_c);

  std::uint64_t seed = 1;
  std::size_t m = 4;
  std::vector<double> area{0.0, 0.0, 400.0, 400.0};
  std::string gen_out;
  auto* gen = app.add_subcommand("gen-scenario", "write a random scenario as JSON");
  gen->add_option("--seed", seed)->capture_default_str();
  gen->add_option("--m", m, "number of users")->capture_default_str();
  gen->add_option("--area", area, "xmin,ymin,xmax,ymax")->delimiter(',')->expected(4)->capture_default_str();
  gen->add_option("--out", gen_out, "output path (stdout if omitted)");

  auto* trace = app.add_subcommand("trace", "njdp per-iteration CSV");
  add_scenario_flags(trace, trace_c);
  add_solver_flags(trace, trace_c);
  trace->add_option("--out", trace_c.out, "CSV output path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve) return cmd_solve(solve_c, scheme);
    if (*sweep) return cmd_sweep(sweep_c, var, from, to, step, schemes);
    if (*feas) return cmd_feasibility(feas_c);
    if (*gen) return cmd_gen(seed, m, area, gen_out);
    if (*trace) return cmd_trace(trace_c);
  } catch (const InfeasibleError& e) {
    std::cerr << e.what() << '\n';
    return kInfeasible;
  } catch (const SolverError& e) {
    std::cerr << "solver: " << e.what() << '\n';
    return kUnconverged;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
