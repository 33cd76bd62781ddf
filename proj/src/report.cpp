#include "uavnoma/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "uavnoma/errors.hpp"
#include "uavnoma/lowcx.hpp"

namespace uavnoma {

namespace {

bool is_noma(const std::string& scheme) { return scheme != "fdma"; }

}  // namespace

SolveResult run_scheme(const Scenario& s, const std::string& scheme, const sca::ScaConfig& cfg,
                       const SearchGrid& grid) {
  try {
    if (scheme == "njdp") return sca::solve_njdp(s, cfg);
    if (scheme == "nlc") return solve_lowcx(s);
    if (scheme == "nfdp") return solve_nfdp(s);
    if (scheme == "fdma") return solve_fdma(s, grid);
    if (scheme == "oracle") return grid_oracle(s, grid);
  } catch (const InfeasibleError& e) {
    return infeasible_result(s, scheme, e.what());
  }
  throw ValidationError("unknown scheme '" + scheme + "' (expected njdp, nlc, nfdp, fdma or oracle)");
}

SweepResult run_sweep(const Scenario& s, const SweepSpec& spec, const sca::ScaConfig& cfg,
                      const SearchGrid& grid) {
  validate(spec);
  SweepResult out;
  out.spec = spec;
  out.axis = spec.axis();
  for (double v : out.axis) {
    const Scenario point = spec.variable == SweepVariable::r_star ? s.with_r_star(v) : s.with_p_max(v);
    for (const auto& scheme : spec.schemes) {
      try {
        out.rows.push_back(run_scheme(point, scheme, cfg, grid));
      } catch (const SolverError& e) {
        SolveResult r = infeasible_result(point, scheme, std::string("solver failure: ") + e.what());
        r.converged = false;
        out.rows.push_back(std::move(r));
      }
    }
  }
  return out;
}

std::vector<std::string> check_trends(const SweepResult& r) {
  std::vector<std::string> issues;
  const bool decreasing = r.spec.variable == SweepVariable::r_star;
  for (std::size_t k = 0; k < r.spec.schemes.size(); ++k) {
    const std::string& scheme = r.spec.schemes[k];
    if (!is_noma(scheme)) continue;
    const SolveResult* prev = nullptr;
    for (std::size_t a = 0; a < r.axis.size(); ++a) {
      const SolveResult& cur = r.at(a, k);
      if (!cur.feasible) continue;
      if (prev) {
        const bool bad = decreasing ? cur.sum_rate > prev->sum_rate + 1e-9 : cur.sum_rate < prev->sum_rate - 1e-9;
        if (bad) {
          std::ostringstream os;
          os << scheme << ": sum rate " << (decreasing ? "increases" : "decreases") << " from "
             << format_real(prev->sum_rate) << " to " << format_real(cur.sum_rate) << " at "
             << (decreasing ? "r_star" : "p_max") << " = " << format_real(r.axis[a]);
          issues.push_back(os.str());
        }
      }
      prev = &cur;
    }
  }
  return issues;
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::string csv_header(std::size_t users) {
  std::ostringstream os;
  os << "scheme,r_star,p_max,pos_x,pos_y";
  for (std::size_t i = 1; i <= users; ++i) os << ",p_" << i;
  for (std::size_t i = 1; i <= users; ++i) os << ",r_" << i;
  os << ",sum_rate,jain,feasible,converged,iterations,wall_time_s";
  return os.str();
}

std::string csv_row(const SolveResult& r, bool timing) {
  std::ostringstream os;
  os << r.scheme << ',' << format_real(r.r_star) << ',' << format_real(r.p_max) << ','
     << format_real(r.position.x) << ',' << format_real(r.position.y);
  for (double p : r.powers.watts) os << ',' << format_real(p);
  for (double x : r.rates) os << ',' << format_real(x);
  os << ',' << format_real(r.sum_rate) << ',' << format_real(r.jain) << ',' << (r.feasible ? 1 : 0) << ','
     << (r.converged ? 1 : 0) << ',' << r.iterations << ',' << format_real(timing ? r.wall_time : 0.0);
  return os.str();
}

void write_csv(std::ostream& os, std::size_t users, const std::vector<SolveResult>& rows, bool timing) {
  os << csv_header(users) << '\n';
  for (const auto& r : rows) os << csv_row(r, timing) << '\n';
}

void emit_csv(const std::filesystem::path& path, std::size_t users, const std::vector<SolveResult>& rows,
              bool timing) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_csv(f, users, rows, timing);
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

void write_trace_csv(std::ostream& os, const std::vector<sca::TraceRow>& trace) {
  os << "outer_idx,inner_idx,lambda,objective,max_phi,q_x,q_y\n";
  for (const auto& t : trace) {
    os << t.outer << ',' << t.inner << ',' << format_real(t.lambda) << ',' << format_real(t.objective) << ','
       << format_real(t.max_phi) << ',' << format_real(t.q_x) << ',' << format_real(t.q_y) << '\n';
  }
}

}  // namespace uavnoma
