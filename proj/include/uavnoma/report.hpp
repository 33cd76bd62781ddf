#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "uavnoma/baselines.hpp"
#include "uavnoma/result.hpp"
#include "uavnoma/sca.hpp"
#include "uavnoma/scenario.hpp"

namespace uavnoma {

/// Runs one scheme by name (njdp, nlc, nfdp, fdma, oracle). Infeasibility is
/// returned as a flagged result; unknown names throw ValidationError.
SolveResult run_scheme(const Scenario& s, const std::string& scheme, const sca::ScaConfig& cfg,
                       const SearchGrid& grid);

struct SweepResult {
  SweepSpec spec;
  std::vector<double> axis;
  /// Axis-major: every scheme of spec.schemes (in order) for axis[0], then axis[1], ...
  std::vector<SolveResult> rows;

  const SolveResult& at(std::size_t axis_index, std::size_t scheme_index) const {
    return rows[axis_index * spec.schemes.size() + scheme_index];
  }
};

/// Overrides the swept field of `s` at every axis value and runs each scheme.
/// The grid box is kept; per-point failures become infeasible rows.
SweepResult run_sweep(const Scenario& s, const SweepSpec& spec, const sca::ScaConfig& cfg,
                      const SearchGrid& grid);

/// Trend checks on NOMA columns with 1e-9 slack: sum rate non-increasing in
/// r_star, non-decreasing in p_max. One message per violation.
std::vector<std::string> check_trends(const SweepResult& r);

std::string csv_header(std::size_t users);
/// wall_time_s is written as 0 unless `timing` is set, so output is reproducible.
std::string csv_row(const SolveResult& r, bool timing = false);
void write_csv(std::ostream& os, std::size_t users, const std::vector<SolveResult>& rows, bool timing = false);
void emit_csv(const std::filesystem::path& path, std::size_t users, const std::vector<SolveResult>& rows,
              bool timing = false);

void write_trace_csv(std::ostream& os, const std::vector<sca::TraceRow>& trace);

/// 12 significant digits.
std::string format_real(double v);

}  // namespace uavnoma
