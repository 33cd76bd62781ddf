#pragma once

#include <functional>
#include <optional>

#include "uavnoma/channel.hpp"
#include "uavnoma/result.hpp"
#include "uavnoma/scenario.hpp"

namespace uavnoma {

/// Coarse grid over `box`, then compass/diagonal pattern search from the best
/// grid point. The refinement starts at coarse_step / 2 and halves the step
/// refine_iters times (10 rounds reach ~4 mm from a 4 m grid).
struct SearchGrid {
  Box box;
  double coarse_step = 4.0;
  int refine_iters = 10;

  void validate() const;
};

/// Grid over the scenario's search area with default spacing.
SearchGrid default_grid(const Scenario& s);

/// Exhaustive position search for NOMA with closed-form powers at each point.
SolveResult grid_oracle(const Scenario& s, const SearchGrid& grid);

/// UAV fixed above the users' centroid, closed-form powers.
SolveResult solve_nfdp(const Scenario& s);

/// Maximizes sum (1/M) log2(1 + M P_i h_i) over sum P = p_max with P_i at
/// least its QoS floor (2^{M r} - 1) / (M h_i). Throws InfeasibleError when
/// the floors alone exceed the budget.
PowerAllocation waterfill_floors(const ChannelGains& g, double p_max, double r_star);

/// Per-user FDMA rates (1/M) log2(1 + M P_i h_i).
std::vector<double> fdma_rates(const ChannelGains& g, const PowerAllocation& p);

/// Equal-bandwidth FDMA with water-filled powers and a searched position.
SolveResult solve_fdma(const Scenario& s, const SearchGrid& grid);

/// Result of maximizing a position score over a grid.
struct PositionSearch {
  std::optional<UavPosition> best;
  double score = 0.0;
  long evaluations = 0;
};

/// `score` returns nothing where the point is infeasible. Grid ties go to the
/// smallest (x, y); refinement only accepts strict improvements.
PositionSearch search_positions(const SearchGrid& grid,
                                const std::function<std::optional<double>(const UavPosition&)>& score);

}  // namespace uavnoma
