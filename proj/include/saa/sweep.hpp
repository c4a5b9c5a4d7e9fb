#pragma once

#include <optional>
#include <vector>

#include "saa/grid.hpp"
#include "saa/program.hpp"
#include "saa/set_distance.hpp"
#include "saa/solver.hpp"

namespace saa {

struct ConvergenceRecord {
  std::int64_t N = 0;
  double delta = 0.0;
  bool feasible = false;
  double opt_value = 0.0;
  std::optional<double> d_lower;      // D(C_N, C_0)
  std::optional<double> d_upper;      // D(C_0, C_N)
  std::optional<double> d_hausdorff;  // max of the two when both finite
  std::optional<double> sol_dist;     // D(S_N^*, S_0^*)
  bool solver_ok = true;
  double grid_floor = 0.0;            // O(spacing) resolution floor, reported alongside
};

struct SweepOptions {
  ScpConfig scp;
  int starts = 4;
  double c0_threshold = 0.0;  // 0 -> grid.spacing_norm()
};

// For each N: builds SP_N with delta_N on stream_id = N, computes the level
// sets C_N and C_0 on the grid, their one-sided and Hausdorff distances,
// solves SP_N by multi-start SCP, and measures D(S_N^*, S_0^*) against the
// caller's reference solution set. Solver failures flag the record instead of
// aborting the sweep.
std::vector<ConvergenceRecord> convergence_sweep(
    std::shared_ptr<const StochasticProgram> program,
    const RelaxationSchedule& schedule, const GridSet& grid,
    const std::vector<std::int64_t>& Ns, const SeedSpec& seed,
    const PointCloud& reference_solutions, const SweepOptions& options = {});

}  // namespace saa
