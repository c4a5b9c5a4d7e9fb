#include "saa/sweep.hpp"

#include <stdexcept>

namespace saa {

std::vector<ConvergenceRecord> convergence_sweep(
    std::shared_ptr<const StochasticProgram> program,
    const RelaxationSchedule& schedule, const GridSet& grid,
    const std::vector<std::int64_t>& Ns, const SeedSpec& seed,
    const PointCloud& reference_solutions, const SweepOptions& options) {
  if (!program) throw std::invalid_argument("convergence_sweep: null program");
  if (!program->has_h())
    throw std::invalid_argument("convergence_sweep: program has no equality rows");
  if (!program->h0)
    throw std::invalid_argument(
        "convergence_sweep: the level-set reference C_0 needs a closed-form h0");
  for (std::size_t i = 1; i < Ns.size(); ++i)
    if (Ns[i] <= Ns[i - 1])
      throw std::invalid_argument("convergence_sweep: Ns must be strictly increasing");

  const double tau0 =
      options.c0_threshold > 0.0 ? options.c0_threshold : grid.spacing_norm();
  const GridSet c0 = level_set(program->h0, tau0, grid);
  const double grid_floor = tau0 + grid.spacing_norm();
  const auto c0_points = c0.points();

  std::vector<ConvergenceRecord> records;
  records.reserve(Ns.size());
  for (std::int64_t N : Ns) {
    ConvergenceRecord rec;
    rec.N = N;
    rec.delta = schedule.delta_at(N);
    rec.grid_floor = grid_floor;
    const SampledProgram sp = SampledProgram::draw(
        program, seed.with_stream(static_cast<std::uint64_t>(N)), N, rec.delta);
    const GridSet cN = level_set(
        [&sp](const Eigen::VectorXd& u) { return sp.empirical_equality(u); },
        rec.delta, grid);
    const auto cN_points = cN.points();
    rec.d_lower = dist_lower(cN_points, c0_points);
    rec.d_upper = dist_lower(c0_points, cN_points);
    if (rec.d_lower && rec.d_upper)
      rec.d_hausdorff = std::max(*rec.d_lower, *rec.d_upper);

    try {
      const SolveReport report = solve_multistart(
          sp, options.scp, options.starts,
          seed.with_stream(static_cast<std::uint64_t>(N) ^ 0x5157454550ULL));
      rec.feasible = report.status == SolveStatus::Optimal ||
                     report.status == SolveStatus::MaxIters;
      rec.opt_value = report.value;
      if (report.status == SolveStatus::Optimal) {
        const PointCloud sol_set = {report.u_star};
        rec.sol_dist = dist_lower(sol_set, reference_solutions);
      }
    } catch (const std::exception&) {
      rec.solver_ok = false;
    }
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace saa
