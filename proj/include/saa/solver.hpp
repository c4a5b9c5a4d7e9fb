#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "saa/cone.hpp"
#include "saa/program.hpp"
#include "saa/set_distance.hpp"

namespace saa {

struct ScpConfig {
  int max_iters = 100;             // per penalty round
  double trust_radius_init = 0.0;  // 0 -> 0.5 * max box width
  double trust_shrink = 0.5;
  double trust_expand = 1.5;
  double constraint_penalty = 1e3;
  int penalty_rounds = 3;          // x10 growth between rounds
  double fd_step_rel = 1e-5;       // central-difference step, x per-axis box width
  double tol_opt = 1e-6;
  double tol_feas = 1e-7;
  int max_starts = 16;
  ConeSettings cone;
};

enum class SolveStatus { Optimal, Infeasible, MaxIters, NumericalFailure };

const char* to_string(SolveStatus s);

struct IterRecord {
  bool accepted = false;
  double merit = 0.0;
  double trust_radius = 0.0;
  double step_norm = 0.0;
};

struct StartSummary {
  Eigen::VectorXd x0;
  SolveStatus status = SolveStatus::NumericalFailure;
  Eigen::VectorXd u;
  double value = 0.0;
  double eq_residual = 0.0;    // ||h_N(u)||_2
  double ineq_residual = 0.0;  // max(0, max_j g_Nj(u) - relax)
  int iters = 0;
  std::vector<IterRecord> trace;
};

struct SolveReport {
  SolveStatus status = SolveStatus::NumericalFailure;
  Eigen::VectorXd u_star;
  double value = 0.0;
  double eq_residual = 0.0;
  double ineq_residual = 0.0;
  int iters = 0;
  std::vector<StartSummary> starts;
};

// Central finite-difference gradient of the empirical cost; step per axis is
// fd_step_rel times the box width. The same routine feeds the SCP models.
Eigen::VectorXd fd_gradient(const SampledProgram& sp, const Eigen::VectorXd& u,
                            double fd_step_rel);

// Sequential convex programming with an linf trust region, exact-penalty
// slacks, and the operator-splitting cone solver for the subproblems.
// x0 must satisfy the domain membership test.
SolveReport solve(const SampledProgram& sp, const ScpConfig& cfg,
                  const Eigen::VectorXd& x0);

// Runs `starts` SCP solves from a shifted Kronecker low-discrepancy lattice
// over the box, filtered by domain membership; returns the best report with
// all per-start summaries in start order.
SolveReport solve_multistart(const SampledProgram& sp, const ScpConfig& cfg,
                             int starts, const SeedSpec& seed);

// Same merge over an explicit list of start points.
SolveReport solve_multistart(const SampledProgram& sp, const ScpConfig& cfg,
                             const std::vector<Eigen::VectorXd>& start_points);

// Start points used by solve_multistart.
std::vector<Eigen::VectorXd> lattice_starts(const DomainSpec& domain, int count,
                                            const SeedSpec& seed);

// Distinct optima from multi-start: clusters of radius tol_opt whose values
// lie within tol_opt of the best; representatives sorted lexicographically.
PointCloud estimate_solution_set(const SampledProgram& sp, const ScpConfig& cfg,
                                 int starts, const SeedSpec& seed);

struct CounterexampleResult {
  bool feasible = false;
  std::optional<double> u_star;
  double sample_mean = 0.0;
  double delta = 0.0;
};

// Closed forms for the two ill-posed equality examples ("p1", "p2") at
// relaxation delta: p1 is feasible iff sqrt(2)|mean| <= delta, p2 iff
// mean <= delta.
CounterexampleResult solve_counterexample(const std::string& which, std::int64_t N,
                                          double delta, const SeedSpec& seed);

}  // namespace saa
