#pragma once

#include <Eigen/Core>
#include <functional>
#include <utility>
#include <vector>

#include "saa/program.hpp"
#include "saa/sampling.hpp"

namespace saa {

// Piecewise-constant control: u(t) = values.row(s) on [s T/S, (s+1) T/S).
struct ControlTrajectory {
  double horizon = 0.0;
  Eigen::MatrixXd values;  // S x m

  int intervals() const { return static_cast<int>(values.rows()); }
  int control_dim() const { return static_cast<int>(values.cols()); }

  // Control on rollout step k of a grid with substeps per interval.
  Eigen::VectorXd at_step(int k, int substeps) const {
    const int s = std::min(k / substeps, intervals() - 1);
    return values.row(s).transpose();
  }

  Eigen::VectorXd flatten() const;
  static ControlTrajectory from_flat(const Eigen::VectorXd& flat, int intervals,
                                     int control_dim, double horizon);

  // L2([0,T]) norm of the piecewise-constant signal difference.
  static double l2_distance(const ControlTrajectory& a, const ControlTrajectory& b);
};

struct SdeModel {
  int state_dim = 0;
  int control_dim = 0;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&)> drift;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&, const Eigen::VectorXd&)> diffusion;
  Eigen::VectorXd x0;
  double horizon = 0.0;
  double lipschitz_hint = 0.0;
};

// Euler-Maruyama over the path grid: x_{k+1} = x_k + b dt + sigma dW_k.
// Returns (steps+1) x n states, row 0 = x0. path.steps must be a multiple of
// the control intervals. Throws with the step index if the state blows up.
Eigen::MatrixXd rollout(const SdeModel& model, const ControlTrajectory& u,
                        const BrownianPath& path);

struct OcpFunctionals {
  std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)> running_cost;
  std::function<double(const Eigen::VectorXd&)> terminal_cost;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> path_constraint;      // G
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> terminal_constraint;  // H
  int path_dim = 0;
  int terminal_dim = 0;
};

struct FunctionalValues {
  double f = 0.0;
  Eigen::VectorXd g;  // max over grid nodes of G components
  Eigen::VectorXd h;  // H at the terminal state
};

// f collects the running cost by left-endpoint quadrature plus the terminal
// cost; g_j is the max of G_j over all grid nodes; h = H(x_K).
FunctionalValues ocp_functionals(const SdeModel& model, const OcpFunctionals& fns,
                                 const ControlTrajectory& u, const BrownianPath& path);

struct McReport {
  Eigen::VectorXd mean_h;
  Eigen::VectorXd std_h;            // per-component standard deviation of H
  double trace_cov = 0.0;           // sum of Var(H_j), the Trace(Cov) identity route
  double mean_sq_terminal = 0.0;    // mean ||H||^2, the E[phi] route
  Eigen::VectorXd final_state_mean;
  int blowups = 0;
  int samples = 0;
};

// Fresh out-of-sample rollouts on the given seed stream. Blow-ups are counted
// and skipped; more than 1% of M aborts with an error.
McReport mc_validate(const SdeModel& model, const ControlTrajectory& u,
                     const OcpFunctionals& fns, int M, const SeedSpec& seed,
                     int substeps = 1);

struct HolderEstimate {
  double alpha_hat = 0.0;
  double c2_hat = 0.0;  // second moment of the per-path prefactor
  int samples = 0;
};

// Common-random-number regression of log sup-path-error against
// log ||u - v||_{L2}: M shared Brownian paths per control pair, least-squares
// slope alpha_hat. Pairs must span at least one decade of control distances.
HolderEstimate estimate_holder(const SdeModel& model,
                               const std::vector<std::pair<ControlTrajectory, ControlTrajectory>>& pairs,
                               int M, const SeedSpec& seed, int substeps = 1);

}  // namespace saa
