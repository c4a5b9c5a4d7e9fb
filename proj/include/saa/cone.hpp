#pragma once

#include <Eigen/Core>
#include <vector>

namespace saa {

// Conic linear program in the form
//   minimize    c'x
//   subject to  A x + s = b,   s in K,
// where K stacks n_pos nonnegative rows first (slack of a'x <= b) and then
// second-order cones of the listed sizes, each block ordered (t, v) with
// t >= ||v||_2.
struct ConeProblem {
  Eigen::VectorXd c;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  int n_pos = 0;
  std::vector<int> soc_dims;

  int vars() const { return static_cast<int>(c.size()); }
  int rows() const { return static_cast<int>(b.size()); }
};

struct ConeSettings {
  double eps_prim = 1e-8;    // unscaled infinity-norm primal tolerance
  double eps_dual = 1e-6;    // unscaled infinity-norm dual tolerance
  double eps_rel = 1e-12;
  int max_iters = 4000;
  int check_every = 25;
  double rho = 1.0;
  double sigma = 1e-6;       // proximal regularization on x
  double alpha = 1.6;        // over-relaxation
  bool adaptive_rho = true;
  int ruiz_iters = 15;
};

struct ConeResult {
  Eigen::VectorXd x, s, y;
  double objective = 0.0;
  double prim_res = 0.0;
  double dual_res = 0.0;
  int iters = 0;
  bool converged = false;
};

// ADMM over the split (x, s) with Ruiz equilibration, over-relaxation, and
// OSQP-style adaptive rho. Residuals are measured in unscaled units.
ConeResult solve_cone(const ConeProblem& problem, const ConeSettings& settings,
                      const ConeResult* warm_start = nullptr);

}  // namespace saa
