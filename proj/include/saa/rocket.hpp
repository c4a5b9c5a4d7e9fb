#pragma once

#include <memory>

#include "saa/program.hpp"
#include "saa/sde.hpp"

namespace saa {

// Mars powered-descent model. State x = (r, v, m) in R^7, control u in R^3.
struct RocketParams {
  double horizon = 60.0;          // s
  double thrust_scale = 16e3;     // T-bar
  Eigen::Vector3d gravity{0.0, 0.0, 3.71};
  double mass_flow = 8.0;         // rho
  double drag = 1.0;              // gamma
  double noise0 = 10.0;           // eta_0
  double noise1 = 0.2;            // eta_1
  Eigen::VectorXd x0 = (Eigen::VectorXd(7) << 300, 0, 1500, 5, 0, -75, 1800).finished();
  Eigen::VectorXd goal = (Eigen::VectorXd(6) << 0, 0, 100, 0, 0, -10).finished();
  double glide_slope_deg = 35.0;  // psi
  double thrust_min = 0.3;
  double thrust_max = 0.8;
  double pointing_deg = 45.0;     // theta
  int intervals = 20;             // S
  int sample_size = 20;           // N
  double delta = 1e-5;
  int substeps = 1;               // rollout grid refinement per control interval
};

SdeModel make_rocket_model(const RocketParams& params, bool stochastic);

// ell = ||u||, phi = ||H||^2, G = glide-slope rows at slope psi, H = (r,v) - goal.
OcpFunctionals rocket_functionals(const RocketParams& params);

// Control set U per interval: thrust_min <= ||u_s|| <= thrust_max and the
// pointing cone cos(theta)||u_s|| <= u_sz; assembled over all S intervals.
DomainSpec rocket_domain(const RocketParams& params);

bool control_in_set(const RocketParams& params, const ControlTrajectory& u,
                    double tol = 1e-9);

// Feasible constant start: straight-up thrust at mid magnitude.
ControlTrajectory rocket_initial_control(const RocketParams& params);

// Structured start profiles for the nonconvex descent problem: hover,
// early-braking burns, and a ramp-down. All rows satisfy U. The velocity-
// dependent diffusion rewards killing speed early, which lives in a different
// basin than the fuel-optimal hover start.
std::vector<ControlTrajectory> rocket_start_controls(const RocketParams& params);

// The sampled 3S-variable program over N Brownian scenarios; stochastic=false
// zeroes the diffusion so every scenario produces identical values.
std::shared_ptr<const StochasticProgram> make_rocket_program(
    const RocketParams& params, bool stochastic);

SampledProgram sample_rocket_program(const RocketParams& params, std::int64_t N,
                                     const SeedSpec& seed, bool stochastic);

// Zero-noise rollout of a control, for trajectory output.
Eigen::MatrixXd rocket_nominal_trajectory(const RocketParams& params,
                                          const ControlTrajectory& u);

}  // namespace saa
