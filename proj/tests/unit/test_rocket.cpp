#include <doctest.h>

#include <cmath>

#include "saa/rocket.hpp"

using namespace saa;

TEST_CASE("max-thrust burn drains the closed-form mass") {
  RocketParams params;
  ControlTrajectory u;
  u.horizon = params.horizon;
  u.values = Eigen::MatrixXd::Zero(params.intervals, 3);
  u.values.col(2).setConstant(0.8);
  const Eigen::MatrixXd traj = rocket_nominal_trajectory(params, u);
  // m(T) = 1800 - rho * 0.8 * 60 = 1416
  CHECK(traj(params.intervals, 6) == doctest::Approx(1416.0).epsilon(1e-12));
}

TEST_CASE("glide-slope rows at the goal hover point") {
  RocketParams params;
  const OcpFunctionals fns = rocket_functionals(params);
  Eigen::VectorXd x(7);
  x << 0, 0, 100, 0, 0, 0, 1700;
  const Eigen::VectorXd g = fns.path_constraint(x);
  REQUIRE(g.size() == 4);
  for (int j = 0; j < 4; ++j) CHECK(g[j] == doctest::Approx(-100.0).epsilon(1e-12));
}

TEST_CASE("zero-noise functionals match an independent integrator") {
  RocketParams params;
  params.intervals = 10;
  const ControlTrajectory u = rocket_initial_control(params);
  const SdeModel model = make_rocket_model(params, false);

  // independent fixed-step Euler oracle, written out longhand
  const int steps = params.intervals * params.substeps;
  const double dt = params.horizon / steps;
  Eigen::VectorXd x = params.x0;
  const double tbar = params.thrust_scale;
  for (int k = 0; k < steps; ++k) {
    const Eigen::Vector3d uc = u.values.row(k / params.substeps).transpose();
    const Eigen::Vector3d r = x.segment<3>(0), v = x.segment<3>(3);
    const double m = x[6];
    Eigen::VectorXd next(7);
    next.segment<3>(0) = r + dt * v;
    Eigen::Vector3d drag;
    for (int j = 0; j < 3; ++j) drag[j] = params.drag * std::abs(v[j]) * v[j];
    next.segment<3>(3) = v + dt * ((tbar * uc - drag) / m - params.gravity);
    next[6] = m - dt * params.mass_flow * uc.norm();
    x = next;
  }

  const OcpFunctionals fns = rocket_functionals(params);
  BrownianPath zero;
  zero.dim = 7;
  zero.steps = steps;
  zero.dt = dt;
  zero.increments.assign(static_cast<std::size_t>(steps) * 7, 0.0);
  const FunctionalValues vals = ocp_functionals(model, fns, u, zero);
  const Eigen::VectorXd h_oracle = x.head<6>() - params.goal;
  CHECK((vals.h - h_oracle).norm() < 1e-9);
}

TEST_CASE("deterministic rocket program is scenario-independent") {
  RocketParams params;
  params.intervals = 5;
  const SampledProgram sp = sample_rocket_program(params, 4, SeedSpec{0, 0}, false);
  const Eigen::VectorXd u = rocket_initial_control(params).flatten();
  const double f = sp.empirical_cost(u);
  // with zero diffusion every scenario must produce the same value
  for (const auto& scenario : sp.scenarios()) {
    const double fi = sp.base().f(u, scenario);
    CHECK(fi == f);
  }
}

TEST_CASE("control membership matches the domain test") {
  RocketParams params;
  params.intervals = 3;
  const DomainSpec domain = rocket_domain(params);
  ControlTrajectory u = rocket_initial_control(params);
  CHECK(control_in_set(params, u));
  CHECK(domain.contains(u.flatten()));

  u.values(1, 2) = 0.1;  // below min thrust
  CHECK_FALSE(control_in_set(params, u));
  CHECK_FALSE(domain.contains(u.flatten()));

  u.values(1, 2) = 0.5;
  u.values(1, 0) = 0.55;  // ||u|| = 0.743, cos(45)*||u|| = 0.525 > u_z
  CHECK_FALSE(control_in_set(params, u));
  CHECK_FALSE(domain.contains(u.flatten()));

  u.values(1, 0) = 0.9;  // above max thrust
  CHECK_FALSE(control_in_set(params, u));
  CHECK_FALSE(domain.contains(u.flatten()));
}

TEST_CASE("stochastic scenarios spread the terminal state") {
  RocketParams params;
  params.intervals = 5;
  const SampledProgram sp = sample_rocket_program(params, 6, SeedSpec{1, 0}, true);
  const Eigen::VectorXd u = rocket_initial_control(params).flatten();
  const Eigen::VectorXd h0 = sp.base().h(u, sp.scenarios()[0]);
  const Eigen::VectorXd h1 = sp.base().h(u, sp.scenarios()[1]);
  CHECK((h0 - h1).norm() > 0.0);
}
