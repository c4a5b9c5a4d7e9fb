#include "saa/rocket.hpp"

#include <cmath>
#include <stdexcept>

namespace saa {

namespace {

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

BrownianPath path_from_scenario(const RocketParams& params, const Scenario& w) {
  BrownianPath path;
  path.dim = 7;
  path.steps = params.intervals * params.substeps;
  path.dt = params.horizon / path.steps;
  path.increments = w;
  if (static_cast<int>(w.size()) != path.steps * path.dim)
    throw std::invalid_argument("rocket scenario has wrong size");
  return path;
}

}  // namespace

SdeModel make_rocket_model(const RocketParams& params, bool stochastic) {
  SdeModel model;
  model.state_dim = 7;
  model.control_dim = 3;
  model.x0 = params.x0;
  model.horizon = params.horizon;
  const double thrust = params.thrust_scale;
  const Eigen::Vector3d gravity = params.gravity;
  const double mass_flow = params.mass_flow;
  const double drag = params.drag;
  model.drift = [thrust, gravity, mass_flow, drag](const Eigen::VectorXd& x,
                                                   const Eigen::VectorXd& u) {
    const Eigen::Vector3d v = x.segment<3>(3);
    const double m = x[6];
    Eigen::VectorXd dx(7);
    dx.segment<3>(0) = v;
    dx.segment<3>(3) =
        (thrust * u - drag * v.cwiseAbs().cwiseProduct(v)) / m - gravity;
    dx[6] = -mass_flow * u.norm();
    return dx;
  };
  const double eta0 = stochastic ? params.noise0 : 0.0;
  const double eta1 = stochastic ? params.noise1 : 0.0;
  model.diffusion = [eta0, eta1](const Eigen::VectorXd& x, const Eigen::VectorXd&) {
    const Eigen::Vector3d v = x.segment<3>(3);
    const double m = x[6];
    Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(7, 7);
    for (int j = 0; j < 3; ++j)
      sigma(3 + j, 3 + j) = (eta0 + eta1 * v[j] * v[j]) / m;
    return sigma;
  };
  return model;
}

OcpFunctionals rocket_functionals(const RocketParams& params) {
  const double tan_psi = std::tan(params.glide_slope_deg * kDegToRad);
  const Eigen::VectorXd goal = params.goal;
  OcpFunctionals fns;
  fns.running_cost = [](const Eigen::VectorXd&, const Eigen::VectorXd& u) {
    return u.norm();
  };
  fns.terminal_constraint = [goal](const Eigen::VectorXd& x) {
    return (x.head<6>() - goal).eval();
  };
  fns.terminal_dim = 6;
  fns.terminal_cost = [goal](const Eigen::VectorXd& x) {
    return (x.head<6>() - goal).squaredNorm();
  };
  fns.path_constraint = [tan_psi](const Eigen::VectorXd& x) {
    Eigen::VectorXd g(4);
    g << tan_psi * x[0] - x[2], tan_psi * x[1] - x[2], -tan_psi * x[0] - x[2],
        -tan_psi * x[1] - x[2];
    return g;
  };
  fns.path_dim = 4;
  return fns;
}

DomainSpec rocket_domain(const RocketParams& params) {
  const int S = params.intervals;
  const int d = 3 * S;
  Eigen::VectorXd lo(d), hi(d);
  for (int s = 0; s < S; ++s) {
    lo[3 * s + 0] = -params.thrust_max;
    lo[3 * s + 1] = -params.thrust_max;
    lo[3 * s + 2] = 0.0;  // the pointing cone forces u_z > 0
    hi.segment<3>(3 * s).setConstant(params.thrust_max);
  }
  DomainSpec domain(lo, hi);
  const double cos_theta = std::cos(params.pointing_deg * kDegToRad);
  for (int s = 0; s < S; ++s) {
    const std::vector<int> block = {3 * s, 3 * s + 1, 3 * s + 2};
    domain.add_soc({block, 1.0, {}, params.thrust_max});
    domain.add_soc({block, cos_theta, {{3 * s + 2, 1.0}}, 0.0});
    domain.add_norm_lower({block, params.thrust_min});
  }
  return domain;
}

bool control_in_set(const RocketParams& params, const ControlTrajectory& u,
                    double tol) {
  const double cos_theta = std::cos(params.pointing_deg * kDegToRad);
  for (int s = 0; s < u.intervals(); ++s) {
    const Eigen::Vector3d row = u.values.row(s).transpose();
    const double nrm = row.norm();
    if (nrm < params.thrust_min - tol || nrm > params.thrust_max + tol) return false;
    if (cos_theta * nrm - row[2] > tol) return false;
  }
  return true;
}

ControlTrajectory rocket_initial_control(const RocketParams& params) {
  ControlTrajectory u;
  u.horizon = params.horizon;
  u.values = Eigen::MatrixXd::Zero(params.intervals, 3);
  u.values.col(2).setConstant(0.5 * (params.thrust_min + params.thrust_max));
  return u;
}

std::vector<ControlTrajectory> rocket_start_controls(const RocketParams& params) {
  std::vector<ControlTrajectory> starts;
  starts.push_back(rocket_initial_control(params));
  const double burn = 0.975 * params.thrust_max;
  for (int fraction : {5, 3}) {  // braking burn over the first 1/5 and 1/3
    ControlTrajectory brake = rocket_initial_control(params);
    for (int s = 0; s < params.intervals / fraction; ++s)
      brake.values.row(s) = Eigen::RowVector3d(0.0, 0.0, burn);
    starts.push_back(brake);
  }
  ControlTrajectory ramp = rocket_initial_control(params);
  for (int s = 0; s < params.intervals; ++s) {
    const double frac = params.intervals > 1
                            ? static_cast<double>(s) / (params.intervals - 1)
                            : 0.0;
    ramp.values.row(s) = Eigen::RowVector3d(0.0, 0.0, burn - 0.5 * frac * burn);
  }
  starts.push_back(ramp);
  return starts;
}

std::shared_ptr<const StochasticProgram> make_rocket_program(
    const RocketParams& params, bool stochastic) {
  const SdeModel model = make_rocket_model(params, stochastic);
  const OcpFunctionals fns = rocket_functionals(params);
  const RocketParams p = params;
  auto values = [model, fns, p](const Eigen::VectorXd& flat, const Scenario& w) {
    const ControlTrajectory u =
        ControlTrajectory::from_flat(flat, p.intervals, 3, p.horizon);
    return ocp_functionals(model, fns, u, path_from_scenario(p, w));
  };
  const int steps = params.intervals * params.substeps;
  const double dt = params.horizon / steps;
  auto program = std::make_shared<StochasticProgram>(StochasticProgram{
      rocket_domain(params),
      [values](const Eigen::VectorXd& u, const Scenario& w) { return values(u, w).f; },
      [values](const Eigen::VectorXd& u, const Scenario& w) { return values(u, w).g; },
      4,
      [values](const Eigen::VectorXd& u, const Scenario& w) { return values(u, w).h; },
      6,
      [steps, dt](const SeedSpec& seed, std::uint64_t index) {
        return draw_brownian(seed, index, 7, steps, dt).increments;
      },
      {}, {},
      [values](const Eigen::VectorXd& u, const Scenario& w) {
        const FunctionalValues v = values(u, w);
        return FghValues{v.f, v.g, v.h};
      }});
  return program;
}

SampledProgram sample_rocket_program(const RocketParams& params, std::int64_t N,
                                     const SeedSpec& seed, bool stochastic) {
  return SampledProgram::draw(make_rocket_program(params, stochastic), seed, N,
                              params.delta, /*relax_inequalities=*/true);
}

Eigen::MatrixXd rocket_nominal_trajectory(const RocketParams& params,
                                          const ControlTrajectory& u) {
  const SdeModel model = make_rocket_model(params, /*stochastic=*/false);
  const int steps = params.intervals * params.substeps;
  BrownianPath zero;
  zero.dim = 7;
  zero.steps = steps;
  zero.dt = params.horizon / steps;
  zero.increments.assign(static_cast<std::size_t>(steps) * 7, 0.0);
  return rollout(model, u, zero);
}

}  // namespace saa
