#include "saa/sde.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "saa/numeric.hpp"
#include "saa/threading.hpp"

namespace saa {

Eigen::VectorXd ControlTrajectory::flatten() const {
  Eigen::VectorXd flat(values.size());
  for (int s = 0; s < intervals(); ++s)
    flat.segment(static_cast<Eigen::Index>(s) * control_dim(), control_dim()) =
        values.row(s).transpose();
  return flat;
}

ControlTrajectory ControlTrajectory::from_flat(const Eigen::VectorXd& flat,
                                               int intervals, int control_dim,
                                               double horizon) {
  if (flat.size() != static_cast<Eigen::Index>(intervals) * control_dim)
    throw std::invalid_argument("ControlTrajectory::from_flat: size mismatch");
  ControlTrajectory u;
  u.horizon = horizon;
  u.values.resize(intervals, control_dim);
  for (int s = 0; s < intervals; ++s)
    u.values.row(s) =
        flat.segment(static_cast<Eigen::Index>(s) * control_dim, control_dim).transpose();
  return u;
}

double ControlTrajectory::l2_distance(const ControlTrajectory& a,
                                      const ControlTrajectory& b) {
  if (a.values.rows() != b.values.rows() || a.values.cols() != b.values.cols())
    throw std::invalid_argument("l2_distance: control grids differ");
  const double dt = a.horizon / a.intervals();
  return std::sqrt(dt) * (a.values - b.values).norm();
}

Eigen::MatrixXd rollout(const SdeModel& model, const ControlTrajectory& u,
                        const BrownianPath& path) {
  if (path.dim != model.state_dim)
    throw std::invalid_argument("rollout: path dimension must equal the state dimension");
  if (u.intervals() < 1 || path.steps % u.intervals() != 0)
    throw std::invalid_argument("rollout: path steps must be a multiple of the control intervals");
  const int substeps = path.steps / u.intervals();
  const double dt = model.horizon / path.steps;
  Eigen::MatrixXd states(path.steps + 1, model.state_dim);
  states.row(0) = model.x0.transpose();
  Eigen::VectorXd x = model.x0;
  for (int k = 0; k < path.steps; ++k) {
    const Eigen::VectorXd uk = u.at_step(k, substeps);
    x += model.drift(x, uk) * dt + model.diffusion(x, uk) * path.increment_vec(k);
    if (!x.allFinite())
      throw std::runtime_error("rollout: non-finite state at step " + std::to_string(k + 1));
    states.row(k + 1) = x.transpose();
  }
  return states;
}

FunctionalValues ocp_functionals(const SdeModel& model, const OcpFunctionals& fns,
                                 const ControlTrajectory& u,
                                 const BrownianPath& path) {
  const Eigen::MatrixXd states = rollout(model, u, path);
  const int substeps = path.steps / u.intervals();
  const double dt = model.horizon / path.steps;
  FunctionalValues out;
  double running = 0.0;
  if (fns.running_cost) {
    for (int k = 0; k < path.steps; ++k)
      running += fns.running_cost(states.row(k).transpose(), u.at_step(k, substeps)) * dt;
  }
  out.f = running;
  if (fns.terminal_cost) out.f += fns.terminal_cost(states.row(path.steps).transpose());
  if (fns.path_dim > 0) {
    out.g = Eigen::VectorXd::Constant(fns.path_dim,
                                      -std::numeric_limits<double>::infinity());
    for (int k = 0; k <= path.steps; ++k) {
      const Eigen::VectorXd gk = fns.path_constraint(states.row(k).transpose());
      out.g = out.g.cwiseMax(gk);
    }
  }
  if (fns.terminal_dim > 0)
    out.h = fns.terminal_constraint(states.row(path.steps).transpose());
  return out;
}

McReport mc_validate(const SdeModel& model, const ControlTrajectory& u,
                     const OcpFunctionals& fns, int M, const SeedSpec& seed,
                     int substeps) {
  if (M < 1) throw std::invalid_argument("mc_validate: M >= 1 required");
  if (fns.terminal_dim < 1)
    throw std::invalid_argument("mc_validate: a terminal constraint H is required");
  const int steps = u.intervals() * substeps;
  const double dt = model.horizon / steps;
  const int nh = fns.terminal_dim;

  Eigen::MatrixXd h_samples(nh, M);
  Eigen::MatrixXd x_samples(model.state_dim, M);
  std::vector<char> ok(static_cast<std::size_t>(M), 0);
  parallel_for(static_cast<std::size_t>(M), [&](std::size_t i) {
    const BrownianPath path =
        draw_brownian(seed, static_cast<std::uint64_t>(i), model.state_dim, steps, dt);
    try {
      const Eigen::MatrixXd states = rollout(model, u, path);
      const Eigen::VectorXd xT = states.row(steps).transpose();
      h_samples.col(static_cast<Eigen::Index>(i)) = fns.terminal_constraint(xT);
      x_samples.col(static_cast<Eigen::Index>(i)) = xT;
      ok[i] = 1;
    } catch (const std::runtime_error&) {
      ok[i] = 0;
    }
  });

  McReport report;
  report.samples = M;
  std::vector<Eigen::Index> kept;
  for (int i = 0; i < M; ++i) {
    if (ok[static_cast<std::size_t>(i)])
      kept.push_back(i);
    else
      ++report.blowups;
  }
  if (report.blowups > M / 100)
    throw std::runtime_error("mc_validate: more than 1% of rollouts blew up (" +
                             std::to_string(report.blowups) + "/" + std::to_string(M) + ")");
  const Eigen::Index K = static_cast<Eigen::Index>(kept.size());
  Eigen::MatrixXd H(nh, K), X(model.state_dim, K);
  for (Eigen::Index j = 0; j < K; ++j) {
    H.col(j) = h_samples.col(kept[static_cast<std::size_t>(j)]);
    X.col(j) = x_samples.col(kept[static_cast<std::size_t>(j)]);
  }
  report.mean_h = pairwise_sum_columns(H) / static_cast<double>(K);
  report.final_state_mean = pairwise_sum_columns(X) / static_cast<double>(K);
  Eigen::MatrixXd centered = H.colwise() - report.mean_h;
  Eigen::MatrixXd sq = centered.cwiseProduct(centered);
  const double denom = K > 1 ? static_cast<double>(K - 1) : 1.0;
  const Eigen::VectorXd var = pairwise_sum_columns(sq) / denom;
  report.std_h = var.cwiseSqrt();
  report.trace_cov = var.sum();
  Eigen::MatrixXd sq_raw = H.cwiseProduct(H);
  report.mean_sq_terminal =
      pairwise_sum_columns(sq_raw).sum() / static_cast<double>(K);
  return report;
}

HolderEstimate estimate_holder(
    const SdeModel& model,
    const std::vector<std::pair<ControlTrajectory, ControlTrajectory>>& pairs,
    int M, const SeedSpec& seed, int substeps) {
  if (pairs.empty()) throw std::invalid_argument("estimate_holder: no control pairs");
  if (M < 1) throw std::invalid_argument("estimate_holder: M >= 1 required");

  std::vector<double> dists;
  dists.reserve(pairs.size());
  for (const auto& [a, b] : pairs)
    dists.push_back(ControlTrajectory::l2_distance(a, b));
  const double d_min = *std::min_element(dists.begin(), dists.end());
  const double d_max = *std::max_element(dists.begin(), dists.end());
  if (!(d_min > 0.0) || d_max / d_min < 10.0)
    throw std::invalid_argument(
        "estimate_holder: control distances must be positive and span a decade");

  const int steps = pairs.front().first.intervals() * substeps;
  const double dt = model.horizon / steps;

  // One regression sample per (pair, shared path).
  const std::size_t total = pairs.size() * static_cast<std::size_t>(M);
  std::vector<double> log_dist(total), log_err(total);
  parallel_for(total, [&](std::size_t idx) {
    const std::size_t p = idx / static_cast<std::size_t>(M);
    const std::size_t path_index = idx % static_cast<std::size_t>(M);
    const BrownianPath path = draw_brownian(seed, path_index, model.state_dim,
                                            steps, dt);
    const Eigen::MatrixXd xa = rollout(model, pairs[p].first, path);
    const Eigen::MatrixXd xb = rollout(model, pairs[p].second, path);
    double sup = 0.0;
    for (int k = 0; k <= steps; ++k)
      sup = std::max(sup, (xa.row(k) - xb.row(k)).norm());
    log_dist[idx] = std::log(dists[p]);
    log_err[idx] = std::log(std::max(sup, 1e-300));
  });

  double mean_x = pairwise_sum(log_dist) / static_cast<double>(total);
  double mean_y = pairwise_sum(log_err) / static_cast<double>(total);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < total; ++i) {
    sxx += (log_dist[i] - mean_x) * (log_dist[i] - mean_x);
    sxy += (log_dist[i] - mean_x) * (log_err[i] - mean_y);
  }
  if (sxx < 1e-12)
    throw std::runtime_error("estimate_holder: degenerate regression (equal distances)");
  HolderEstimate est;
  est.alpha_hat = sxy / sxx;
  est.samples = static_cast<int>(total);
  std::vector<double> pref_sq(total);
  for (std::size_t i = 0; i < total; ++i) {
    const double c = std::exp(log_err[i] - est.alpha_hat * log_dist[i]);
    pref_sq[i] = c * c;
  }
  est.c2_hat = pairwise_sum(pref_sq) / static_cast<double>(total);
  return est;
}

}  // namespace saa
