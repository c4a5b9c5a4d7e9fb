#include <doctest.h>

#include <cmath>
#include <memory>

#include "saa/problems.hpp"
#include "saa/solver.hpp"

using namespace saa;

namespace {

Eigen::VectorXd scalar(double v) {
  Eigen::VectorXd u(1);
  u << v;
  return u;
}

std::shared_ptr<const StochasticProgram> quadratic_program(const Eigen::VectorXd& c) {
  const int d = static_cast<int>(c.size());
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(d, -2.0);
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(d, 2.0);
  return std::make_shared<StochasticProgram>(StochasticProgram{
      DomainSpec(lo, hi),
      [c](const Eigen::VectorXd& u, const Scenario&) { return (u - c).squaredNorm(); },
      {}, 0, {}, 0,
      [](const SeedSpec& seed, std::uint64_t i) {
        return Scenario{draw_uniform(seed, i, -1.0, 1.0)};
      },
      {}, {}});
}

}  // namespace

TEST_CASE("unconstrained quadratic lands on the center") {
  const Eigen::VectorXd c = (Eigen::VectorXd(2) << 0.3, -0.8).finished();
  const auto sp = SampledProgram::draw(quadratic_program(c), SeedSpec{1, 0}, 4, 0.0);
  const SolveReport report = solve(sp, ScpConfig{}, Eigen::VectorXd::Zero(2));
  REQUIRE(report.status == SolveStatus::Optimal);
  CHECK((report.u_star - c).norm() < 1e-5);
  CHECK(report.value < 1e-9);
}

TEST_CASE("accepted merit values never increase") {
  const Eigen::VectorXd c = (Eigen::VectorXd(2) << -1.1, 0.4).finished();
  const auto sp = SampledProgram::draw(quadratic_program(c), SeedSpec{2, 0}, 4, 0.0);
  const SolveReport report = solve(sp, ScpConfig{}, Eigen::VectorXd::Zero(2));
  REQUIRE(!report.starts.empty());
  double last = std::numeric_limits<double>::infinity();
  for (const auto& rec : report.starts[0].trace) {
    if (!rec.accepted) continue;
    CHECK(rec.merit <= last + 1e-9 * std::max(1.0, std::abs(last)));
    last = rec.merit;
  }
}

TEST_CASE("rejected steps shrink the trust region by the configured factor") {
  // |u| cost stalls near the kink, forcing rejections
  const auto sp = SampledProgram::draw(make_problem("p2"), SeedSpec{3, 0}, 100,
                                       RelaxationSchedule(1.0, 0.1).delta_at(100));
  ScpConfig cfg;
  const SolveReport report = solve(sp, cfg, scalar(0.9));
  REQUIRE(!report.starts.empty());
  const auto& trace = report.starts[0].trace;
  bool saw_reject = false;
  for (std::size_t i = 0; i + 1 < trace.size(); ++i) {
    if (!trace[i].accepted) {
      saw_reject = true;
      CHECK(trace[i + 1].trust_radius ==
            doctest::Approx(trace[i].trust_radius * cfg.trust_shrink).epsilon(1e-12));
    }
  }
  CHECK(saw_reject);
}

TEST_CASE("optimal reports satisfy the residual contract on replay") {
  const auto sp = SampledProgram::draw(make_problem("p2"), SeedSpec{4, 0}, 1000,
                                       RelaxationSchedule(1.0, 0.1).delta_at(1000));
  ScpConfig cfg;
  const SolveReport report = solve_multistart(sp, cfg, 4, SeedSpec{4, 1});
  REQUIRE(report.status == SolveStatus::Optimal);
  const Residuals r = sp.residuals(report.u_star);
  CHECK(r.in_domain);
  CHECK(r.eq_violation <= cfg.tol_feas);
  CHECK(r.ineq_violation <= cfg.tol_feas);
  CHECK(report.eq_residual <= sp.delta() + cfg.tol_feas);
}

TEST_CASE("p2 solutions match the closed form across seeds") {
  const RelaxationSchedule sched(1.0, 0.1);
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const std::int64_t N = 1000;
    const double delta = sched.delta_at(N);
    const auto oracle = solve_counterexample("p2", N, delta, SeedSpec{seed, 0});
    const auto sp = SampledProgram::draw(make_problem("p2"), SeedSpec{seed, 0}, N, delta);
    const SolveReport report = solve_multistart(sp, ScpConfig{}, 6, SeedSpec{seed, 1});
    REQUIRE(oracle.feasible);  // delta at N=1000 is ~0.063, infeasibility is rare
    REQUIRE(report.status == SolveStatus::Optimal);
    CHECK(std::abs(std::abs(report.u_star[0]) - *oracle.u_star) < 2e-3);
  }
}

TEST_CASE("r51 relaxed problem reaches past the corner") {
  const std::int64_t N = 100;
  const double delta = RelaxationSchedule(1.0, 0.1).delta_at(N);
  const auto sp = SampledProgram::draw(make_problem("r51"), SeedSpec{5, 0}, N, delta,
                                       /*relax_inequalities=*/true);
  const SolveReport report = solve_multistart(sp, ScpConfig{}, 6, SeedSpec{5, 1});
  REQUIRE(report.status == SolveStatus::Optimal);
  CHECK(report.u_star[0] <= -1.0 + std::sqrt(delta) + 1e-3);
  CHECK(std::abs(report.u_star[1]) <= delta + 1e-6);
}

TEST_CASE("fd gradient is self-consistent") {
  const Eigen::VectorXd c = (Eigen::VectorXd(2) << 0.2, 0.6).finished();
  const auto sp = SampledProgram::draw(quadratic_program(c), SeedSpec{6, 0}, 16, 0.0);
  const double fd_rel = 1e-5;
  for (int k = 0; k < 10; ++k) {
    Eigen::VectorXd u(2);
    u << draw_uniform(SeedSpec{60, 0}, k, -1.5, 1.5),
        draw_uniform(SeedSpec{61, 0}, k, -1.5, 1.5);
    const Eigen::VectorXd grad = fd_gradient(sp, u, fd_rel);
    // independent central-difference oracle at half the step
    Eigen::VectorXd oracle(2);
    const Eigen::VectorXd widths = sp.domain().upper() - sp.domain().lower();
    for (int i = 0; i < 2; ++i) {
      const double fd = 0.5 * fd_rel * widths[i];
      Eigen::VectorXd up = u, dn = u;
      up[i] += fd;
      dn[i] -= fd;
      oracle[i] = (sp.empirical_cost(up) - sp.empirical_cost(dn)) / (2.0 * fd);
    }
    CHECK((grad - oracle).norm() <=
          1e-4 * std::max(1.0, oracle.norm()));
  }
}

TEST_CASE("estimate_solution_set clusters") {
  // convex instance: exactly one cluster
  const Eigen::VectorXd c = (Eigen::VectorXd(1) << 0.4).finished();
  const auto sp = SampledProgram::draw(quadratic_program(c), SeedSpec{7, 0}, 4, 0.0);
  const PointCloud cloud = estimate_solution_set(sp, ScpConfig{}, 5, SeedSpec{7, 1});
  CHECK(cloud.size() == 1);
  CHECK(std::abs(cloud[0][0] - 0.4) < 1e-4);
}

TEST_CASE("twomode optima sit near the two limit modes") {
  const std::int64_t N = 10000;
  const double delta = RelaxationSchedule(1.0, 0.1).delta_at(N);
  const auto sp = SampledProgram::draw(make_problem("twomode"), SeedSpec{8, 0}, N, delta);
  const PointCloud cloud = estimate_solution_set(sp, ScpConfig{}, 8, SeedSpec{8, 1});
  REQUIRE(cloud.size() >= 1);
  CHECK(cloud.size() <= 2);
  for (const auto& p : cloud)
    CHECK(std::abs(std::abs(p[0]) - 0.5) < 0.05);
}

TEST_CASE("single start reduces to solve") {
  const Eigen::VectorXd c = (Eigen::VectorXd(1) << -0.2).finished();
  const auto sp = SampledProgram::draw(quadratic_program(c), SeedSpec{9, 0}, 4, 0.0);
  const auto starts = lattice_starts(sp.domain(), 1, SeedSpec{9, 1});
  const SolveReport direct = solve(sp, ScpConfig{}, starts[0]);
  const SolveReport multi = solve_multistart(sp, ScpConfig{}, 1, SeedSpec{9, 1});
  CHECK(direct.u_star == multi.u_star);
  CHECK(direct.value == multi.value);
}

TEST_CASE("counterexample closed forms") {
  // p1 with delta 0 is infeasible for every continuous draw
  for (std::uint64_t s = 0; s < 50; ++s)
    CHECK_FALSE(solve_counterexample("p1", 10, 0.0, SeedSpec{0, s}).feasible);
  // p2 with delta 0 is feasible iff the sample mean is nonpositive
  int feasible = 0;
  const int trials = 4000;
  for (std::uint64_t s = 0; s < trials; ++s)
    feasible += solve_counterexample("p2", 100, 0.0, SeedSpec{1, s}).feasible;
  const double frac = static_cast<double>(feasible) / trials;
  CHECK(frac > 0.47);
  CHECK(frac < 0.53);
  // relaxed p2 at N=100: minimizer formula
  const auto r = solve_counterexample("p2", 100, 0.5, SeedSpec{2, 0});
  REQUIRE(r.feasible);
  if (std::abs(r.sample_mean) <= 0.5)
    CHECK(*r.u_star == 0.0);
  else
    CHECK(*r.u_star == std::sqrt(-r.sample_mean - 0.5));
}
