#include <doctest.h>

#include <cmath>

#include "saa/concentration.hpp"
#include "saa/problems.hpp"

using namespace saa;

namespace {

HolderData sin3_holder() {
  // h(u,w) = sin(3u) w on [-1,1], w ~ U[-1,1]:
  // alpha = 1, M(w) = 3|w| so E[M^2] = 3, h_bar = 1, Sigma_0 at the center
  // u0 = 0 vanishes, D = 2.
  HolderData h;
  h.alpha = 1.0;
  h.m2 = 3.0;
  h.h_bar = 1.0;
  h.trace_sigma0 = 0.0;
  h.domain_dim = 1;
  h.output_dim = 1;
  h.diameter = 2.0;
  return h;
}

}  // namespace

TEST_CASE("dudley_constant worked examples") {
  CHECK(dudley_constant({1.0, 0.0, 0.0, 4.0, 1, 1, 2.0}) == 2.0);
  CHECK(dudley_constant({1.0, 1.0, 0.0, 0.0, 1, 1, 1.0}) == 256.0);
  CHECK(dudley_constant({0.5, 0.25, 0.0, 1.0, 3, 2, 2.0}) ==
        doctest::Approx(1492.4307226848975).epsilon(1e-13));
}

TEST_CASE("dudley_constant monotonicity") {
  const HolderData base{0.7, 0.5, 1.0, 0.25, 2, 3, 1.5};
  const double ref = dudley_constant(base);
  auto bump = [&](auto set) {
    HolderData h = base;
    set(h);
    return dudley_constant(h);
  };
  CHECK(bump([](HolderData& h) { h.diameter = 2.0; }) >= ref);
  CHECK(bump([](HolderData& h) { h.domain_dim = 3; }) >= ref);
  CHECK(bump([](HolderData& h) { h.output_dim = 4; }) >= ref);
  CHECK(bump([](HolderData& h) { h.m2 = 1.0; }) >= ref);
  CHECK(bump([](HolderData& h) { h.trace_sigma0 = 1.0; }) >= ref);
  CHECK(bump([](HolderData& h) { h.alpha = 1.0; }) <= ref);
}

TEST_CASE("eps/beta sequences collapse at N=1 and obey the identity") {
  const auto profile = ConcentrationProfile::make(sin3_holder(), 0.2);
  const auto [eps1, beta1] = eps_beta_sequences(profile, 1);
  CHECK(eps1 == 2.0 * profile.c_tilde);
  CHECK(beta1 == std::exp(-profile.c_tilde * profile.c_tilde / 2.0));
  for (std::int64_t N : {1LL, 10LL, 1000LL, 1000000LL}) {
    const auto [eps_N, beta_N] = eps_beta_sequences(profile, N);
    // eps_N sqrt(N) / N^(eps/2) = 2 C~ exactly
    const double lhs = eps_N * std::sqrt(static_cast<double>(N)) /
                       std::pow(static_cast<double>(N), 0.5 * profile.eps_exponent);
    CHECK(lhs == doctest::Approx(2.0 * profile.c_tilde).epsilon(1e-12));
    CHECK(beta_N >= 0.0);
    CHECK(beta_N <= 1.0);
  }
}

TEST_CASE("beta_N partial sums converge") {
  const auto profile = ConcentrationProfile::make(sin3_holder(), 0.2);
  double partial = 0.0;
  double last_increment = 0.0;
  for (std::int64_t N = 1; N <= 1000000; N *= 10) {
    last_increment = eps_beta_sequences(profile, N).second;
    partial += last_increment;
  }
  CHECK(partial < std::numeric_limits<double>::infinity());
  CHECK(last_increment <= 1e-12 * std::max(partial, 1e-300));
}

TEST_CASE("eps_N / delta_N vanishes") {
  const auto profile = ConcentrationProfile::make(sin3_holder(), 0.2);
  // delta_N = C N^(-(1/2-eps)); the ratio scales as N^(-eps/2)
  const double C = 1.0;
  const double r1 = eps_beta_sequences(profile, 100).first /
                    (C * std::pow(100.0, -(0.5 - 0.2)));
  const double r2 = eps_beta_sequences(profile, 1000000).first /
                    (C * std::pow(1e6, -(0.5 - 0.2)));
  CHECK(r2 < r1);
  CHECK(r2 / r1 == doctest::Approx(std::pow(1e4, -0.1)).epsilon(1e-10));
}

TEST_CASE("required_sample_size worked examples") {
  ConcentrationProfile p1;
  p1.c_tilde = 1.0;
  p1.holder.h_bar = 0.0;
  CHECK(required_sample_size(p1, 0.1, 0.5) == 100);

  ConcentrationProfile p2;
  p2.c_tilde = 0.0;
  p2.holder.h_bar = 1.0;
  CHECK(required_sample_size(p2, 1.0, std::exp(-0.5)) == 1);

  ConcentrationProfile p3;
  p3.c_tilde = 2.0;
  p3.holder.h_bar = 1.0;
  CHECK(required_sample_size(p3, 0.05, 0.01) == 10140);
}

TEST_CASE("required_sample_size is nonincreasing in eps and beta") {
  ConcentrationProfile p;
  p.c_tilde = 1.5;
  p.holder.h_bar = 0.8;
  CHECK(required_sample_size(p, 0.2, 0.1) <= required_sample_size(p, 0.1, 0.1));
  CHECK(required_sample_size(p, 0.1, 0.2) <= required_sample_size(p, 0.1, 0.1));
}

TEST_CASE("covering_number_bound worked examples") {
  CHECK(covering_number_bound(1.0, 1, 1.0) == 2.0);
  CHECK(covering_number_bound(2.0, 2, 0.5) == 25.0);
  CHECK(covering_number_bound(2.0, 2, 0.5) >= covering_number_bound(2.0, 2, 1.0));
  CHECK_THROWS_AS(covering_number_bound(1.0, 1, 0.0), std::invalid_argument);
}

TEST_CASE("validate_uniform_bound on a deterministic family") {
  auto family = std::make_shared<StochasticProgram>(StochasticProgram{
      DomainSpec(Eigen::VectorXd::Constant(1, -1.0), Eigen::VectorXd::Constant(1, 1.0)),
      [](const Eigen::VectorXd&, const Scenario&) { return 0.0; },
      {}, 0,
      [](const Eigen::VectorXd& u, const Scenario&) {
        return Eigen::VectorXd::Constant(1, u[0]);
      },
      1,
      [](const SeedSpec& seed, std::uint64_t i) {
        return Scenario{draw_uniform(seed, i, -1.0, 1.0)};
      },
      [](const Eigen::VectorXd& u) { return Eigen::VectorXd::Constant(1, u[0]); },
      {}});
  const auto profile = ConcentrationProfile::make(sin3_holder(), 0.2);
  auto domain = std::make_shared<DomainSpec>(family->domain);
  const GridSet grid = GridSet::full(domain, {51});
  // power-of-two N keeps the pairwise mean of identical values exact
  const auto report = validate_uniform_bound(*family, profile, grid, 64, 20, SeedSpec{1, 0});
  CHECK(report.violation_rate == 0.0);
  CHECK(report.mean_sup_error == 0.0);
}

TEST_CASE("validate_uniform_bound falls back to a reference mean without h0") {
  auto family = std::make_shared<StochasticProgram>(StochasticProgram{
      DomainSpec(Eigen::VectorXd::Constant(1, -1.0), Eigen::VectorXd::Constant(1, 1.0)),
      [](const Eigen::VectorXd&, const Scenario&) { return 0.0; },
      {}, 0,
      [](const Eigen::VectorXd& u, const Scenario& w) {
        return Eigen::VectorXd::Constant(1, u[0] * w[0]);
      },
      1,
      [](const SeedSpec& seed, std::uint64_t i) {
        return Scenario{draw_uniform(seed, i, -1.0, 1.0)};
      },
      {}, {}, {}});  // no closed-form h0
  const auto profile = ConcentrationProfile::make(sin3_holder(), 0.2);
  auto domain = std::make_shared<DomainSpec>(family->domain);
  const GridSet grid = GridSet::full(domain, {21});
  const auto report = validate_uniform_bound(*family, profile, grid, 100, 50,
                                             SeedSpec{3, 0}, 20000);
  // true h0 = 0; the reference mean adds only O(1/sqrt(20000)) bias
  CHECK(report.violation_rate == 0.0);
  CHECK(report.mean_sup_error > 0.0);
  CHECK(report.mean_sup_error < 0.2);

  StochasticProgram no_sampler = *family;
  no_sampler.scenario_sampler = {};
  CHECK_THROWS_AS(
      validate_uniform_bound(no_sampler, profile, grid, 10, 2, SeedSpec{}),
      std::runtime_error);
}

TEST_CASE("validate_uniform_bound on the sin3 family") {
  auto family = make_problem("sin3");
  const auto profile = ConcentrationProfile::make(sin3_holder(), 0.2);
  auto domain = std::make_shared<DomainSpec>(family->domain);
  const GridSet grid = GridSet::full(domain, {101});
  const auto report =
      validate_uniform_bound(*family, profile, grid, 100, 200, SeedSpec{7, 0});
  CHECK(report.violation_rate <= report.beta_N);
  CHECK(report.mean_sup_error <= profile.c_tilde / std::sqrt(100.0));
  // actual sup error is |mean(w)| sup|sin(3u)| ~ 0.05, far below the bound
  CHECK(report.mean_sup_error > 0.0);
  CHECK(report.mean_sup_error < 0.2);
}
