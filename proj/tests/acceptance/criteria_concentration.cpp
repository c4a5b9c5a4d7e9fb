#include <cmath>
#include <memory>

#include "criteria.hpp"
#include "saa/concentration.hpp"
#include "saa/problems.hpp"
#include "saa/program.hpp"

using namespace saa;

namespace {

ConcentrationProfile sin3_profile() {
  HolderData h;
  h.alpha = 1.0;
  h.m2 = 3.0;  // M(w) = 3|w|, E[M^2] = 9 E[w^2] = 3
  h.h_bar = 1.0;
  h.trace_sigma0 = 0.0;  // h(0, w) = 0 at the box center anchor
  h.domain_dim = 1;
  h.output_dim = 1;
  h.diameter = 2.0;
  return ConcentrationProfile::make(h, 0.2);
}

bool close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

TEST_CASE("criterion 6: concentration validity for the sin3 family") {
  auto family = make_problem("sin3");
  const auto profile = sin3_profile();
  auto domain = std::make_shared<DomainSpec>(family->domain);
  const GridSet grid = GridSet::full(domain, {201});
  bool pass = true;
  for (std::int64_t N : {100LL, 1000LL}) {
    const auto report =
        validate_uniform_bound(*family, profile, grid, N, 1000, SeedSpec{0, 0});
    const double dudley_rate = profile.c_tilde / std::sqrt(static_cast<double>(N));
    criterion_note("N=" + std::to_string(N) +
                   ": violation_rate=" + std::to_string(report.violation_rate) +
                   " beta_N=" + std::to_string(report.beta_N) +
                   " mean_sup=" + std::to_string(report.mean_sup_error) +
                   " C~/sqrt(N)=" + std::to_string(dudley_rate));
    pass = pass && report.violation_rate <= report.beta_N;
    pass = pass && report.mean_sup_error <= dudley_rate;
  }
  criterion(
      "criterion 6: violation_rate <= beta_N and mean_sup_error <= C~/sqrt(N) "
      "at N in {100, 1000} with 1000 trials",
      pass);
}

TEST_CASE("criterion 7: formula reproduction at 1e-12 relative error") {
  bool pass = true;
  pass = pass && RelaxationSchedule(1.0, 0.25).delta_at(16) == 0.5;
  pass = pass && close(RelaxationSchedule(2.0, 0.1).delta_at(10000),
                       0.050237728630191602, 1e-12);
  pass = pass && dudley_constant({1.0, 0.0, 0.0, 4.0, 1, 1, 2.0}) == 2.0;
  pass = pass && dudley_constant({1.0, 1.0, 0.0, 0.0, 1, 1, 1.0}) == 256.0;
  pass = pass && close(dudley_constant({0.5, 0.25, 0.0, 1.0, 3, 2, 2.0}),
                       1492.4307226848975, 1e-12);
  {
    ConcentrationProfile p;
    p.c_tilde = 2.0;
    p.holder.h_bar = 1.0;
    pass = pass && required_sample_size(p, 0.05, 0.01) == 10140;
    p.c_tilde = 1.0;
    p.holder.h_bar = 0.0;
    pass = pass && required_sample_size(p, 0.1, 0.5) == 100;
    p.c_tilde = 0.0;
    p.holder.h_bar = 1.0;
    pass = pass && required_sample_size(p, 1.0, std::exp(-0.5)) == 1;
  }
  pass = pass && covering_number_bound(2.0, 2, 0.5) == 25.0;
  pass = pass && covering_number_bound(1.0, 1, 1.0) == 2.0;
  {
    const auto profile = sin3_profile();
    const auto [eps1, beta1] = eps_beta_sequences(profile, 1);
    pass = pass && eps1 == 2.0 * profile.c_tilde;
    pass = pass && close(beta1, std::exp(-profile.c_tilde * profile.c_tilde / 2.0), 1e-12);
  }
  criterion(
      "criterion 7: dudley_constant, eps/beta, required_sample_size, covering "
      "bound reproduce worked values to 1e-12",
      pass);
}
