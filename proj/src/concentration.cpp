#include "saa/concentration.hpp"

#include <cmath>
#include <stdexcept>

#include "saa/numeric.hpp"
#include "saa/threading.hpp"

namespace saa {

double dudley_constant(const HolderData& h) {
  if (!(h.alpha > 0.0 && h.alpha <= 1.0))
    throw std::invalid_argument("dudley_constant: alpha must lie in (0, 1]");
  if (h.m2 < 0.0 || h.h_bar < 0.0 || h.trace_sigma0 < 0.0 || h.diameter < 0.0)
    throw std::invalid_argument("dudley_constant: scalars must be nonnegative");
  if (h.domain_dim < 1 || h.output_dim < 1)
    throw std::invalid_argument("dudley_constant: dimensions must be positive");
  constexpr double kDudleyC = 32.0;
  return 8.0 * kDudleyC * std::pow(h.diameter, 0.5 * (h.alpha + 1.0)) *
             std::sqrt(static_cast<double>(h.domain_dim)) *
             std::pow(static_cast<double>(h.output_dim), 1.5) * std::sqrt(h.m2) /
             std::sqrt(h.alpha) +
         std::sqrt(h.trace_sigma0);
}

ConcentrationProfile ConcentrationProfile::make(const HolderData& h,
                                                double eps_exponent) {
  if (!(eps_exponent > 0.0 && eps_exponent < 0.5))
    throw std::invalid_argument("ConcentrationProfile: eps must lie in (0, 1/2)");
  return {h, dudley_constant(h), eps_exponent};
}

std::pair<double, double> eps_beta_sequences(const ConcentrationProfile& profile,
                                             std::int64_t N) {
  if (N < 1) throw std::invalid_argument("eps_beta_sequences: N >= 1 required");
  if (!(profile.holder.h_bar > 0.0))
    throw std::invalid_argument("eps_beta_sequences: h_bar > 0 required");
  const double n = static_cast<double>(N);
  const double eps_N =
      2.0 * profile.c_tilde * std::pow(n, -0.5 + 0.5 * profile.eps_exponent);
  const double beta_N =
      std::exp(-profile.c_tilde * profile.c_tilde *
               std::pow(n, profile.eps_exponent) /
               (2.0 * profile.holder.h_bar * profile.holder.h_bar));
  return {eps_N, beta_N};
}

std::int64_t required_sample_size(const ConcentrationProfile& profile, double eps,
                                  double beta) {
  if (!(eps > 0.0)) throw std::invalid_argument("required_sample_size: eps > 0");
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("required_sample_size: beta must lie in (0, 1)");
  const double tail =
      profile.holder.h_bar * std::sqrt(2.0 * std::log(1.0 / beta));
  const double raw = (profile.c_tilde + tail) * (profile.c_tilde + tail) / (eps * eps);
  return static_cast<std::int64_t>(std::ceil(raw));
}

double covering_number_bound(double diameter, int dim, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("covering_number_bound: eps > 0");
  if (dim < 1) throw std::invalid_argument("covering_number_bound: dim >= 1");
  return std::pow(1.0 + diameter / eps, static_cast<double>(dim));
}

UniformBoundReport validate_uniform_bound(const StochasticProgram& family,
                                          const ConcentrationProfile& profile,
                                          const GridSet& grid, std::int64_t N,
                                          int trials, const SeedSpec& seed,
                                          std::int64_t reference_samples) {
  if (!family.has_h())
    throw std::invalid_argument("validate_uniform_bound: family has no equality rows");
  if (N < 1 || trials < 1)
    throw std::invalid_argument("validate_uniform_bound: N and trials must be >= 1");
  if (!family.scenario_sampler)
    throw std::runtime_error("validate_uniform_bound: family has no scenario sampler");

  const auto points = grid.points();
  if (points.empty())
    throw std::invalid_argument("validate_uniform_bound: empty grid");

  // Reference mean h0 per grid point: closed form when supplied, otherwise a
  // long empirical average on a dedicated stream.
  std::vector<Eigen::VectorXd> h0(points.size());
  if (family.h0) {
    for (std::size_t i = 0; i < points.size(); ++i) h0[i] = family.h0(points[i]);
  } else {
    if (!family.scenario_sampler)
      throw std::runtime_error(
          "validate_uniform_bound: no closed-form h0 and no sampler for a reference mean");
    const SeedSpec ref_seed = seed.with_stream(~std::uint64_t{0});
    std::vector<Scenario> ref(static_cast<std::size_t>(reference_samples));
    parallel_for(ref.size(), [&](std::size_t i) {
      ref[i] = family.scenario_sampler(ref_seed, i);
    });
    parallel_for(points.size(), [&](std::size_t i) {
      Eigen::MatrixXd vals(family.eq_dim, static_cast<Eigen::Index>(ref.size()));
      for (std::size_t s = 0; s < ref.size(); ++s)
        vals.col(static_cast<Eigen::Index>(s)) = family.h(points[i], ref[s]);
      h0[i] = pairwise_sum_columns(vals) / static_cast<double>(ref.size());
    });
  }

  // One stream per trial; sups are buffered per trial and reduced afterwards
  // so the result is independent of the worker schedule.
  std::vector<double> sups(static_cast<std::size_t>(trials));
  parallel_for(sups.size(), [&](std::size_t t) {
    const SeedSpec trial_seed = seed.with_stream(static_cast<std::uint64_t>(t));
    std::vector<Scenario> scen(static_cast<std::size_t>(N));
    for (std::size_t i = 0; i < scen.size(); ++i)
      scen[i] = family.scenario_sampler(trial_seed, i);
    double sup = 0.0;
    Eigen::MatrixXd vals(family.eq_dim, static_cast<Eigen::Index>(N));
    for (std::size_t p = 0; p < points.size(); ++p) {
      for (std::size_t i = 0; i < scen.size(); ++i)
        vals.col(static_cast<Eigen::Index>(i)) = family.h(points[p], scen[i]);
      const Eigen::VectorXd hN = pairwise_sum_columns(vals) / static_cast<double>(N);
      sup = std::max(sup, (hN - h0[p]).norm());
    }
    sups[t] = sup;
  });

  const auto [eps_N, beta_N] = eps_beta_sequences(profile, N);
  UniformBoundReport report;
  report.eps_N = eps_N;
  report.beta_N = beta_N;
  int violations = 0;
  for (double s : sups)
    if (s > eps_N) ++violations;
  report.violation_rate = static_cast<double>(violations) / trials;
  report.mean_sup_error =
      pairwise_sum(sups) / static_cast<double>(trials);
  return report;
}

}  // namespace saa
