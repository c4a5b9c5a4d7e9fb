#pragma once

#include <cstdint>
#include <utility>

#include "saa/grid.hpp"
#include "saa/program.hpp"

namespace saa {

// Smoothness/boundedness data of the equality constraint family:
// alpha-Hoelder exponent and moment E[M^2], uniform bound h_bar, covariance
// trace at the anchor point, problem dimensions and domain diameter
// D = 2 sup ||u||_2.
struct HolderData {
  double alpha = 1.0;
  double m2 = 0.0;
  double h_bar = 0.0;
  double trace_sigma0 = 0.0;
  int domain_dim = 1;
  int output_dim = 1;
  double diameter = 0.0;
};

// C_tilde = 8*C*D^((alpha+1)/2) * d^(1/2) * n^(3/2) * sqrt(E[M^2]) / sqrt(alpha)
//           + sqrt(Trace(Sigma_0)),  with C = 32.
double dudley_constant(const HolderData& h);

struct ConcentrationProfile {
  HolderData holder;
  double c_tilde = 0.0;  // dudley_constant(holder)
  double eps_exponent = 0.2;  // the epsilon in (0, 1/2) of the sequences

  static ConcentrationProfile make(const HolderData& h, double eps_exponent);
};

// eps_N = 2*C_tilde*N^(-1/2 + eps/2),  beta_N = exp(-C_tilde^2 N^eps / (2 h_bar^2)).
std::pair<double, double> eps_beta_sequences(const ConcentrationProfile& profile,
                                             std::int64_t N);

// ceil(eps^-2 (C_tilde + h_bar sqrt(2 ln(1/beta)))^2).
std::int64_t required_sample_size(const ConcentrationProfile& profile, double eps,
                                  double beta);

// (1 + D/eps)^d.
double covering_number_bound(double diameter, int dim, double eps);

struct UniformBoundReport {
  double violation_rate = 0.0;
  double mean_sup_error = 0.0;
  double eps_N = 0.0;
  double beta_N = 0.0;
};

// Empirical check of the high-probability uniform bound: over `trials`
// independent samples of size N, measures sup over the grid of
// ||h_N(u) - h_0(u)||_2 and compares against eps_N. Uses the family's
// closed-form h0 when available, otherwise a reference empirical mean with
// `reference_samples` draws per grid point.
UniformBoundReport validate_uniform_bound(const StochasticProgram& family,
                                          const ConcentrationProfile& profile,
                                          const GridSet& grid, std::int64_t N,
                                          int trials, const SeedSpec& seed,
                                          std::int64_t reference_samples = 1000000);

}  // namespace saa
