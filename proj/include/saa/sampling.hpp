#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

namespace saa {

// Identifies an i.i.d. scenario stream. Draws are pure functions of
// (master_seed, stream_id, sample_index, element_index), so batches can be
// filled by any number of workers without changing a single bit.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  SeedSpec with_stream(std::uint64_t stream) const { return {master_seed, stream}; }
};

// Raw 64 uniform bits for one (sample, element) address.
std::uint64_t draw_bits(const SeedSpec& seed, std::uint64_t sample_index,
                        std::uint64_t element_index);

// Uniform on [lo, hi). Requires lo < hi.
double draw_uniform(const SeedSpec& seed, std::uint64_t sample_index, double lo,
                    double hi, std::uint64_t element_index = 0);

// Standard normal via the inverse CDF of the uniform output.
double draw_normal(const SeedSpec& seed, std::uint64_t sample_index,
                   std::uint64_t element_index = 0);

// Inverse standard normal CDF (Wichura's AS 241, double precision).
double inverse_normal_cdf(double p);

// Discretized Brownian path: `steps` i.i.d. N(0, dt) increments per component.
struct BrownianPath {
  int dim = 0;
  int steps = 0;
  double dt = 0.0;
  std::vector<double> increments;  // row-major, steps x dim

  const double* increment(int k) const { return increments.data() + static_cast<std::size_t>(k) * dim; }
  Eigen::Map<const Eigen::VectorXd> increment_vec(int k) const {
    return {increment(k), dim};
  }
};

// Path is a deterministic function of (seed, sample_index).
// Requires steps >= 1 and dt > 0.
BrownianPath draw_brownian(const SeedSpec& seed, std::uint64_t sample_index,
                           int dim, int steps, double dt);

}  // namespace saa
