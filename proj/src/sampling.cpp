#include "saa/sampling.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace saa {

namespace {

// Philox 4x32-10 block cipher (Salmon et al.). Counter-based, so any draw is
// addressable without sequential generator state.
struct PhiloxKey {
  std::uint32_t k0, k1;
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        PhiloxKey key) {
  constexpr std::uint32_t kM0 = 0xD2511F53u;
  constexpr std::uint32_t kM1 = 0xCD9E8D57u;
  constexpr std::uint32_t kW0 = 0x9E3779B9u;
  constexpr std::uint32_t kW1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
    const std::array<std::uint32_t, 4> next = {
        static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key.k0,
        static_cast<std::uint32_t>(p1),
        static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key.k1,
        static_cast<std::uint32_t>(p0)};
    ctr = next;
    key.k0 += kW0;
    key.k1 += kW1;
  }
  return ctr;
}

PhiloxKey make_key(const SeedSpec& seed) {
  const std::uint64_t mixed =
      splitmix64(seed.master_seed ^ splitmix64(seed.stream_id));
  return {static_cast<std::uint32_t>(mixed),
          static_cast<std::uint32_t>(mixed >> 32)};
}

}  // namespace

std::uint64_t draw_bits(const SeedSpec& seed, std::uint64_t sample_index,
                        std::uint64_t element_index) {
  const std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(sample_index),
      static_cast<std::uint32_t>(sample_index >> 32),
      static_cast<std::uint32_t>(element_index),
      static_cast<std::uint32_t>(element_index >> 32)};
  const auto out = philox4x32(ctr, make_key(seed));
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

double draw_uniform(const SeedSpec& seed, std::uint64_t sample_index, double lo,
                    double hi, std::uint64_t element_index) {
  if (!(lo < hi)) throw std::invalid_argument("draw_uniform: requires lo < hi");
  const std::uint64_t bits = draw_bits(seed, sample_index, element_index);
  const double u01 = static_cast<double>(bits >> 11) * 0x1.0p-53;  // [0, 1)
  return lo + u01 * (hi - lo);
}

double draw_normal(const SeedSpec& seed, std::uint64_t sample_index,
                   std::uint64_t element_index) {
  const std::uint64_t bits = draw_bits(seed, sample_index, element_index);
  // Centered on the 2^-53 lattice so p is strictly inside (0, 1).
  const double p = (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
  return inverse_normal_cdf(p);
}

// AS 241 algorithm PPND16 (Wichura 1988), relative error ~1e-16.
double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("inverse_normal_cdf: p must be in (0,1)");
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                 6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
               1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
             1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                 3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
               5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
             4.2313330701600911252e1) * r + 1.0);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
              3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
            4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
          (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
              6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
            2.05319162663775882187e0) * r + 1.0);
  } else {
    r -= 5.0;
    val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
              2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
            5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
          (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
              1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
            5.99832206555887937690e-1) * r + 1.0);
  }
  return q < 0.0 ? -val : val;
}

BrownianPath draw_brownian(const SeedSpec& seed, std::uint64_t sample_index,
                           int dim, int steps, double dt) {
  if (steps < 1) throw std::invalid_argument("draw_brownian: steps >= 1 required");
  if (!(dt > 0.0)) throw std::invalid_argument("draw_brownian: dt > 0 required");
  if (dim < 1) throw std::invalid_argument("draw_brownian: dim >= 1 required");
  BrownianPath path;
  path.dim = dim;
  path.steps = steps;
  path.dt = dt;
  path.increments.resize(static_cast<std::size_t>(steps) * dim);
  const double scale = std::sqrt(dt);
  for (int k = 0; k < steps; ++k) {
    for (int j = 0; j < dim; ++j) {
      const std::uint64_t element = static_cast<std::uint64_t>(k) * dim + j;
      path.increments[static_cast<std::size_t>(k) * dim + j] =
          scale * draw_normal(seed, sample_index, element);
    }
  }
  return path;
}

}  // namespace saa
