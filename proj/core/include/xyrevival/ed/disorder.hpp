#pragma once

#include <cstdint>
#include <vector>

namespace xyrevival::ed {

/// Site fields h_l = h + e_l with e_l uniform on (-epsilon, epsilon).
/// e_l depends only on (seed, l), so a realization is reproducible regardless
/// of evaluation order or thread count.
struct DisorderRealization {
  std::uint64_t seed = 0;
  double epsilon = 0.0;
  double h = 0.0;
  std::vector<double> offsets;

  std::vector<double> fields() const;
};

/// Uniform variate in (0, 1) for counter l of the stream keyed by seed.
double disorder_uniform(std::uint64_t seed, std::uint64_t l);

DisorderRealization disorder_field(double h, double epsilon, std::uint64_t seed, int n_sites);

/// Seed of realization r when averaging over realizations of a base seed.
std::uint64_t realization_seed(std::uint64_t seed, std::uint64_t r);

}  // namespace xyrevival::ed
