#include "xyrevival/ed/disorder.hpp"

#include "xyrevival/error.hpp"

namespace xyrevival::ed {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

double disorder_uniform(std::uint64_t seed, std::uint64_t l) {
  const std::uint64_t z = mix(seed + (l + 1) * kGolden);
  return (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;
}

DisorderRealization disorder_field(double h, double epsilon, std::uint64_t seed, int n_sites) {
  if (!(epsilon >= 0.0)) throw InvalidArgument("disorder amplitude must be non-negative");
  if (n_sites < 0) throw InvalidArgument("negative chain length");
  DisorderRealization r{seed, epsilon, h, std::vector<double>(static_cast<std::size_t>(n_sites), 0.0)};
  if (epsilon == 0.0) return r;
  for (int l = 0; l < n_sites; ++l)
    r.offsets[l] = epsilon * (2.0 * disorder_uniform(seed, static_cast<std::uint64_t>(l)) - 1.0);
  return r;
}

std::vector<double> DisorderRealization::fields() const {
  std::vector<double> f(offsets.size());
  for (std::size_t l = 0; l < offsets.size(); ++l) f[l] = h + offsets[l];
  return f;
}

std::uint64_t realization_seed(std::uint64_t seed, std::uint64_t r) {
  return mix(mix(seed) ^ (r * kGolden + 0x632BE59BD9B4E019ULL));
}

}  // namespace xyrevival::ed
