#include "xyrevival/ed/basis.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "xyrevival/error.hpp"

namespace xyrevival::ed {
namespace {

bool sector_admits(const Sector& sector, BasisState s) {
  const int flips = std::popcount(s);
  if (sector.max_flips && flips > *sector.max_flips) return false;
  if (sector.parity && flip_parity(s) != *sector.parity) return false;
  return true;
}

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / i;
  return r;
}

}  // namespace

std::string_view to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

std::string_view to_string(Boundary b) {
  switch (b) {
    case Boundary::periodic: return "periodic";
    case Boundary::antiperiodic: return "antiperiodic";
    case Boundary::open: return "open";
  }
  return "unknown";
}

std::optional<Parity> parity_from_string(std::string_view s) {
  if (s == "even") return Parity::even;
  if (s == "odd") return Parity::odd;
  return std::nullopt;
}

std::optional<Boundary> boundary_from_string(std::string_view s) {
  if (s == "periodic") return Boundary::periodic;
  if (s == "antiperiodic") return Boundary::antiperiodic;
  if (s == "open") return Boundary::open;
  return std::nullopt;
}

Parity flip_parity(BasisState s) { return std::popcount(s) % 2 == 0 ? Parity::even : Parity::odd; }

std::size_t SpinBasis::count(int n_sites, const Sector& sector) {
  const int top = sector.max_flips ? std::min(*sector.max_flips, n_sites) : n_sites;
  std::size_t total = 0;
  for (int f = 0; f <= top; ++f) {
    if (sector.parity && (f % 2 == 0) != (*sector.parity == Parity::even)) continue;
    total += binomial(n_sites, f);
  }
  return total;
}

SpinBasis::SpinBasis(int n_sites, Sector sector) : n_sites_(n_sites), sector_(sector) {
  if (n_sites < 1 || n_sites > kMaxSites)
    throw InvalidArgument("spin basis supports 1.." + std::to_string(kMaxSites) +
                          " sites, got " + std::to_string(n_sites));
  if (sector.max_flips && *sector.max_flips < 0)
    throw InvalidArgument("max_flips must be non-negative");

  const bool truncated = sector.max_flips && *sector.max_flips < n_sites;
  if (!truncated) {
    const BasisState end = BasisState{1} << n_sites;
    states_.reserve(count(n_sites, sector));
    for (BasisState s = 0; s < end; ++s)
      if (sector_admits(sector, s)) states_.push_back(s);
    return;
  }

  // Enumerate each admissible popcount with Gosper's hack, then sort.
  states_.reserve(count(n_sites, sector));
  const BasisState limit = BasisState{1} << n_sites;
  for (int f = 0; f <= *sector.max_flips; ++f) {
    if (sector.parity && (f % 2 == 0) != (*sector.parity == Parity::even)) continue;
    if (f == 0) {
      states_.push_back(0);
      continue;
    }
    BasisState s = (BasisState{1} << f) - 1;
    while (s < limit) {
      states_.push_back(s);
      const BasisState c = s & (~s + 1);
      const BasisState r = s + c;
      s = (((r ^ s) >> 2) / c) | r;
    }
  }
  std::sort(states_.begin(), states_.end());
}

std::optional<std::size_t> SpinBasis::index_of(BasisState s) const {
  const auto it = std::lower_bound(states_.begin(), states_.end(), s);
  if (it == states_.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - states_.begin());
}

bool SpinBasis::contains(BasisState s) const { return index_of(s).has_value(); }

}  // namespace xyrevival::ed
