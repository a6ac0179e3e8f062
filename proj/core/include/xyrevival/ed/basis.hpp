#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace xyrevival::ed {

/// Computational basis label: bit l set means spin l is flipped against +z.
using BasisState = std::uint64_t;

enum class Parity { even, odd };
enum class Boundary { periodic, antiperiodic, open };

std::string_view to_string(Parity p);
std::string_view to_string(Boundary b);
std::optional<Parity> parity_from_string(std::string_view s);
std::optional<Boundary> boundary_from_string(std::string_view s);

Parity flip_parity(BasisState s);

struct Sector {
  std::optional<Parity> parity;
  std::optional<int> max_flips;
};

inline constexpr int kMaxSites = 62;

class SpinBasis {
 public:
  /// Enumerates every label of n_sites spins compatible with the sector, in
  /// increasing order. Throws InvalidArgument for n_sites outside [1, 62].
  SpinBasis(int n_sites, Sector sector = {});

  int n_sites() const { return n_sites_; }
  const Sector& sector() const { return sector_; }
  std::size_t size() const { return states_.size(); }
  BasisState state(std::size_t i) const { return states_[i]; }
  const std::vector<BasisState>& states() const { return states_; }

  bool contains(BasisState s) const;
  std::optional<std::size_t> index_of(BasisState s) const;

  /// Number of labels the sector would contain, without enumerating them.
  static std::size_t count(int n_sites, const Sector& sector);

 private:
  int n_sites_;
  Sector sector_;
  std::vector<BasisState> states_;
};

}  // namespace xyrevival::ed
