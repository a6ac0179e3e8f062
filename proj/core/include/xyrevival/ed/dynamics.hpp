#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "xyrevival/ed/eigensolver.hpp"
#include "xyrevival/ed/hamiltonian.hpp"
#include "xyrevival/ed/propagator.hpp"
#include "xyrevival/time_series.hpp"

namespace xyrevival::ed {

/// One side of a quench: H = -1/2 sum [ (1+eta)/2 sx sx + (1-eta)/2 sy sy
/// + g sz sz + (h + e_l) sz ], e_l drawn from the disorder stream with
/// amplitude epsilon.
struct ChainParams {
  double eta = 1.0;
  double h = 0.0;
  double g = 0.0;
  double epsilon = 0.0;
};

struct EdQuenchSpec {
  int n_sites = 0;
  ChainParams initial;
  ChainParams quench;
  Boundary boundary = Boundary::periodic;
  /// Flip-parity sector. Unset: the sector holding the lower ground state of
  /// the initial Hamiltonian (even on a tie).
  std::optional<Parity> parity;
  /// At most this many flipped spins. Unset: no truncation.
  std::optional<int> max_flips;
  std::uint64_t seed = 0;
  std::size_t max_dimension = std::size_t{1} << 14;

  void validate() const;
};

/// Per-site fields h + e_l of one side of the quench.
std::vector<double> site_fields(const ChainParams& p, int n_sites, std::uint64_t seed);

SpinHamiltonian build_chain_hamiltonian(const ChainParams& p, int n_sites, Boundary boundary,
                                        Sector sector, std::uint64_t seed,
                                        const BuildOptions& options = {});

struct EvolutionOptions {
  std::size_t dense_cap = kDenseDimensionCap;
  double chebyshev_tolerance = 1e-12;
};

/// Time evolution of a fixed initial state under a fixed Hamiltonian, by
/// spectral decomposition up to the dense cap and by Chebyshev expansion above.
class QuenchEvolver {
 public:
  QuenchEvolver(SpinHamiltonian quench, RealVector psi0, EvolutionOptions options = {});

  bool uses_dense_path() const { return decomposition_.has_value(); }
  const SpinHamiltonian& hamiltonian() const { return h_; }
  const RealVector& initial_state() const { return psi0_; }
  /// Populations in the quench eigenbasis (dense path only).
  const SpectralDecomposition* decomposition() const {
    return decomposition_ ? &*decomposition_ : nullptr;
  }

  ComplexVector state_at(double t) const;
  double loschmidt_echo(double t) const;

  /// Observables on ascending sample times, in enum order of `observables`
  /// as given. Entropy is the site-averaged partial-trace entropy.
  std::vector<TimeSeries> evolve_series(std::span<const double> times,
                                        std::span<const Observable> observables) const;

 private:
  SpinHamiltonian h_;
  RealVector psi0_;
  EvolutionOptions options_;
  std::optional<DenseEigensystem> eig_;
  std::optional<SpectralDecomposition> decomposition_;
  std::optional<ChebyshevPropagator> chebyshev_;
};

struct PreparedQuench {
  Sector sector;
  GroundState initial;
  QuenchEvolver evolver;
};

/// Ground state of the initial Hamiltonian and an evolver for the quench one,
/// both on the same sector and boundary.
PreparedQuench prepare_quench(const EdQuenchSpec& spec, const EvolutionOptions& options = {});

struct TruncationStep {
  int max_flips = 0;
  std::size_t dimension = 0;
  /// max_t |L_M(t) - L_{M-2}(t)|; unset for the first step.
  std::optional<double> change;
};

struct TruncationConvergence {
  std::vector<TruncationStep> steps;
  /// First M whose echo differs from that of M + 2 by less than the tolerance.
  std::optional<int> converged_max_flips;
};

/// Echo of `spec` on `times` for M = first_max_flips, +2, ... up to
/// last_max_flips, stopping at the first converged M. spec.max_flips is
/// ignored; the parity is that of spec (even when unset).
TruncationConvergence truncation_convergence(const EdQuenchSpec& spec, std::span<const double> times,
                                             int first_max_flips, int last_max_flips,
                                             double tolerance = 1e-2,
                                             const EvolutionOptions& options = {});

/// psi0 -> exp(-i H t) psi0 on the path chosen by the dimension.
ComplexVector evolve_state(const SpinHamiltonian& h, const ComplexVector& psi0, double t,
                           const EvolutionOptions& options = {});

/// (1/N) sum_l (1 - <sz_l>)/2, i.e. the mean number of flipped spins per site.
double magnetization(const SpinBasis& basis, const ComplexVector& psi);

/// Von Neumann entropy of the reduced density matrix of one site.
double site_entropy(const SpinBasis& basis, const ComplexVector& psi, int site);

/// site_entropy averaged over all sites.
double single_spin_entropy(const SpinBasis& basis, const ComplexVector& psi);

}  // namespace xyrevival::ed
