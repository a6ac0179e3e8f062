#pragma once

#include <cstddef>
#include <vector>

#include "xyrevival/ed/hamiltonian.hpp"

namespace xyrevival::ed {

/// Dimension up to which dense eigendecomposition is used.
inline constexpr std::size_t kDenseDimensionCap = 8192;

struct GroundState {
  double energy = 0.0;
  RealVector vector;
  double gap = 0.0;          // E1 - E0 (infinity for a one-dimensional space)
  bool degenerate = false;   // gap below 1e-10
  double residual = 0.0;     // ||H psi - E psi||
};

struct GroundStateOptions {
  std::size_t dense_cap = kDenseDimensionCap;
  double degeneracy_tol = 1e-10;
  double residual_tol = 1e-9;
  int max_lanczos_restarts = 40;
  int lanczos_subspace = 160;
};

/// Lowest eigenpair. Dense path below the cap, restarted Lanczos above it.
/// The sign of the returned vector is fixed so that its first component of
/// largest magnitude is positive. On a degenerate ground level (dense path),
/// the vector is the projection of the lowest-index basis state with weight in
/// the degenerate subspace.
GroundState ground_state(const SpinHamiltonian& h, const GroundStateOptions& options = {});

struct DenseEigensystem {
  RealVector energies;   // ascending
  RealMatrix vectors;    // columns
};

/// Full eigendecomposition. Throws CapacityError above the cap.
DenseEigensystem diagonalize(const SpinHamiltonian& h, std::size_t dense_cap = kDenseDimensionCap);

struct SpectralDecomposition {
  std::vector<double> energies;                     // ascending
  std::vector<double> populations;                  // |<E_n|psi0>|^2
  std::vector<std::complex<double>> amplitudes;     // <E_n|psi0>

  /// sum_n p_n^2, the infinite-time average of the echo.
  double average_echo() const;
  double total_population() const;
};

/// Populations of psi0 in the eigenbasis of h. Throws CapacityError above the
/// dense cap; the caller then has to use a Chebyshev propagator.
SpectralDecomposition spectral_decomposition(const SpinHamiltonian& h, const ComplexVector& psi0,
                                             std::size_t dense_cap = kDenseDimensionCap);
SpectralDecomposition spectral_decomposition(const DenseEigensystem& eig,
                                             const ComplexVector& psi0);

/// |sum_n p_n exp(-i E_n t)|^2
double loschmidt_echo_ed(const SpectralDecomposition& decomp, double t);

}  // namespace xyrevival::ed
