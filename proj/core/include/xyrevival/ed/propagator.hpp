#pragma once

#include <span>
#include <vector>

#include "xyrevival/ed/hamiltonian.hpp"

namespace xyrevival::ed {

struct SpectralBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Gershgorin enclosure of the spectrum.
SpectralBounds gershgorin_bounds(const SparseMatrix& m);

/// J_0(x) .. J_{n_max}(x) by Miller's backward recurrence, x >= 0.
std::vector<double> bessel_j_sequence(double x, int n_max);

struct ChebyshevOptions {
  /// Bound on the discarded tail sum_n |J_n(a t)| of one expansion.
  double tolerance = 1e-12;
  /// Relative widening of the Gershgorin interval.
  double padding = 0.01;
};

/// exp(-i H t) by Chebyshev expansion on the rescaled operator
/// (H - center) / half_width.
class ChebyshevPropagator {
 public:
  explicit ChebyshevPropagator(const SpinHamiltonian& h, ChebyshevOptions options = {});

  double center() const { return center_; }
  double half_width() const { return half_width_; }

  /// Expansion order needed for a step of length dt.
  int order_for(double dt) const;

  /// psi -> exp(-i H dt) psi.
  ComplexVector step(const ComplexVector& psi, double dt) const;

  /// <psi0| exp(-i H t) |psi0> for every t, from Chebyshev moments of a real
  /// state. Each moment pair costs one product with H.
  std::vector<std::complex<double>> return_amplitudes(const RealVector& psi0,
                                                      std::span<const double> times) const;

 private:
  std::vector<double> coefficients(double dt) const;

  const SpinHamiltonian* h_;
  ChebyshevOptions options_;
  double center_ = 0.0;
  double half_width_ = 1.0;
};

}  // namespace xyrevival::ed
