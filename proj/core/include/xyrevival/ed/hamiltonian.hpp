#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <cstddef>
#include <vector>

#include "xyrevival/ed/basis.hpp"

namespace xyrevival::ed {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Couplings of  -1/2 sum_l [ jx sx sx + jy sy sy + g sz sz + h_l sz_l ].
/// The XY chain has jx = (1+eta)/2, jy = (1-eta)/2, g = 0; the XZ chain has
/// jx = 1, jy = 0. An antiperiodic boundary flips the sign of the x and y
/// couplings on the closing bond (a pi rotation about z of the last spin).
struct CouplingSet {
  double jx = 1.0;
  double jy = 0.0;
  double g = 0.0;
  std::vector<double> fields;
  Boundary boundary = Boundary::periodic;
};

struct BuildOptions {
  std::size_t max_dimension = std::size_t{1} << 14;
};

/// Real symmetric Hamiltonian on a (possibly restricted) spin basis.
/// All matrix elements are real in the sz basis.
struct SpinHamiltonian {
  SpinBasis basis;
  CouplingSet couplings;
  SparseMatrix matrix;
  /// Set when a truncation was requested but keeps the full sector (M >= N).
  bool truncation_warning = false;

  std::size_t dimension() const { return basis.size(); }
  RealMatrix dense() const { return RealMatrix(matrix); }
};

/// Generic builder. Matrix elements leading outside the basis are dropped.
SpinHamiltonian build_hamiltonian(const CouplingSet& couplings, SpinBasis basis,
                                  const BuildOptions& options = {});

/// XY chain with per-site transverse fields h_l.
SpinHamiltonian build_xy_hamiltonian(int n_sites, double eta, std::vector<double> fields,
                                     Boundary boundary, Sector sector = {},
                                     const BuildOptions& options = {});

/// XZ chain with uniform field, restricted to states with at most max_flips
/// flipped spins in the given flip-parity sector.
SpinHamiltonian build_xz_hamiltonian(int n_sites, double g, double h, Boundary boundary,
                                     int max_flips, Parity parity = Parity::even,
                                     const BuildOptions& options = {});

/// <s| H |s> for a basis label, computed directly from the couplings.
double diagonal_element(const CouplingSet& couplings, int n_sites, BasisState s);

/// max_ij |H_ij - H_ji|
double hermiticity_defect(const SpinHamiltonian& h);

/// y = H x for complex vectors.
void apply(const SpinHamiltonian& h, const ComplexVector& x, ComplexVector& y);

/// <x| H |x> / <x|x>
double energy_expectation(const SpinHamiltonian& h, const ComplexVector& x);

}  // namespace xyrevival::ed
