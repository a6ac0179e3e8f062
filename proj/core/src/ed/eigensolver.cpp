#include "xyrevival/ed/eigensolver.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "xyrevival/error.hpp"

namespace xyrevival::ed {
namespace {

void fix_sign(RealVector& v) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[best]) + 1e-14) best = i;
  if (v.size() > 0 && v[best] < 0.0) v = -v;
}

double residual_norm(const SpinHamiltonian& h, const RealVector& v, double e) {
  return (h.matrix * v - e * v).norm();
}

// Deterministic start vector with generic overlap on every basis state.
RealVector start_vector(std::size_t dim) {
  RealVector v(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    std::uint64_t z = i + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    v[static_cast<Eigen::Index>(i)] = 1.0 + 0.25 * (static_cast<double>(z >> 11) * 0x1.0p-53 - 0.5);
  }
  return v.normalized();
}

void project_out(RealVector& v, const std::vector<RealVector>& deflate) {
  for (const auto& d : deflate) v -= d.dot(v) * d;
}

struct RitzPair {
  double value;
  RealVector vector;
  double residual;
};

// Lowest eigenpair of P H P, P projecting out `deflate`. Two-pass Lanczos
// (no stored basis) with explicit restarts from the current Ritz vector.
// Stops once the residual norm drops below `tol`.
RitzPair restarted_lanczos(const SpinHamiltonian& h, const std::vector<RealVector>& deflate,
                           RealVector v0, const GroundStateOptions& opt, double tol) {
  const Eigen::Index dim = h.matrix.rows();
  auto op = [&](const RealVector& x, RealVector& y) {
    y.noalias() = h.matrix * x;
    project_out(y, deflate);
  };

  project_out(v0, deflate);
  v0.normalize();
  RitzPair best{std::numeric_limits<double>::infinity(), v0, std::numeric_limits<double>::infinity()};

  for (int restart = 0; restart <= opt.max_lanczos_restarts; ++restart) {
    const int m_max = static_cast<int>(std::min<Eigen::Index>(opt.lanczos_subspace, dim));
    std::vector<double> alpha, beta;
    RealVector v_prev = RealVector::Zero(dim), v = v0, w(dim);
    double b = 0.0;
    for (int j = 0; j < m_max; ++j) {
      op(v, w);
      const double a = v.dot(w);
      alpha.push_back(a);
      w -= a * v + b * v_prev;
      b = w.norm();
      if (j + 1 == m_max || b < 1e-12) break;
      beta.push_back(b);
      v_prev = v;
      v = w / b;
    }
    const int m = static_cast<int>(alpha.size());
    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd sub = Eigen::Map<Eigen::VectorXd>(beta.data(), m - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const Eigen::VectorXd s = tri.eigenvectors().col(0);

    // Second pass: rebuild the Krylov vectors and accumulate the Ritz vector.
    RealVector x = RealVector::Zero(dim);
    v_prev.setZero();
    v = v0;
    b = 0.0;
    for (int j = 0; j < m; ++j) {
      x += s[j] * v;
      if (j + 1 == m) break;
      op(v, w);
      w -= alpha[j] * v + b * v_prev;
      b = beta[j];
      v_prev = v;
      v = w / b;
    }
    project_out(x, deflate);
    x.normalize();
    RealVector hx = h.matrix * x;
    const double e = x.dot(hx);
    const double res = (hx - e * x).norm();
    if (res < best.residual) best = {e, x, res};
    if (res < tol) return best;
    v0 = x;
  }
  throw NumericalError("Lanczos did not reach residual " + std::to_string(tol) +
                       " (best " + std::to_string(best.residual) + ")");
}

// The `count` lowest eigenpairs; the tridiagonal reduction dominates, so this
// is a few times cheaper than a full decomposition.
DenseEigensystem lowest_eigenpairs(const SpinHamiltonian& h, std::size_t count) {
  RealMatrix a = h.dense();
  const lapack_int n = static_cast<lapack_int>(h.dimension());
  const lapack_int want = static_cast<lapack_int>(count);
  DenseEigensystem out;
  out.energies.resize(n);
  out.vectors.resize(n, want);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(want));
  lapack_int found = 0;
  const lapack_int info =
      LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'U', n, a.data(), n, 0.0, 0.0, 1, want, 0.0,
                     &found, out.energies.data(), out.vectors.data(), n, support.data());
  if (info != 0 || found != want)
    throw NumericalError("dsyevr failed with info " + std::to_string(info));
  out.energies.conservativeResize(want);
  return out;
}

}  // namespace

DenseEigensystem diagonalize(const SpinHamiltonian& h, std::size_t dense_cap) {
  const std::size_t dim = h.dimension();
  if (dim > dense_cap)
    throw CapacityError("dimension " + std::to_string(dim) +
                        " exceeds the dense eigensolver cap; use the Chebyshev propagator");
  DenseEigensystem out;
  out.vectors = h.dense();
  out.energies.resize(static_cast<Eigen::Index>(dim));
  const lapack_int n = static_cast<lapack_int>(dim);
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', n, out.vectors.data(), n,
                                         out.energies.data());
  if (info != 0) throw NumericalError("dsyevd failed with info " + std::to_string(info));
  return out;
}

GroundState ground_state(const SpinHamiltonian& h, const GroundStateOptions& opt) {
  const std::size_t dim = h.dimension();
  if (dim == 0) throw InvalidArgument("empty Hilbert space");
  GroundState gs;

  if (dim <= opt.dense_cap) {
    const DenseEigensystem eig = lowest_eigenpairs(h, std::min<std::size_t>(dim, 8));
    gs.energy = eig.energies[0];
    gs.gap = dim > 1 ? eig.energies[1] - eig.energies[0] : std::numeric_limits<double>::infinity();
    gs.degenerate = gs.gap < opt.degeneracy_tol;
    if (!gs.degenerate) {
      gs.vector = eig.vectors.col(0);
    } else {
      Eigen::Index deg = 1;
      while (deg < eig.energies.size() && eig.energies[deg] - gs.energy < opt.degeneracy_tol) ++deg;
      const DenseEigensystem full =
          deg == eig.energies.size() && static_cast<std::size_t>(deg) < dim ? diagonalize(h, opt.dense_cap)
                                                                           : eig;
      while (deg < full.energies.size() && full.energies[deg] - gs.energy < opt.degeneracy_tol) ++deg;
      const RealMatrix sub = full.vectors.leftCols(deg);
      Eigen::Index pick = 0;
      while (pick < sub.rows() && sub.row(pick).norm() < 1e-8) ++pick;
      gs.vector = sub * sub.row(pick).transpose();
      gs.vector.normalize();
    }
    fix_sign(gs.vector);
    gs.residual = residual_norm(h, gs.vector, gs.energy);
    return gs;
  }

  const RitzPair lowest = restarted_lanczos(h, {}, start_vector(dim), opt, opt.residual_tol);
  // Only the energy of the second state is needed. Its error is of order
  // residual^2 / (distance to the rest of the spectrum), so a looser residual
  // suffices; the first excited level is often a near-degenerate multiplet in
  // which the Ritz vector itself converges slowly.
  const RitzPair next = restarted_lanczos(h, {lowest.vector}, start_vector(dim), opt,
                                          std::max(opt.residual_tol, 1e-6));
  gs.energy = lowest.value;
  gs.vector = lowest.vector;
  gs.gap = next.value - lowest.value;
  gs.degenerate = gs.gap < opt.degeneracy_tol;
  fix_sign(gs.vector);
  gs.residual = lowest.residual;
  return gs;
}

double SpectralDecomposition::average_echo() const {
  double s = 0.0;
  for (double p : populations) s += p * p;
  return s;
}

double SpectralDecomposition::total_population() const {
  return std::accumulate(populations.begin(), populations.end(), 0.0);
}

SpectralDecomposition spectral_decomposition(const DenseEigensystem& eig,
                                             const ComplexVector& psi0) {
  if (psi0.size() != eig.vectors.rows())
    throw InvalidArgument("state dimension does not match the Hamiltonian");
  const double norm = psi0.norm();
  if (std::abs(norm - 1.0) > 1e-8) throw InvalidArgument("initial state is not normalized");
  SpectralDecomposition d;
  const Eigen::VectorXcd amp = eig.vectors.transpose().cast<std::complex<double>>() * psi0;
  d.energies.assign(eig.energies.data(), eig.energies.data() + eig.energies.size());
  d.amplitudes.assign(amp.data(), amp.data() + amp.size());
  d.populations.resize(d.amplitudes.size());
  for (std::size_t n = 0; n < d.amplitudes.size(); ++n) d.populations[n] = std::norm(d.amplitudes[n]);
  return d;
}

SpectralDecomposition spectral_decomposition(const SpinHamiltonian& h, const ComplexVector& psi0,
                                             std::size_t dense_cap) {
  if (static_cast<std::size_t>(psi0.size()) != h.dimension())
    throw InvalidArgument("state dimension does not match the Hamiltonian");
  return spectral_decomposition(diagonalize(h, dense_cap), psi0);
}

double loschmidt_echo_ed(const SpectralDecomposition& d, double t) {
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t n = 0; n < d.energies.size(); ++n)
    acc += d.populations[n] * std::polar(1.0, -d.energies[n] * t);
  return std::norm(acc);
}

}  // namespace xyrevival::ed
