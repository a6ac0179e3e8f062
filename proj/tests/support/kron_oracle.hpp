#pragma once

// Brute-force reference Hamiltonians assembled from Pauli Kronecker products
// on the full 2^N space. Site l is bit l of the basis index (bit set = spin
// down). Nothing here goes through the library's basis or builders.

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace oracle {

using CMat = Eigen::MatrixXcd;
using cd = std::complex<double>;

inline CMat pauli(char which) {
  CMat p(2, 2);
  switch (which) {
    case 'x': p << 0, 1, 1, 0; break;
    case 'y': p << 0, cd(0, -1), cd(0, 1), 0; break;
    case 'z': p << 1, 0, 0, -1; break;
    default: p = CMat::Identity(2, 2);
  }
  return p;
}

// Single-site operator at `site` of an n-site chain.
inline CMat site_op(const CMat& op, int site, int n) {
  CMat out = CMat::Identity(1, 1);
  for (int l = n - 1; l >= 0; --l) {
    const CMat f = l == site ? op : CMat::Identity(2, 2);
    CMat next(out.rows() * 2, out.cols() * 2);
    for (int i = 0; i < out.rows(); ++i)
      for (int j = 0; j < out.cols(); ++j) next.block(2 * i, 2 * j, 2, 2) = out(i, j) * f;
    out = next;
  }
  return out;
}

enum class Bc { periodic, antiperiodic, open };

// -1/2 sum [ jx sx sx + jy sy sy + g sz sz + h_l sz ].
inline CMat chain(int n, double jx, double jy, double g, const std::vector<double>& h, Bc bc) {
  const long dim = 1L << n;
  CMat H = CMat::Zero(dim, dim);
  std::vector<CMat> sx, sy, sz;
  for (int l = 0; l < n; ++l) {
    sx.push_back(site_op(pauli('x'), l, n));
    sy.push_back(site_op(pauli('y'), l, n));
    sz.push_back(site_op(pauli('z'), l, n));
  }
  const int bonds = bc == Bc::open ? n - 1 : n;
  for (int l = 0; l < bonds; ++l) {
    const int r = (l + 1) % n;
    if (r == l) continue;
    const double twist = (l == n - 1 && bc == Bc::antiperiodic) ? -1.0 : 1.0;
    H -= 0.5 * twist * jx * sx[l] * sx[r];
    H -= 0.5 * twist * jy * sy[l] * sy[r];
    H -= 0.5 * g * sz[l] * sz[r];
  }
  for (int l = 0; l < n; ++l) H -= 0.5 * h[l] * sz[l];
  return H;
}

inline CMat xy_chain(int n, double eta, double h, Bc bc) {
  return chain(n, (1 + eta) / 2, (1 - eta) / 2, 0.0, std::vector<double>(n, h), bc);
}

// Restriction of a full-space operator to basis labels `keep`.
inline Eigen::MatrixXd restrict(const CMat& H, const std::vector<long>& keep) {
  Eigen::MatrixXd out(keep.size(), keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j) out(i, j) = H(keep[i], keep[j]).real();
  return out;
}

inline std::vector<long> parity_labels(int n, int parity) {
  std::vector<long> out;
  for (long s = 0; s < (1L << n); ++s)
    if (__builtin_popcountl(s) % 2 == parity) out.push_back(s);
  return out;
}

}  // namespace oracle
