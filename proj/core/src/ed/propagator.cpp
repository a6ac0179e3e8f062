#include "xyrevival/ed/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "xyrevival/error.hpp"

namespace xyrevival::ed {
namespace {

// (-i)^n
std::complex<double> minus_i_power(int n) {
  switch (n & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

int recurrence_start(double x, int n_max) {
  return std::max(n_max, static_cast<int>(std::ceil(x))) + 40 +
         static_cast<int>(std::ceil(12.0 * std::cbrt(x)));
}

// Smallest K with sum_{n > K} |J_n(x)| < tol.
int truncation_order(double x, double tol) {
  if (x == 0.0) return 0;
  const int m = recurrence_start(x, 0);
  const std::vector<double> j = bessel_j_sequence(x, m);
  double tail = 0.0;
  for (int n = m; n >= 0; --n) {
    tail += 2.0 * std::abs(j[n]);
    if (tail >= tol) return std::min(n + 1, m);
  }
  return 0;
}

template <typename Vec>
void apply_scaled(const SparseMatrix& m, double center, double inv_half_width, const Vec& x,
                  Vec& y) {
  const int* outer = m.outerIndexPtr();
  const int* inner = m.innerIndexPtr();
  const double* val = m.valuePtr();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    typename Vec::Scalar acc = -center * x[i];
    for (int p = outer[i]; p < outer[i + 1]; ++p) acc += val[p] * x[inner[p]];
    y[i] = acc * inv_half_width;
  }
}

}  // namespace

SpectralBounds gershgorin_bounds(const SparseMatrix& m) {
  if (m.rows() == 0) throw InvalidArgument("empty matrix");
  SpectralBounds b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (Eigen::Index i = 0; i < m.outerSize(); ++i) {
    double diag = 0.0, radius = 0.0;
    for (SparseMatrix::InnerIterator it(m, i); it; ++it) {
      if (it.col() == i)
        diag += it.value();
      else
        radius += std::abs(it.value());
    }
    b.lower = std::min(b.lower, diag - radius);
    b.upper = std::max(b.upper, diag + radius);
  }
  return b;
}

std::vector<double> bessel_j_sequence(double x, int n_max) {
  if (x < 0.0) throw InvalidArgument("bessel_j_sequence needs x >= 0");
  if (n_max < 0) throw InvalidArgument("bessel_j_sequence needs n_max >= 0");
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const int start = recurrence_start(x, n_max);
  std::vector<double> j(static_cast<std::size_t>(start) + 2, 0.0);
  j[start + 1] = 0.0;
  j[start] = 1e-300;
  for (int n = start; n >= 1; --n) {
    j[n - 1] = 2.0 * n / x * j[n] - j[n + 1];
    if (std::abs(j[n - 1]) > 1e250) {
      for (int m = n - 1; m <= start; ++m) j[m] *= 1e-250;
    }
  }
  double norm = j[0];
  for (int n = 2; n <= start; n += 2) norm += 2.0 * j[n];
  for (int n = 0; n <= n_max; ++n) out[n] = j[n] / norm;
  return out;
}

ChebyshevPropagator::ChebyshevPropagator(const SpinHamiltonian& h, ChebyshevOptions options)
    : h_(&h), options_(options) {
  if (options.tolerance <= 0.0) throw InvalidArgument("Chebyshev tolerance must be positive");
  const SpectralBounds b = gershgorin_bounds(h.matrix);
  center_ = 0.5 * (b.upper + b.lower);
  half_width_ = std::max(0.5 * (b.upper - b.lower), 1e-12) * (1.0 + options.padding);
}

int ChebyshevPropagator::order_for(double dt) const {
  return truncation_order(half_width_ * std::abs(dt), options_.tolerance);
}

std::vector<double> ChebyshevPropagator::coefficients(double dt) const {
  const int k = order_for(dt);
  std::vector<double> c = bessel_j_sequence(half_width_ * dt, k);
  for (std::size_t n = 1; n < c.size(); ++n) c[n] *= 2.0;
  return c;
}

ComplexVector ChebyshevPropagator::step(const ComplexVector& psi, double dt) const {
  if (dt < 0.0) throw InvalidArgument("negative time step");
  if (static_cast<std::size_t>(psi.size()) != h_->dimension())
    throw InvalidArgument("state dimension does not match the Hamiltonian");
  if (dt == 0.0) return psi;
  const std::vector<double> c = coefficients(dt);
  const double inv_a = 1.0 / half_width_;
  const Eigen::Index dim = psi.size();

  ComplexVector prev = psi, cur(dim), next(dim);
  ComplexVector out = c[0] * psi;
  if (c.size() > 1) {
    apply_scaled(h_->matrix, center_, inv_a, prev, cur);
    out += (c[1] * minus_i_power(1)) * cur;
  }
  for (std::size_t n = 2; n < c.size(); ++n) {
    apply_scaled(h_->matrix, center_, inv_a, cur, next);
    next = 2.0 * next - prev;
    out += (c[n] * minus_i_power(static_cast<int>(n))) * next;
    std::swap(prev, cur);
    std::swap(cur, next);
  }
  return out * std::polar(1.0, -center_ * dt);
}

std::vector<std::complex<double>> ChebyshevPropagator::return_amplitudes(
    const RealVector& psi0, std::span<const double> times) const {
  if (static_cast<std::size_t>(psi0.size()) != h_->dimension())
    throw InvalidArgument("state dimension does not match the Hamiltonian");
  double t_max = 0.0;
  for (double t : times) {
    if (t < 0.0) throw InvalidArgument("negative time");
    t_max = std::max(t_max, t);
  }
  const int k = order_for(t_max);
  const double inv_a = 1.0 / half_width_;

  // mu_n = <psi0| T_n |psi0> for n = 0 .. k via mu_{2n} = 2<p_n|p_n> - mu_0 and
  // mu_{2n+1} = 2<p_{n+1}|p_n> - mu_1.
  std::vector<double> mu(static_cast<std::size_t>(k) + 2, 0.0);
  RealVector prev = psi0, cur(psi0.size()), next(psi0.size());
  mu[0] = prev.squaredNorm();
  if (k >= 1) {
    apply_scaled(h_->matrix, center_, inv_a, prev, cur);
    mu[1] = cur.dot(prev);
    if (k >= 2) mu[2] = 2.0 * cur.squaredNorm() - mu[0];
  }
  for (int n = 1; 2 * n + 1 <= k; ++n) {
    apply_scaled(h_->matrix, center_, inv_a, cur, next);
    next = 2.0 * next - prev;
    mu[2 * n + 1] = 2.0 * next.dot(cur) - mu[1];
    mu[2 * n + 2] = 2.0 * next.squaredNorm() - mu[0];
    std::swap(prev, cur);
    std::swap(cur, next);
  }

  std::vector<std::complex<double>> out;
  out.reserve(times.size());
  for (double t : times) {
    const int kt = std::min(order_for(t), k);
    const std::vector<double> j = bessel_j_sequence(half_width_ * t, kt);
    std::complex<double> acc = j[0] * mu[0];
    for (int n = 1; n <= kt; ++n) acc += (2.0 * j[n] * mu[n]) * minus_i_power(n);
    out.push_back(acc * std::polar(1.0, -center_ * t));
  }
  return out;
}

}  // namespace xyrevival::ed
