#include "xyrevival/ed/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "xyrevival/error.hpp"

namespace xyrevival::ed {
namespace {

struct Bond {
  int a;
  int b;
  double sign;  // applied to the x and y couplings
};

std::vector<Bond> bonds_for(int n_sites, Boundary boundary) {
  std::vector<Bond> bonds;
  for (int l = 0; l + 1 < n_sites; ++l) bonds.push_back({l, l + 1, 1.0});
  if (boundary != Boundary::open)
    bonds.push_back({n_sites - 1, 0, boundary == Boundary::antiperiodic ? -1.0 : 1.0});
  return bonds;
}

inline double sz(BasisState s, int l) { return ((s >> l) & 1U) ? -1.0 : 1.0; }

void check_capacity(std::size_t dim, const BuildOptions& options) {
  if (dim > options.max_dimension)
    throw CapacityError("Hilbert space dimension " + std::to_string(dim) +
                        " exceeds the configured cap " + std::to_string(options.max_dimension));
}

}  // namespace

double diagonal_element(const CouplingSet& c, int n_sites, BasisState s) {
  double e = 0.0;
  for (int l = 0; l < n_sites; ++l) e -= 0.5 * c.fields[l] * sz(s, l);
  if (c.g != 0.0)
    for (const Bond& b : bonds_for(n_sites, c.boundary)) e -= 0.5 * c.g * sz(s, b.a) * sz(s, b.b);
  return e;
}

SpinHamiltonian build_hamiltonian(const CouplingSet& couplings, SpinBasis basis,
                                  const BuildOptions& options) {
  const int n = basis.n_sites();
  if (static_cast<int>(couplings.fields.size()) != n)
    throw InvalidArgument("need one field value per site");
  if (n < 2 && couplings.boundary != Boundary::open)
    throw InvalidArgument("closed boundaries need at least two sites");
  check_capacity(basis.size(), options);

  const auto bonds = bonds_for(n, couplings.boundary);
  const std::size_t dim = basis.size();
  std::vector<int> outer(dim + 1, 0);
  std::vector<int> inner;
  std::vector<double> values;
  inner.reserve(dim * (bonds.size() + 1));
  values.reserve(dim * (bonds.size() + 1));

  std::vector<std::pair<int, double>> row;
  for (std::size_t i = 0; i < dim; ++i) {
    const BasisState s = basis.state(i);
    row.clear();
    row.emplace_back(static_cast<int>(i), diagonal_element(couplings, n, s));
    for (const Bond& b : bonds) {
      const bool equal = ((s >> b.a) & 1U) == ((s >> b.b) & 1U);
      const double amp =
          -0.5 * b.sign * (couplings.jx + (equal ? -couplings.jy : couplings.jy));
      if (amp == 0.0) continue;
      const BasisState t = s ^ (BasisState{1} << b.a) ^ (BasisState{1} << b.b);
      if (const auto j = basis.index_of(t)) row.emplace_back(static_cast<int>(*j), amp);
    }
    std::sort(row.begin(), row.end());
    for (std::size_t r = 0; r < row.size(); ++r) {
      if (!inner.empty() && static_cast<std::size_t>(outer[i]) < inner.size() &&
          inner.back() == row[r].first) {
        values.back() += row[r].second;
      } else {
        inner.push_back(row[r].first);
        values.push_back(row[r].second);
      }
    }
    outer[i + 1] = static_cast<int>(inner.size());
  }

  SpinHamiltonian h{std::move(basis), couplings, SparseMatrix(), false};
  h.matrix = Eigen::Map<const SparseMatrix>(static_cast<Eigen::Index>(dim),
                                            static_cast<Eigen::Index>(dim),
                                            static_cast<Eigen::Index>(inner.size()),
                                            outer.data(), inner.data(), values.data());
  h.matrix.makeCompressed();
  return h;
}

SpinHamiltonian build_xy_hamiltonian(int n_sites, double eta, std::vector<double> fields,
                                     Boundary boundary, Sector sector,
                                     const BuildOptions& options) {
  if (n_sites < 1 || n_sites > kMaxSites) throw InvalidArgument("invalid chain length");
  check_capacity(SpinBasis::count(n_sites, sector), options);
  CouplingSet c;
  c.jx = 0.5 * (1.0 + eta);
  c.jy = 0.5 * (1.0 - eta);
  c.g = 0.0;
  c.fields = std::move(fields);
  c.boundary = boundary;
  return build_hamiltonian(c, SpinBasis(n_sites, sector), options);
}

SpinHamiltonian build_xz_hamiltonian(int n_sites, double g, double h, Boundary boundary,
                                     int max_flips, Parity parity,
                                     const BuildOptions& options) {
  if (n_sites < 2 || n_sites > kMaxSites) throw InvalidArgument("invalid chain length");
  if (max_flips < 0) throw InvalidArgument("max_flips must be non-negative");
  Sector sector{parity, max_flips};
  check_capacity(SpinBasis::count(n_sites, sector), options);
  CouplingSet c;
  c.jx = 1.0;
  c.jy = 0.0;
  c.g = g;
  c.fields.assign(n_sites, h);
  c.boundary = boundary;
  SpinHamiltonian ham = build_hamiltonian(c, SpinBasis(n_sites, sector), options);
  ham.truncation_warning = max_flips >= n_sites;
  return ham;
}

double hermiticity_defect(const SpinHamiltonian& h) {
  const SparseMatrix diff = h.matrix - SparseMatrix(h.matrix.transpose());
  double worst = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(diff, k); it; ++it)
      worst = std::max(worst, std::abs(it.value()));
  return worst;
}

void apply(const SpinHamiltonian& h, const ComplexVector& x, ComplexVector& y) {
  const auto& m = h.matrix;
  const int* outer = m.outerIndexPtr();
  const int* inner = m.innerIndexPtr();
  const double* val = m.valuePtr();
  y.resize(x.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::complex<double> acc(0.0, 0.0);
    for (int p = outer[i]; p < outer[i + 1]; ++p) acc += val[p] * x[inner[p]];
    y[i] = acc;
  }
}

double energy_expectation(const SpinHamiltonian& h, const ComplexVector& x) {
  ComplexVector hx;
  apply(h, x, hx);
  return x.dot(hx).real() / x.squaredNorm();
}

}  // namespace xyrevival::ed
