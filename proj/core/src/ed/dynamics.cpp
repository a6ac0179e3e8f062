#include "xyrevival/ed/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "xyrevival/ed/disorder.hpp"
#include "xyrevival/error.hpp"

namespace xyrevival::ed {
namespace {

bool finite(const ChainParams& p) {
  return std::isfinite(p.eta) && std::isfinite(p.h) && std::isfinite(p.g) && std::isfinite(p.epsilon);
}

double binary_entropy_from_eigenvalue(double lambda) {
  double s = 0.0;
  for (double p : {lambda, 1.0 - lambda})
    if (p > 0.0) s -= p * std::log(p);
  return s;
}

// Real and imaginary parts are multiplied separately to keep the dense
// product real.
ComplexVector dense_state(const DenseEigensystem& eig, const SpectralDecomposition& d, double t) {
  const Eigen::Index n = eig.energies.size();
  RealVector re(n), im(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::complex<double> c = d.amplitudes[i] * std::polar(1.0, -eig.energies[i] * t);
    re[i] = c.real();
    im[i] = c.imag();
  }
  const RealVector out_re = eig.vectors * re;
  const RealVector out_im = eig.vectors * im;
  ComplexVector out(n);
  for (Eigen::Index i = 0; i < n; ++i) out[i] = {out_re[i], out_im[i]};
  return out;
}

}  // namespace

void EdQuenchSpec::validate() const {
  if (n_sites < 1 || n_sites > kMaxSites)
    throw InvalidArgument("chain length must lie in 1.." + std::to_string(kMaxSites));
  if (n_sites < 2 && boundary != Boundary::open)
    throw InvalidArgument("closed boundaries need at least two sites");
  if (!finite(initial) || !finite(quench)) throw InvalidArgument("non-finite model parameter");
  if (initial.epsilon < 0.0 || quench.epsilon < 0.0)
    throw InvalidArgument("disorder amplitude must be non-negative");
  if (max_flips && (*max_flips < 0 || *max_flips > n_sites))
    throw InvalidArgument("max_flips must lie in 0..N");
}

std::vector<double> site_fields(const ChainParams& p, int n_sites, std::uint64_t seed) {
  return disorder_field(p.h, p.epsilon, seed, n_sites).fields();
}

SpinHamiltonian build_chain_hamiltonian(const ChainParams& p, int n_sites, Boundary boundary,
                                        Sector sector, std::uint64_t seed,
                                        const BuildOptions& options) {
  const std::size_t dim = SpinBasis::count(n_sites, sector);
  if (dim > options.max_dimension)
    throw CapacityError("Hilbert space dimension " + std::to_string(dim) +
                        " exceeds the configured cap " + std::to_string(options.max_dimension));
  CouplingSet c;
  c.jx = 0.5 * (1.0 + p.eta);
  c.jy = 0.5 * (1.0 - p.eta);
  c.g = p.g;
  c.fields = site_fields(p, n_sites, seed);
  c.boundary = boundary;
  SpinHamiltonian h = build_hamiltonian(c, SpinBasis(n_sites, sector), options);
  h.truncation_warning = sector.max_flips.has_value() && *sector.max_flips >= n_sites;
  return h;
}

QuenchEvolver::QuenchEvolver(SpinHamiltonian quench, RealVector psi0, EvolutionOptions options)
    : h_(std::move(quench)), psi0_(std::move(psi0)), options_(options) {
  if (static_cast<std::size_t>(psi0_.size()) != h_.dimension())
    throw InvalidArgument("initial state dimension does not match the Hamiltonian");
  if (std::abs(psi0_.norm() - 1.0) > 1e-8) throw InvalidArgument("initial state is not normalized");
  if (h_.dimension() <= options_.dense_cap) {
    eig_ = diagonalize(h_, options_.dense_cap);
    decomposition_ = spectral_decomposition(*eig_, psi0_.cast<std::complex<double>>());
  } else {
    chebyshev_.emplace(h_, ChebyshevOptions{options_.chebyshev_tolerance});
  }
}

ComplexVector QuenchEvolver::state_at(double t) const {
  if (t < 0.0) throw InvalidArgument("negative time");
  if (eig_) return dense_state(*eig_, *decomposition_, t);
  return chebyshev_->step(psi0_.cast<std::complex<double>>(), t);
}

double QuenchEvolver::loschmidt_echo(double t) const {
  if (t < 0.0) throw InvalidArgument("negative time");
  if (decomposition_) return std::clamp(loschmidt_echo_ed(*decomposition_, t), 0.0, 1.0);
  const double ts[] = {t};
  return std::clamp(std::norm(chebyshev_->return_amplitudes(psi0_, ts)[0]), 0.0, 1.0);
}

std::vector<TimeSeries> QuenchEvolver::evolve_series(std::span<const double> times,
                                                     std::span<const Observable> observables) const {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0.0) throw InvalidArgument("negative time");
    if (i > 0 && times[i] <= times[i - 1]) throw InvalidArgument("times must increase strictly");
  }
  std::vector<TimeSeries> out;
  if (observables.empty()) return out;

  bool want_state = false;
  for (Observable o : observables)
    want_state |= o == Observable::magnetization || o == Observable::entropy;

  std::vector<double> le(times.size(), 0.0), mu, entropy;
  if (decomposition_) {
    for (std::size_t i = 0; i < times.size(); ++i) le[i] = loschmidt_echo_ed(*decomposition_, times[i]);
  } else {
    const auto amps = chebyshev_->return_amplitudes(psi0_, times);
    for (std::size_t i = 0; i < times.size(); ++i) le[i] = std::norm(amps[i]);
  }
  for (double& v : le) v = std::clamp(v, 0.0, 1.0);

  if (want_state) {
    mu.resize(times.size());
    entropy.resize(times.size());
    ComplexVector psi = psi0_.cast<std::complex<double>>();
    double t_prev = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (eig_) {
        psi = dense_state(*eig_, *decomposition_, times[i]);
      } else {
        psi = chebyshev_->step(psi, times[i] - t_prev);
        t_prev = times[i];
      }
      mu[i] = magnetization(h_.basis, psi);
      entropy[i] = single_spin_entropy(h_.basis, psi);
    }
  }

  for (Observable o : observables) {
    TimeSeries s;
    s.label = o;
    s.t.assign(times.begin(), times.end());
    switch (o) {
      case Observable::loschmidt_echo: s.values = le; break;
      case Observable::log_loschmidt_echo:
        s.values.resize(le.size());
        for (std::size_t i = 0; i < le.size(); ++i) {
          s.values[i] = le[i] > 0.0 ? std::log(le[i]) : -std::numeric_limits<double>::infinity();
          s.contains_neg_infinity |= std::isinf(s.values[i]);
        }
        break;
      case Observable::magnetization: s.values = mu; break;
      case Observable::entropy: s.values = entropy; break;
    }
    out.push_back(std::move(s));
  }
  return out;
}

PreparedQuench prepare_quench(const EdQuenchSpec& spec, const EvolutionOptions& options) {
  spec.validate();
  const BuildOptions build{spec.max_dimension};
  GroundStateOptions gs_options;
  gs_options.dense_cap = options.dense_cap;

  std::vector<Parity> candidates;
  if (spec.parity)
    candidates.push_back(*spec.parity);
  else
    candidates = {Parity::even, Parity::odd};

  std::optional<Sector> best_sector;
  std::optional<GroundState> best;
  for (Parity p : candidates) {
    const Sector sector{p, spec.max_flips};
    if (SpinBasis::count(spec.n_sites, sector) == 0) continue;
    const SpinHamiltonian h1 =
        build_chain_hamiltonian(spec.initial, spec.n_sites, spec.boundary, sector, spec.seed, build);
    GroundState gs = ground_state(h1, gs_options);
    if (!best || gs.energy < best->energy - gs_options.degeneracy_tol) {
      best = std::move(gs);
      best_sector = sector;
    }
  }
  if (!best) throw InvalidArgument("requested sector is empty");

  SpinHamiltonian h2 =
      build_chain_hamiltonian(spec.quench, spec.n_sites, spec.boundary, *best_sector, spec.seed, build);
  RealVector psi0 = best->vector;
  return PreparedQuench{*best_sector, std::move(*best),
                        QuenchEvolver(std::move(h2), std::move(psi0), options)};
}

TruncationConvergence truncation_convergence(const EdQuenchSpec& spec, std::span<const double> times,
                                             int first_max_flips, int last_max_flips,
                                             double tolerance, const EvolutionOptions& options) {
  if (first_max_flips < 0 || last_max_flips < first_max_flips)
    throw InvalidArgument("invalid truncation range");
  const Observable echo[] = {Observable::loschmidt_echo};
  TruncationConvergence out;
  std::vector<double> previous;
  for (int m = first_max_flips; m <= last_max_flips; m += 2) {
    EdQuenchSpec s = spec;
    s.max_flips = m;
    s.parity = spec.parity.value_or(Parity::even);
    const PreparedQuench pq = prepare_quench(s, options);
    std::vector<double> le = pq.evolver.evolve_series(times, echo).front().values;
    TruncationStep step{m, pq.evolver.hamiltonian().dimension(), std::nullopt};
    if (!previous.empty()) {
      double change = 0.0;
      for (std::size_t i = 0; i < le.size(); ++i) change = std::max(change, std::abs(le[i] - previous[i]));
      step.change = change;
      if (change < tolerance) {
        out.steps.push_back(step);
        out.converged_max_flips = m - 2;
        return out;
      }
    }
    out.steps.push_back(step);
    previous = std::move(le);
  }
  return out;
}

ComplexVector evolve_state(const SpinHamiltonian& h, const ComplexVector& psi0, double t,
                           const EvolutionOptions& options) {
  if (t < 0.0) throw InvalidArgument("negative time");
  if (static_cast<std::size_t>(psi0.size()) != h.dimension())
    throw InvalidArgument("state dimension does not match the Hamiltonian");
  if (h.dimension() <= options.dense_cap) {
    const DenseEigensystem eig = diagonalize(h, options.dense_cap);
    return dense_state(eig, spectral_decomposition(eig, psi0), t);
  }
  return ChebyshevPropagator(h, ChebyshevOptions{options.chebyshev_tolerance}).step(psi0, t);
}

double magnetization(const SpinBasis& basis, const ComplexVector& psi) {
  if (static_cast<std::size_t>(psi.size()) != basis.size())
    throw InvalidArgument("state dimension does not match the basis");
  double flips = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i)
    flips += std::norm(psi[static_cast<Eigen::Index>(i)]) * std::popcount(basis.state(i));
  return flips / (basis.n_sites() * psi.squaredNorm());
}

double site_entropy(const SpinBasis& basis, const ComplexVector& psi, int site) {
  if (site < 0 || site >= basis.n_sites()) throw InvalidArgument("site out of range");
  if (static_cast<std::size_t>(psi.size()) != basis.size())
    throw InvalidArgument("state dimension does not match the basis");
  const BasisState bit = BasisState{1} << site;
  double p_up = 0.0, p_down = 0.0;
  std::complex<double> coherence(0.0, 0.0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const BasisState s = basis.state(i);
    const std::complex<double> a = psi[static_cast<Eigen::Index>(i)];
    if (s & bit) {
      p_down += std::norm(a);
      continue;
    }
    p_up += std::norm(a);
    if (const auto j = basis.index_of(s | bit))
      coherence += a * std::conj(psi[static_cast<Eigen::Index>(*j)]);
  }
  const double norm = p_up + p_down;
  const double diff = (p_up - p_down) / norm;
  const double off = std::abs(coherence) / norm;
  const double r = std::min(1.0, std::sqrt(diff * diff + 4.0 * off * off));
  return binary_entropy_from_eigenvalue(0.5 * (1.0 + r));
}

double single_spin_entropy(const SpinBasis& basis, const ComplexVector& psi) {
  double s = 0.0;
  for (int l = 0; l < basis.n_sites(); ++l) s += site_entropy(basis, psi, l);
  return s / basis.n_sites();
}

}  // namespace xyrevival::ed
