#pragma once

// Exact quench dynamics of the XY chain through its free-fermion solution.
// The initial state is the ground state of the initial Hamiltonian, written as
// a BCS product over (k, -k) pairs in the quench eigenbasis.

#include <complex>
#include <cstddef>
#include <set>
#include <span>
#include <vector>

#include "xyrevival/model.hpp"
#include "xyrevival/time_series.hpp"

namespace xyrevival::ff {

struct QuenchSpec {
  ModelParams initial;
  ModelParams quench;

  /// Both sides valid, same N and same q.
  void validate() const;
};

struct PairedMode {
  double k = 0.0;
  double lambda = 0.0;         // quench-Hamiltonian quasiparticle energy
  double theta_initial = 0.0;
  double theta_quench = 0.0;
  double chi = 0.0;            // theta_quench - theta_initial
  double amplitude = 0.0;      // A_k = sin^2(2 chi)
};

/// k = 0 or k = pi. Its occupation is conserved, so the initial state is an
/// eigenstate of the mode and only contributes a phase to the echo.
struct UnpairedMode {
  double k = 0.0;
  double lambda = 0.0;
  double theta_initial = 0.0;
  double theta_quench = 0.0;
  double chi = 0.0;
};

struct ModeTable {
  int n_sites = 0;
  int q = 0;
  std::vector<PairedMode> paired;    // ascending k in (0, pi)
  std::vector<UnpairedMode> unpaired;
};

ModeTable build_mode_table(const QuenchSpec& spec);

/// L(t) = prod_{k>0} (1 - A_k sin^2(Lambda_k t)).
double loschmidt_echo(const ModeTable& table, double t);

/// sum_{k>0} ln(1 - A_k sin^2(Lambda_k t)), evaluated term by term. Returns
/// -infinity when a factor is <= 1e-30.
double log_loschmidt_echo(const ModeTable& table, double t);

/// (1/N) sum over all N modes of <c_k^dagger c_k>(t), with theta taken in the
/// quench basis.
double magnetization(const ModeTable& table, double t);

/// Binary entropy -mu ln mu - (1 - mu) ln(1 - mu). Values within 1e-12 outside
/// [0, 1] are clamped; anything further out throws InvalidArgument.
double single_spin_entropy(double mu);

/// Evaluates the requested observables on grid.points(). Output order follows
/// the Observable enum. Entropy is derived from the magnetization.
std::vector<TimeSeries> evolve_series(const QuenchSpec& spec, const TimeGrid& grid,
                                      const std::set<Observable>& observables);

std::vector<TimeSeries> evolve_series(const ModeTable& table, std::span<const double> times,
                                      const std::set<Observable>& observables);

/// Grid on [0, t_max] fine enough to resolve revivals: spacing at most
/// min_k(pi / Lambda_k) / 20 and at most t_rev / 200.
TimeGrid default_time_grid(const ModeTable& table, double t_rev, double t_max);

// --- local disturbance -------------------------------------------------------

/// Omega_l(t) for a spin flip at the origin, sampled for every site offset
/// l = 0 .. N-1 and every time sample. Row-major [time][offset].
struct WavefrontField {
  int n_sites = 0;
  std::vector<double> times;
  std::vector<std::complex<double>> omega;

  std::complex<double> at(std::size_t time_index, int offset) const {
    return omega[time_index * static_cast<std::size_t>(n_sites) + offset];
  }
  double intensity(std::size_t time_index, int offset) const {
    return std::norm(at(time_index, offset));
  }
  /// sum_l |Omega_l(t_i)|^2
  double total_intensity(std::size_t time_index) const;
};

WavefrontField local_disturbance(const ModelParams& quench, std::span<const double> times);

/// First sample time at which |Omega_offset(t)|^2 reaches half of its maximum
/// over the sampled window. Returns NaN if the intensity is identically zero.
double front_arrival_time(const WavefrontField& field, int offset);

}  // namespace xyrevival::ff
