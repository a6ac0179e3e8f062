#pragma once

// Free-fermion description of the transverse-field XY chain
//
//   H = -1/2 sum_l [ (1+eta)/2 sx_l sx_{l+1} + (1-eta)/2 sy_l sy_{l+1} + h sz_l ]
//
// with cyclic boundary s_{N+1} = (-1)^q s_1. Energies and times are in units
// of the nearest-neighbour coupling with hbar = 1.

#include <cstddef>
#include <vector>

namespace xyrevival {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

struct ModelParams {
  int n_sites = 2;
  double eta = 1.0;  // anisotropy
  double h = 0.0;    // transverse field
  int q = 0;         // boundary sector, 0 or 1

  /// Throws InvalidArgument unless n_sites >= 2 and q is 0 or 1.
  void validate() const;
};

struct Dispersion {
  double epsilon = 0.0;  // h - cos k
  double lambda = 0.0;   // quasiparticle energy, >= 0
  double theta = 0.0;    // Bogoliubov angle
};

struct MomentumMode {
  int index = 0;  // n in k_n = pi (2n + 1 - q) / N
  double k = 0.0;
  Dispersion disp;
  bool paired = true;  // false when sin k = 0 (k = 0 or k = pi)
};

struct MomentumGrid {
  std::vector<MomentumMode> modes;     // all N momenta, ordered by n
  std::vector<std::size_t> paired;     // indices into modes with k in (0, pi), ascending k
  std::vector<std::size_t> unpaired;   // indices into modes with k in {0, pi}
};

/// Quantized momentum k_n reduced to (-pi, pi]. Well defined for any integer n
/// (periodic in n with period N).
double momentum(long long n, int n_sites, int q);

/// True when k_n is 0 or pi, i.e. the mode has no distinct partner -k_n.
bool is_unpaired(long long n, int n_sites, int q);

/// All N momenta of the sector with their dispersion data.
MomentumGrid momentum_grid(const ModelParams& params);

/// epsilon, Lambda and theta at momentum k.
///
/// theta = atan(eta sin k / (epsilon + Lambda)). Where that quotient is 0/0
/// (sin k = 0 with epsilon <= 0) the continuum limit is used: theta = 0 for
/// epsilon >= 0 and pi/2 for epsilon < 0.
Dispersion dispersion(double k, double eta, double h);

/// Same as dispersion() but with sin k and cos k supplied, so that the exact
/// values at k = 0, pi can be used.
Dispersion dispersion_from_trig(double sin_k, double cos_k, double eta, double h);

/// Group velocity |dLambda/dk| = |sin k (epsilon + eta^2 cos k)| / Lambda.
/// At gapless points (Lambda = 0) the limiting value is returned.
double group_velocity(double k, double eta, double h);

struct StationaryPoint {
  double k = 0.0;
  double v = 0.0;
  bool maximum = true;
};

struct VelocityProfile {
  std::vector<double> k;     // sample momenta in (0, pi)
  std::vector<double> v_of_k;
  double v_max = 0.0;
  double k_star = 0.0;
  std::vector<StationaryPoint> stationary_points;  // refined local extrema, ascending k
  bool degenerate = false;   // one-sided limits at a gapless point disagree
};

inline constexpr int kDefaultVelocityResolution = 100000;

/// Samples v_g on a uniform grid of (0, pi) and refines every local extremum
/// by golden-section search to relative tolerance 1e-10. Points within 1e-8 of
/// a zero of Lambda are excluded from the grid. Requires resolution >= 100.
VelocityProfile group_velocity_profile(double eta, double h,
                                       int resolution = kDefaultVelocityResolution);

/// Convenience wrapper returning group_velocity_profile(...).v_max.
double max_group_velocity(double eta, double h,
                          int resolution = kDefaultVelocityResolution);

/// First revival time N / (2 v_max). Throws InvalidArgument for v_max <= 0.
double revival_time_estimate(int n_sites, double v_max);

}  // namespace xyrevival
