#include "xyrevival/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "xyrevival/error.hpp"

namespace xyrevival {
namespace {

// Reduces m = 2n + 1 - q modulo 2N into (-N, N].
long long reduced_numerator(long long n, int n_sites, int q) {
  const long long two_n = 2LL * n_sites;
  long long r = (2 * n + 1 - q) % two_n;
  if (r < 0) r += two_n;
  if (r > n_sites) r -= two_n;
  return r;
}

constexpr double kGapTolerance = 1e-8;
constexpr double kRefineRelTol = 1e-10;

template <typename F>
double golden_section(F&& f, double a, double b, bool maximize) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto g = [&](double x) { return maximize ? -f(x) : f(x); };
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double gc = g(c);
  double gd = g(d);
  for (int it = 0; it < 300; ++it) {
    if (b - a <= kRefineRelTol * std::max(std::abs(a) + std::abs(b), 1e-300) * 0.5)
      break;
    if (gc < gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - inv_phi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + inv_phi * (b - a);
      gd = g(d);
    }
  }
  return gc < gd ? c : d;
}

// Zeros of Lambda strictly inside (0, pi). For eta != 0 the gap can only close
// at k = 0 or k = pi, which are not part of the open sampling interval.
std::vector<double> interior_gap_zeros(double eta, double h) {
  std::vector<double> zeros;
  if (eta == 0.0 && std::abs(h) < 1.0) zeros.push_back(std::acos(h));
  return zeros;
}

}  // namespace

void ModelParams::validate() const {
  if (n_sites < 2)
    throw InvalidArgument("chain length must be at least 2, got " +
                          std::to_string(n_sites));
  if (q != 0 && q != 1)
    throw InvalidArgument("boundary sector q must be 0 or 1, got " + std::to_string(q));
}

double momentum(long long n, int n_sites, int q) {
  return kPi * static_cast<double>(reduced_numerator(n, n_sites, q)) / n_sites;
}

bool is_unpaired(long long n, int n_sites, int q) {
  const long long r = reduced_numerator(n, n_sites, q);
  return r == 0 || r == n_sites;
}

Dispersion dispersion_from_trig(double sin_k, double cos_k, double eta, double h) {
  Dispersion d;
  d.epsilon = h - cos_k;
  const double gap = eta * sin_k;
  d.lambda = std::hypot(d.epsilon, gap);
  if (d.epsilon >= 0.0) {
    const double denom = d.epsilon + d.lambda;
    d.theta = denom > 0.0 ? std::atan(gap / denom) : 0.0;
  } else if (gap == 0.0) {
    d.theta = kPi / 2;
  } else {
    // tan(theta) = gap / (eps + Lambda) = (Lambda - eps) / gap; the second form
    // avoids the cancellation in eps + Lambda when eps < 0.
    d.theta = std::atan((d.lambda - d.epsilon) / gap);
  }
  return d;
}

Dispersion dispersion(double k, double eta, double h) {
  return dispersion_from_trig(std::sin(k), std::cos(k), eta, h);
}

MomentumGrid momentum_grid(const ModelParams& params) {
  params.validate();
  const int n = params.n_sites;
  MomentumGrid grid;
  grid.modes.reserve(n);
  for (int i = 0; i < n; ++i) {
    MomentumMode mode;
    mode.index = i;
    const long long r = reduced_numerator(i, n, params.q);
    mode.paired = !(r == 0 || r == n);
    if (r == 0) {
      mode.k = 0.0;
      mode.disp = dispersion_from_trig(0.0, 1.0, params.eta, params.h);
    } else if (r == n) {
      mode.k = kPi;
      mode.disp = dispersion_from_trig(0.0, -1.0, params.eta, params.h);
    } else {
      mode.k = kPi * static_cast<double>(r) / n;
      mode.disp = dispersion(mode.k, params.eta, params.h);
    }
    grid.modes.push_back(mode);
  }
  for (std::size_t i = 0; i < grid.modes.size(); ++i) {
    const auto& m = grid.modes[i];
    if (!m.paired)
      grid.unpaired.push_back(i);
    else if (m.k > 0.0)
      grid.paired.push_back(i);
  }
  std::sort(grid.paired.begin(), grid.paired.end(), [&](std::size_t a, std::size_t b) {
    return grid.modes[a].k < grid.modes[b].k;
  });
  return grid;
}

double group_velocity(double k, double eta, double h) {
  const double s = std::sin(k);
  const double c = std::cos(k);
  const Dispersion d = dispersion_from_trig(s, c, eta, h);
  if (d.lambda > 1e-300) return std::abs(s * (d.epsilon + eta * eta * c)) / d.lambda;
  // Gapless point. For eta != 0 this is k = 0 (h = 1) or k = pi (h = -1), where
  // Lambda ~ |eta| |k - k0| and the slope tends to |eta|. For eta = 0,
  // Lambda = |h - cos k| and the slope is |sin k| on both sides.
  if (eta != 0.0) return std::abs(eta);
  return std::abs(s);
}

VelocityProfile group_velocity_profile(double eta, double h, int resolution) {
  if (resolution < 100)
    throw InvalidArgument("velocity profile resolution must be >= 100");

  const auto zeros = interior_gap_zeros(eta, h);
  auto excluded = [&](double k) {
    return std::any_of(zeros.begin(), zeros.end(),
                       [&](double z) { return std::abs(k - z) < kGapTolerance; });
  };
  auto v = [&](double k) { return group_velocity(k, eta, h); };

  VelocityProfile prof;
  prof.k.reserve(resolution);
  prof.v_of_k.reserve(resolution);
  for (int i = 1; i < resolution; ++i) {
    const double k = kPi * i / resolution;
    if (excluded(k)) continue;
    prof.k.push_back(k);
    prof.v_of_k.push_back(v(k));
  }

  const std::size_t n = prof.k.size();
  const double lo_edge = kGapTolerance;
  const double hi_edge = kPi - kGapTolerance;
  for (std::size_t i = 0; i < n; ++i) {
    const double vi = prof.v_of_k[i];
    const bool left_lower = i == 0 || prof.v_of_k[i - 1] <= vi;
    const bool right_lower = i + 1 == n || prof.v_of_k[i + 1] < vi;
    const bool left_higher = i > 0 && prof.v_of_k[i - 1] >= vi;
    const bool right_higher = i + 1 < n && prof.v_of_k[i + 1] > vi;
    const double a = i == 0 ? lo_edge : prof.k[i - 1];
    const double b = i + 1 == n ? hi_edge : prof.k[i + 1];
    if (left_lower && right_lower) {
      const double ks = golden_section(v, a, b, true);
      StationaryPoint p{ks, v(ks), true};
      if (p.v < vi) p = {prof.k[i], vi, true};
      prof.stationary_points.push_back(p);
    } else if (i > 0 && i + 1 < n && left_higher && right_higher) {
      const double ks = golden_section(v, a, b, false);
      prof.stationary_points.push_back({ks, v(ks), false});
    }
  }

  for (const auto& p : prof.stationary_points) {
    if (p.maximum && p.v > prof.v_max) {
      prof.v_max = p.v;
      prof.k_star = p.k;
    }
  }

  for (double z : zeros) {
    const double left = v(z - 2 * kGapTolerance);
    const double right = v(z + 2 * kGapTolerance);
    if (std::abs(left - right) > 1e-6 * std::max({1.0, left, right}))
      prof.degenerate = true;
  }
  return prof;
}

double max_group_velocity(double eta, double h, int resolution) {
  return group_velocity_profile(eta, h, resolution).v_max;
}

double revival_time_estimate(int n_sites, double v_max) {
  if (!(v_max > 0.0))
    throw InvalidArgument("revival time needs a positive maximal group velocity");
  return static_cast<double>(n_sites) / (2.0 * v_max);
}

}  // namespace xyrevival
