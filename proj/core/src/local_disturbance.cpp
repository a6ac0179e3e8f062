#include <algorithm>
#include <cmath>
#include <limits>

#include "xyrevival/error.hpp"
#include "xyrevival/free_fermion.hpp"

namespace xyrevival::ff {

double WavefrontField::total_intensity(std::size_t time_index) const {
  double sum = 0.0;
  for (int l = 0; l < n_sites; ++l) sum += intensity(time_index, l);
  return sum;
}

WavefrontField local_disturbance(const ModelParams& quench, std::span<const double> times) {
  const MomentumGrid grid = momentum_grid(quench);
  const int n = quench.n_sites;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || times[i] < 0.0)
      throw InvalidArgument("local_disturbance needs finite non-negative times");
    if (i > 0 && !(times[i] > times[i - 1]))
      throw InvalidArgument("local_disturbance needs strictly increasing times");
  }

  // Modes in ascending k. k l = pi r l / N, so the phase e^{ikl} is an entry of
  // the 2N-th roots of unity indexed by (r l) mod 2N.
  std::vector<const MomentumMode*> modes;
  for (const auto& m : grid.modes) modes.push_back(&m);
  std::sort(modes.begin(), modes.end(),
            [](const MomentumMode* a, const MomentumMode* b) { return a->k < b->k; });
  std::vector<long long> numerators(modes.size());
  for (std::size_t j = 0; j < modes.size(); ++j)
    numerators[j] = std::llround(modes[j]->k * n / kPi);

  const long long two_n = 2LL * n;
  std::vector<std::complex<double>> roots(two_n);
  for (long long m = 0; m < two_n; ++m)
    roots[m] = std::polar(1.0, kPi * static_cast<double>(m) / n);

  WavefrontField field;
  field.n_sites = n;
  field.times.assign(times.begin(), times.end());
  field.omega.assign(times.size() * static_cast<std::size_t>(n), {0.0, 0.0});

  std::vector<std::complex<double>> bracket(modes.size());
  const std::complex<double> i_unit(0.0, 1.0);
  for (std::size_t ti = 0; ti < times.size(); ++ti) {
    const double t = times[ti];
    for (std::size_t j = 0; j < modes.size(); ++j) {
      const double lam = modes[j]->disp.lambda;
      const double th = modes[j]->disp.theta;
      const double s = std::sin(th), c = std::cos(th);
      const auto fwd = std::polar(1.0, lam * t);
      const auto bwd = std::conj(fwd);
      bracket[j] = fwd * (s * s) + bwd * (c * c) + i_unit * (bwd - fwd) * (s * c);
    }
    for (int l = 0; l < n; ++l) {
      std::complex<double> acc(0.0, 0.0);
      for (std::size_t j = 0; j < modes.size(); ++j) {
        long long idx = (numerators[j] * l) % two_n;
        if (idx < 0) idx += two_n;
        acc += roots[idx] * bracket[j];
      }
      field.omega[ti * static_cast<std::size_t>(n) + l] = acc / static_cast<double>(n);
    }
  }
  return field;
}

double front_arrival_time(const WavefrontField& field, int offset) {
  if (offset < 0 || offset >= field.n_sites)
    throw InvalidArgument("front_arrival_time offset out of range");
  double peak = 0.0;
  for (std::size_t i = 0; i < field.times.size(); ++i)
    peak = std::max(peak, field.intensity(i, offset));
  if (peak <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < field.times.size(); ++i)
    if (field.intensity(i, offset) >= 0.5 * peak) return field.times[i];
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace xyrevival::ff
