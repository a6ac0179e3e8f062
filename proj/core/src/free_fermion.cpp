#include "xyrevival/free_fermion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "xyrevival/error.hpp"

namespace xyrevival::ff {
namespace {

constexpr double kVanishingFactor = 1e-30;

struct PairFactor {
  double value;      // 1 - A sin^2(Lambda t)
  double deficit;    // A sin^2(Lambda t)
};

// 1 - A sin^2, switching to cos^2 + cos^2(2 chi) sin^2 when A sin^2 -> 1 so
// that the factor keeps its relative accuracy near zero.
PairFactor pair_factor(const PairedMode& m, double t) {
  const double s = std::sin(m.lambda * t);
  const double deficit = m.amplitude * s * s;
  if (deficit < 0.5) return {1.0 - deficit, deficit};
  const double c = std::cos(m.lambda * t);
  const double c2chi = std::cos(2.0 * m.chi);
  return {c * c + c2chi * c2chi * s * s, deficit};
}

double occupation(double theta, double chi, double lambda, double t) {
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sc = std::sin(chi), cc = std::cos(chi);
  return st * st * cc * cc + ct * ct * sc * sc -
         2.0 * st * ct * sc * cc * std::cos(2.0 * lambda * t);
}

}  // namespace

void QuenchSpec::validate() const {
  initial.validate();
  quench.validate();
  if (initial.n_sites != quench.n_sites)
    throw InvalidArgument("initial and quench Hamiltonians must share the chain length");
  if (initial.q != quench.q)
    throw InvalidArgument("initial and quench Hamiltonians must share the boundary sector");
}

ModeTable build_mode_table(const QuenchSpec& spec) {
  spec.validate();
  const MomentumGrid g1 = momentum_grid(spec.initial);
  const MomentumGrid g2 = momentum_grid(spec.quench);

  ModeTable table;
  table.n_sites = spec.quench.n_sites;
  table.q = spec.quench.q;
  table.paired.reserve(g2.paired.size());
  for (std::size_t idx : g2.paired) {
    const auto& m2 = g2.modes[idx];
    const auto& m1 = g1.modes[idx];
    PairedMode p;
    p.k = m2.k;
    p.lambda = m2.disp.lambda;
    p.theta_initial = m1.disp.theta;
    p.theta_quench = m2.disp.theta;
    p.chi = p.theta_quench - p.theta_initial;
    const double s = std::sin(2.0 * p.chi);
    p.amplitude = s * s;
    table.paired.push_back(p);
  }
  for (std::size_t idx : g2.unpaired) {
    const auto& m2 = g2.modes[idx];
    const auto& m1 = g1.modes[idx];
    UnpairedMode u;
    u.k = m2.k;
    u.lambda = m2.disp.lambda;
    u.theta_initial = m1.disp.theta;
    u.theta_quench = m2.disp.theta;
    u.chi = u.theta_quench - u.theta_initial;
    table.unpaired.push_back(u);
  }
  std::sort(table.unpaired.begin(), table.unpaired.end(),
            [](const UnpairedMode& a, const UnpairedMode& b) { return a.k < b.k; });
  return table;
}

double loschmidt_echo(const ModeTable& table, double t) {
  double result = 1.0;
  for (const auto& m : table.paired) result *= pair_factor(m, t).value;
  return result;
}

double log_loschmidt_echo(const ModeTable& table, double t) {
  double sum = 0.0;
  for (const auto& m : table.paired) {
    const PairFactor f = pair_factor(m, t);
    if (f.value <= kVanishingFactor) return -std::numeric_limits<double>::infinity();
    sum += f.deficit < 0.5 ? std::log1p(-f.deficit) : std::log(f.value);
  }
  return sum;
}

double magnetization(const ModeTable& table, double t) {
  double sum = 0.0;
  for (const auto& m : table.paired)
    sum += 2.0 * occupation(m.theta_quench, m.chi, m.lambda, t);
  for (const auto& u : table.unpaired)
    sum += occupation(u.theta_quench, u.chi, u.lambda, t);
  return sum / table.n_sites;
}

double single_spin_entropy(double mu) {
  constexpr double slack = 1e-12;
  if (mu < -slack || mu > 1.0 + slack)
    throw InvalidArgument("single-spin occupation outside [0, 1]: " + std::to_string(mu));
  mu = std::clamp(mu, 0.0, 1.0);
  auto term = [](double p) { return p > 0.0 ? -p * std::log(p) : 0.0; };
  return term(mu) + term(1.0 - mu);
}

std::vector<TimeSeries> evolve_series(const ModeTable& table, std::span<const double> times,
                                      const std::set<Observable>& observables) {
  std::vector<TimeSeries> out;
  if (observables.empty()) return out;

  const bool need_mu = observables.count(Observable::magnetization) ||
                       observables.count(Observable::entropy);
  std::vector<double> mu;
  if (need_mu) {
    mu.resize(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) mu[i] = magnetization(table, times[i]);
  }

  for (Observable obs : observables) {
    TimeSeries s;
    s.label = obs;
    s.t.assign(times.begin(), times.end());
    s.values.resize(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
      switch (obs) {
        case Observable::loschmidt_echo:
          s.values[i] = loschmidt_echo(table, times[i]);
          break;
        case Observable::log_loschmidt_echo:
          s.values[i] = log_loschmidt_echo(table, times[i]);
          if (std::isinf(s.values[i])) s.contains_neg_infinity = true;
          break;
        case Observable::magnetization:
          s.values[i] = mu[i];
          break;
        case Observable::entropy:
          s.values[i] = single_spin_entropy(mu[i]);
          break;
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<TimeSeries> evolve_series(const QuenchSpec& spec, const TimeGrid& grid,
                                      const std::set<Observable>& observables) {
  grid.validate();
  if (observables.empty()) return {};
  const ModeTable table = build_mode_table(spec);
  const auto times = grid.points();
  return evolve_series(table, times, observables);
}

TimeGrid default_time_grid(const ModeTable& table, double t_rev, double t_max) {
  if (!(t_max > 0.0)) throw InvalidArgument("default_time_grid needs t_max > 0");
  double lambda_max = 0.0;
  for (const auto& m : table.paired) lambda_max = std::max(lambda_max, m.lambda);
  for (const auto& u : table.unpaired) lambda_max = std::max(lambda_max, u.lambda);
  double spacing = std::numeric_limits<double>::infinity();
  if (lambda_max > 0.0) spacing = kPi / lambda_max / 20.0;
  if (t_rev > 0.0) spacing = std::min(spacing, t_rev / 200.0);
  if (!std::isfinite(spacing)) spacing = t_max / 1000.0;
  TimeGrid grid;
  grid.t_max = t_max;
  grid.n_samples = static_cast<std::size_t>(std::ceil(t_max / spacing)) + 1;
  return grid;
}

}  // namespace xyrevival::ff
