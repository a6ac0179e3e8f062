#include "xyrevival/revival.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "xyrevival/error.hpp"

namespace xyrevival {
namespace {

void check_series(const TimeSeries& s) {
  if (s.t.size() != s.values.size()) throw InvalidArgument("time and value lengths differ");
  for (std::size_t i = 1; i < s.t.size(); ++i)
    if (!(s.t[i] > s.t[i - 1])) throw InvalidArgument("sample times must increase strictly");
}

struct Run {
  std::size_t first;
  std::size_t last;
};

std::pair<std::vector<double>, std::vector<double>> unzip(
    std::span<const std::pair<double, double>> points) {
  std::vector<double> x, y;
  for (const auto& [a, b] : points) {
    x.push_back(a);
    y.push_back(b);
  }
  return {x, y};
}

void check_scaling_input(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw InvalidArgument("scaling fit needs at least three points");
  for (const auto& [n, t] : points)
    if (!std::isfinite(n) || !std::isfinite(t)) throw InvalidArgument("non-finite scaling point");
  const bool identical = std::all_of(points.begin(), points.end(),
                                     [&](const auto& p) { return p.first == points[0].first; });
  if (identical) throw InvalidArgument("scaling fit needs at least two distinct sizes");
}

double r_squared(const std::vector<double>& x, const std::vector<double>& y, double slope,
                 double intercept) {
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (slope * x[i] + intercept);
    ss_res += r * r;
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  return ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);
}

}  // namespace

SeriesStats series_stats(const TimeSeries& series, double burn_in) {
  check_series(series);
  if (!(burn_in >= 0.0)) throw InvalidArgument("burn-in must be non-negative");
  if (burn_in > 0.0 && (series.t.empty() || series.t.back() < 10.0 * burn_in))
    throw InvalidArgument("series must cover at least ten times the burn-in");
  SeriesStats st;
  st.burn_in = burn_in;
  double sum = 0.0;
  for (std::size_t i = 0; i < series.t.size(); ++i) {
    if (series.t[i] < burn_in) continue;
    if (!std::isfinite(series.values[i])) throw InvalidArgument("series contains non-finite values");
    sum += series.values[i];
    ++st.n_samples;
  }
  if (st.n_samples < kMinStatsSamples)
    throw InvalidArgument("statistics need at least " + std::to_string(kMinStatsSamples) +
                          " samples after burn-in, got " + std::to_string(st.n_samples));
  st.mean = sum / static_cast<double>(st.n_samples);
  double ss = 0.0;
  for (std::size_t i = 0; i < series.t.size(); ++i) {
    if (series.t[i] < burn_in) continue;
    const double d = series.values[i] - st.mean;
    ss += d * d;
  }
  st.std = std::sqrt(ss / static_cast<double>(st.n_samples));
  return st;
}

Detection detect_revivals(const TimeSeries& series, const SeriesStats& stats,
                          const DetectorOptions& options) {
  check_series(series);
  if (!(options.threshold_sigma > 0.0)) throw InvalidArgument("threshold must be positive");
  Detection out;
  if (!(stats.std > 0.0)) {
    out.degenerate = true;
    return out;
  }
  const double band = options.threshold_sigma * stats.std;

  std::vector<Run> runs;
  bool open = false;
  for (std::size_t i = 0; i < series.t.size(); ++i) {
    const bool outside =
        series.t[i] >= stats.burn_in && std::abs(series.values[i] - stats.mean) > band;
    if (outside && !open) {
      runs.push_back({i, i});
      open = true;
    } else if (outside) {
      runs.back().last = i;
    } else {
      open = false;
    }
  }

  double dead_time;
  if (options.dead_time)
    dead_time = *options.dead_time;
  else if (options.predicted_t_rev)
    dead_time = *options.predicted_t_rev / 10.0;
  else
    dead_time = 10.0 * series.step();

  std::vector<Run> merged;
  for (const Run& r : runs) {
    if (!merged.empty() && series.t[r.first] - series.t[merged.back().last] < dead_time)
      merged.back().last = r.last;
    else
      merged.push_back(r);
  }

  for (const Run& r : merged) {
    std::size_t peak = r.first;
    for (std::size_t i = r.first; i <= r.last; ++i)
      if (std::abs(series.values[i] - stats.mean) > std::abs(series.values[peak] - stats.mean))
        peak = i;
    const double dev = series.values[peak] - stats.mean;
    out.events.push_back({series.t[peak], std::abs(dev) / stats.std, dev >= 0.0 ? 1 : -1,
                          series.t[r.first], series.t[r.last]});
  }
  return out;
}

SpacingFit spacing_fit(std::span<const double> times) {
  if (times.size() < 2) throw InvalidArgument("spacing fit needs at least two events");
  const double n = static_cast<double>(times.size());
  double sp = 0.0, st = 0.0, spp = 0.0, spt = 0.0;
  for (std::size_t p = 0; p < times.size(); ++p) {
    const double x = static_cast<double>(p + 1);
    sp += x;
    st += times[p];
    spp += x * x;
    spt += x * times[p];
  }
  SpacingFit f;
  f.period = (n * spt - sp * st) / (n * spp - sp * sp);
  f.intercept = (st - f.period * sp) / n;
  for (std::size_t p = 0; p < times.size(); ++p)
    f.max_residual = std::max(
        f.max_residual, std::abs(times[p] - (f.period * static_cast<double>(p + 1) + f.intercept)));
  return f;
}

SpacingFit spacing_fit(std::span<const RevivalEvent> events) {
  std::vector<double> t;
  for (const RevivalEvent& e : events) t.push_back(e.t_peak);
  return spacing_fit(std::span<const double>(t));
}

ScalingFit scaling_fit(std::span<const std::pair<double, double>> points) {
  check_scaling_input(points);
  const auto [x, y] = unzip(points);
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  ScalingFit f;
  f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / n;
  f.r_squared = r_squared(x, y, f.slope, f.intercept);
  return f;
}

ScalingFit scaling_fit_through_origin(std::span<const std::pair<double, double>> points) {
  check_scaling_input(points);
  const auto [x, y] = unzip(points);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  ScalingFit f;
  f.slope = sxy / sxx;
  f.r_squared = r_squared(x, y, f.slope, 0.0);
  return f;
}

double visibility(const TimeSeries& series, const SeriesStats& stats, double predicted_t_rev,
                  const VisibilityWindow& window) {
  check_series(series);
  if (!(predicted_t_rev > 0.0)) throw InvalidArgument("predicted revival time must be positive");
  if (!(window.lower < window.upper)) throw InvalidArgument("empty visibility window");
  const double lo = window.lower * predicted_t_rev;
  const double hi = window.upper * predicted_t_rev;
  if (series.t.empty() || lo < series.t.front() || hi > series.t.back())
    throw InvalidArgument("visibility window lies outside the series span");
  if (!(stats.std > 0.0)) return 0.0;
  double best = 0.0;
  for (std::size_t i = 0; i < series.t.size(); ++i)
    if (series.t[i] >= lo && series.t[i] <= hi)
      best = std::max(best, std::abs(series.values[i] - stats.mean) / stats.std);
  return best;
}

VisibilityScan visibility_scan(const std::map<double, TimeSeries>& series_by_param,
                               double predicted_t_rev, double burn_in, double threshold_sigma,
                               const VisibilityWindow& window) {
  VisibilityScan scan;
  const TimeSeries* reference = nullptr;
  for (const auto& [param, s] : series_by_param) {
    if (reference && reference->t != s.t) throw InvalidArgument("series do not share a time grid");
    reference = &s;
    const double v = visibility(s, series_stats(s, burn_in), predicted_t_rev, window);
    if (!scan.points.empty() && v > scan.points.back().second) scan.monotone_nonincreasing = false;
    if (!scan.first_below_threshold && v <= threshold_sigma) scan.first_below_threshold = param;
    scan.points.emplace_back(param, v);
  }
  return scan;
}

RevivalReport analyze_revivals(const TimeSeries& series, std::optional<double> predicted_t_rev,
                               const RevivalAnalysisOptions& options) {
  if (predicted_t_rev && !(*predicted_t_rev > 0.0))
    throw InvalidArgument("predicted revival time must be positive");
  const double burn_in =
      options.burn_in ? *options.burn_in : (predicted_t_rev ? *predicted_t_rev / 10.0 : 0.0);

  RevivalReport report;
  report.predicted_t_rev = predicted_t_rev;
  report.stats = series_stats(series, burn_in);
  const Detection d = detect_revivals(
      series, report.stats, DetectorOptions{options.threshold_sigma, options.dead_time, predicted_t_rev});
  report.events = d.events;
  report.degenerate = d.degenerate;
  if (!report.events.empty()) {
    report.measured_t_rev = report.events.front().t_start;
    report.measured_t_rev_peak = report.events.front().t_peak;
  }
  if (report.events.size() >= 2) {
    const SpacingFit fit = spacing_fit(std::span<const RevivalEvent>(report.events));
    report.spacing = (report.events.back().t_peak - report.events.front().t_peak) /
                     static_cast<double>(report.events.size() - 1);
    report.spacing_residual = fit.max_residual;
  }
  if (predicted_t_rev) {
    const double hi = options.window.upper * *predicted_t_rev;
    const double lo = options.window.lower * *predicted_t_rev;
    if (!series.t.empty() && lo >= series.t.front() && hi <= series.t.back())
      report.visibility = visibility(series, report.stats, *predicted_t_rev, options.window);
  }
  return report;
}

}  // namespace xyrevival
