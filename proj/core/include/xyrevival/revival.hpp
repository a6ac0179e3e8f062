#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "xyrevival/time_series.hpp"

namespace xyrevival {

struct SeriesStats {
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
  double burn_in = 0.0;
  std::size_t n_samples = 0;
};

/// Minimum number of samples after burn-in.
inline constexpr std::size_t kMinStatsSamples = 100;

/// Mean and population std over samples with t >= burn_in. Throws when fewer
/// than kMinStatsSamples remain, when the series does not reach 10 * burn_in,
/// or when a sample is not finite.
SeriesStats series_stats(const TimeSeries& series, double burn_in = 0.0);

struct RevivalEvent {
  double t_peak = 0.0;
  double magnitude_sigma = 0.0;  // |x(t_peak) - mean| / std
  int sign = 1;                  // +1 above the mean, -1 below
  double t_start = 0.0;          // first sample beyond the threshold
  double t_end = 0.0;            // last sample beyond the threshold
};

struct DetectorOptions {
  double threshold_sigma = 3.0;
  /// Runs closer than this are merged. Unset: predicted_t_rev / 10 if a
  /// prediction is given, else 10 sample steps.
  std::optional<double> dead_time;
  std::optional<double> predicted_t_rev;
};

struct Detection {
  std::vector<RevivalEvent> events;  // time-ordered
  bool degenerate = false;           // zero variance, nothing to detect
};

/// Runs of |x - mean| > threshold * std over samples with t >= stats.burn_in.
Detection detect_revivals(const TimeSeries& series, const SeriesStats& stats,
                          const DetectorOptions& options = {});

struct SpacingFit {
  double period = 0.0;      // slope of t_p against p
  double intercept = 0.0;
  double max_residual = 0.0;
};

/// Least squares t_p = p * T + c over event index p, on event peaks.
SpacingFit spacing_fit(std::span<const RevivalEvent> events);
SpacingFit spacing_fit(std::span<const double> times);

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares of T against N. Needs >= 3 points and two distinct N.
ScalingFit scaling_fit(std::span<const std::pair<double, double>> points);
/// Same with the intercept fixed at zero. r^2 uses the centred total sum of
/// squares.
ScalingFit scaling_fit_through_origin(std::span<const std::pair<double, double>> points);

struct VisibilityWindow {
  double lower = 0.8;  // in units of the predicted revival time
  double upper = 1.2;
};

/// max |x - mean| / std over [lower, upper] * predicted_t_rev. Zero when the
/// series has no variance.
double visibility(const TimeSeries& series, const SeriesStats& stats, double predicted_t_rev,
                  const VisibilityWindow& window = {});

struct VisibilityScan {
  std::vector<std::pair<double, double>> points;  // (parameter, visibility), ascending parameter
  bool monotone_nonincreasing = true;
  /// First parameter whose visibility is at or below the threshold.
  std::optional<double> first_below_threshold;
};

VisibilityScan visibility_scan(const std::map<double, TimeSeries>& series_by_param,
                               double predicted_t_rev, double burn_in = 0.0,
                               double threshold_sigma = 3.0, const VisibilityWindow& window = {});

struct RevivalAnalysisOptions {
  double threshold_sigma = 3.0;
  /// Unset: predicted_t_rev / 10 when a prediction is given, else 0.
  std::optional<double> burn_in;
  std::optional<double> dead_time;
  VisibilityWindow window;
};

struct RevivalReport {
  std::vector<RevivalEvent> events;
  bool degenerate = false;
  SeriesStats stats;
  /// Onset of the first event: the first time the signal leaves the band.
  std::optional<double> measured_t_rev;
  std::optional<double> measured_t_rev_peak;
  std::optional<double> spacing;  // mean gap between consecutive peaks
  std::optional<double> spacing_residual;
  std::optional<double> predicted_t_rev;
  std::optional<double> visibility;
};

RevivalReport analyze_revivals(const TimeSeries& series, std::optional<double> predicted_t_rev,
                               const RevivalAnalysisOptions& options = {});

}  // namespace xyrevival
