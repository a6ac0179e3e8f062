#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "xyrevival/experiment/config.hpp"
#include "xyrevival/free_fermion.hpp"
#include "xyrevival/revival.hpp"

namespace xyrevival::experiment {

/// N / (2 v_max) of the quench Hamiltonian's (eta, h).
double predicted_revival_time(const ExperimentConfig& c);

/// Sample times of a quench run.
std::vector<double> quench_times(const ExperimentConfig& c);

struct QuenchResult {
  double predicted_t_rev = 0.0;
  std::vector<TimeSeries> series;
  /// One per series; unset when the series cannot be analysed (e.g. -inf).
  std::vector<std::optional<RevivalReport>> reports;
  /// ED dense path: sum_n p_n^2 (first realization).
  std::optional<double> average_echo;
  std::size_t hilbert_dimension = 0;
  std::string sector;  // e.g. "periodic/even"
};

QuenchResult compute_quench(const ExperimentConfig& c);

struct LocalQuenchResult {
  ff::WavefrontField field;
  double v_max = 0.0;
  double predicted_arrival = 0.0;  // N / (2 v_max)
  double measured_arrival = 0.0;   // half-maximum arrival at offset N/2
  double max_norm_defect = 0.0;    // max_t |sum_l |Omega_l|^2 - 1|
};

LocalQuenchResult compute_local_quench(const ExperimentConfig& c);

struct SweepPoint {
  double value = 0.0;
  double predicted_t_rev = 0.0;
  std::optional<double> measured_t_rev;
  std::optional<double> measured_t_rev_peak;
  std::optional<double> visibility;
  std::optional<double> time_average;
  std::string error;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::n_sites;
  std::vector<SweepPoint> points;  // in the order of the configured values
  std::optional<ScalingFit> scaling;
  std::optional<ScalingFit> scaling_through_origin;
  std::optional<VisibilityScan> visibility;
};

/// Configuration of one sweep point.
ExperimentConfig sweep_point_config(const ExperimentConfig& c, double value);

/// Points run on `threads` workers; the result does not depend on the count.
SweepResult compute_sweep(const ExperimentConfig& c, unsigned threads = 1);

struct VmaxMap {
  std::vector<double> eta;
  std::vector<double> h;
  std::vector<double> v_max;  // row-major [eta][h]
};

VmaxMap compute_vmax_map(const VmaxMapConfig& m, unsigned threads = 1);

struct RunOptions {
  std::filesystem::path out_dir;
  bool plot = true;
  unsigned threads = 1;
  std::ostream* log = nullptr;
};

/// Each run writes its artifacts plus manifest.json and returns the paths
/// written, relative to out_dir.
std::vector<std::string> run_quench(const ExperimentConfig& c, const RunOptions& o);
std::vector<std::string> run_local_quench(const ExperimentConfig& c, const RunOptions& o);
std::vector<std::string> run_sweep(const ExperimentConfig& c, const RunOptions& o);
std::vector<std::string> run_vmax_map(const ExperimentConfig& c, const RunOptions& o);

struct DetectOptions {
  std::optional<double> predicted_t_rev;
  RevivalAnalysisOptions analysis;
};

/// Re-analyse a `t,value` CSV.
RevivalReport detect_file(const std::filesystem::path& csv, const DetectOptions& o);
std::vector<std::string> run_detect(const std::filesystem::path& csv, const DetectOptions& o,
                                    const RunOptions& run);

/// Flat `key,value`-style CSV records.
std::string report_csv(const std::vector<std::string>& labels,
                       const std::vector<std::optional<RevivalReport>>& reports);
std::string events_csv(const RevivalReport& r);
std::string sweep_csv(const SweepResult& r);

}  // namespace xyrevival::experiment
