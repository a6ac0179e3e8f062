#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "xyrevival/time_series.hpp"

namespace xyrevival::experiment {

inline constexpr int kSchemaVersion = 1;

enum class Engine { free_fermion, ed };
enum class SweepAxis { n_sites, g, epsilon, h1 };

std::string_view to_string(Engine e);
std::string_view to_string(SweepAxis a);

struct SideParams {
  double eta = 1.0;
  double h = 0.0;
  double g = 0.0;
  double epsilon = 0.0;

  bool operator==(const SideParams&) const = default;
};

struct ModelConfig {
  int n_sites = 0;
  int q = 1;
  /// ED only: "periodic", "antiperiodic", "open", or "matched" (boundary and
  /// parity chosen to agree with the free-fermion grid of q).
  std::string boundary = "periodic";
  std::optional<std::string> parity;
  std::optional<int> max_flips;
  std::size_t max_dimension = std::size_t{1} << 14;
  SideParams initial;
  SideParams quench;

  bool operator==(const ModelConfig&) const = default;
};

struct TimeConfig {
  /// Unset: 4.5 predicted revival times (1.5 for local quenches).
  std::optional<double> t_max;
  /// Unset: the resolution rule of the engine.
  std::optional<std::size_t> n_samples;

  bool operator==(const TimeConfig&) const = default;
};

struct DetectorConfig {
  double threshold_sigma = 3.0;
  std::optional<double> burn_in;
  std::optional<double> dead_time;
  double window_lower = 0.8;
  double window_upper = 1.2;

  bool operator==(const DetectorConfig&) const = default;
};

struct SweepConfig {
  SweepAxis axis = SweepAxis::n_sites;
  std::vector<double> values;

  bool operator==(const SweepConfig&) const = default;
};

struct VmaxMapConfig {
  double eta_min = 0.1;
  double eta_max = 3.0;
  int eta_steps = 30;
  double h_min = 0.0;
  double h_max = 3.0;
  int h_steps = 31;
  int resolution = 2000;

  bool operator==(const VmaxMapConfig&) const = default;
};

struct OutputConfig {
  std::string dir = "out";
  bool plot = true;

  bool operator==(const OutputConfig&) const = default;
};

struct ExperimentConfig {
  int schema_version = kSchemaVersion;
  std::string name = "experiment";
  Engine engine = Engine::free_fermion;
  ModelConfig model;
  TimeConfig time;
  std::vector<Observable> observables{Observable::loschmidt_echo};
  DetectorConfig detector;
  std::uint64_t seed = 0;
  int realizations = 1;
  std::optional<SweepConfig> sweep;
  std::optional<VmaxMapConfig> vmax_map;
  OutputConfig output;

  bool operator==(const ExperimentConfig&) const = default;

  /// Throws ConfigError on inconsistent settings.
  void validate() const;
};

/// Strict parse: unknown keys, wrong types and invalid values raise ConfigError.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const ExperimentConfig& c);

/// Hex SHA-256 of the canonical serialization.
std::string config_hash(const ExperimentConfig& c);

}  // namespace xyrevival::experiment
