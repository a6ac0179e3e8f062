#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace xyrevival {

enum class Observable { loschmidt_echo, log_loschmidt_echo, magnetization, entropy };

std::string_view to_string(Observable obs);
std::optional<Observable> observable_from_string(std::string_view name);

/// Uniform grid t_i = i * t_max / (n_samples - 1), i = 0 .. n_samples - 1.
struct TimeGrid {
  double t_max = 0.0;
  std::size_t n_samples = 0;

  /// Throws InvalidArgument unless n_samples >= 2 and t_max > 0.
  void validate() const;
  double step() const { return t_max / static_cast<double>(n_samples - 1); }
  double at(std::size_t i) const;
  std::vector<double> points() const;
};

struct TimeSeries {
  Observable label = Observable::loschmidt_echo;
  std::vector<double> t;
  std::vector<double> values;
  bool contains_neg_infinity = false;  // log-LE hit an exact zero of the echo

  std::size_t size() const { return t.size(); }
  /// Sample spacing, or 0 for fewer than two samples.
  double step() const { return t.size() > 1 ? t[1] - t[0] : 0.0; }
};

}  // namespace xyrevival
