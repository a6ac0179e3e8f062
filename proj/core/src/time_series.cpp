#include "xyrevival/time_series.hpp"

#include <array>
#include <utility>

#include "xyrevival/error.hpp"

namespace xyrevival {
namespace {

constexpr std::array<std::pair<Observable, std::string_view>, 4> kNames{{
    {Observable::loschmidt_echo, "LE"},
    {Observable::log_loschmidt_echo, "logLE"},
    {Observable::magnetization, "magnetization"},
    {Observable::entropy, "entropy"},
}};

}  // namespace

std::string_view to_string(Observable obs) {
  for (const auto& [o, name] : kNames)
    if (o == obs) return name;
  return "unknown";
}

std::optional<Observable> observable_from_string(std::string_view name) {
  for (const auto& [o, n] : kNames)
    if (n == name) return o;
  return std::nullopt;
}

void TimeGrid::validate() const {
  if (n_samples < 2) throw InvalidArgument("time grid needs at least 2 samples");
  if (!(t_max > 0.0)) throw InvalidArgument("time grid needs t_max > 0");
}

double TimeGrid::at(std::size_t i) const {
  if (i + 1 == n_samples) return t_max;
  return static_cast<double>(i) * t_max / static_cast<double>(n_samples - 1);
}

std::vector<double> TimeGrid::points() const {
  std::vector<double> out(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) out[i] = at(i);
  return out;
}

}  // namespace xyrevival
