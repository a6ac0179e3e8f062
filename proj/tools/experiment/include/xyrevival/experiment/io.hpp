#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xyrevival/revival.hpp"
#include "xyrevival/time_series.hpp"

namespace xyrevival::experiment {

/// Shortest decimal text that reads back to the same double (17 significant
/// digits at most); "-inf", "inf" and "nan" for non-finite values.
std::string format_double(double v);

/// `t,value` rows.
std::string series_csv(const TimeSeries& s);
void write_series_csv(const std::filesystem::path& path, const TimeSeries& s);
/// Reads a `t,value` CSV (header optional). The label is left at its default.
TimeSeries read_series_csv(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, std::string_view text);
std::string read_text(const std::filesystem::path& path);

std::string sha256_hex(std::string_view data);
std::string file_sha256(const std::filesystem::path& path);

struct PlotStyle {
  int width = 900;
  int height = 360;
  std::string title;
  std::string y_label = "value";
};

/// Line plot with horizontal guides at the mean and mean +- 3 sigma (from
/// `stats`, if given). Output depends only on the inputs.
std::string render_series_svg(const TimeSeries& s, const std::optional<SeriesStats>& stats,
                              const PlotStyle& style = {});

/// Row-major grid of non-negative values rendered as a PNG heat map, one pixel
/// per cell, rows top to bottom.
void write_heatmap_png(const std::filesystem::path& path, const std::vector<double>& grid,
                       std::size_t rows, std::size_t cols);

}  // namespace xyrevival::experiment
