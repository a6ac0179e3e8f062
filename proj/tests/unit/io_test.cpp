#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "xyrevival/error.hpp"
#include "xyrevival/experiment/io.hpp"

using namespace xyrevival;
using namespace xyrevival::experiment;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / "xyrevival_io_test" / name;
  std::filesystem::create_directories(p.parent_path());
  return p;
}

TimeSeries sample() {
  TimeSeries s;
  for (int i = 0; i < 200; ++i) {
    s.t.push_back(0.1 * i);
    s.values.push_back(std::cos(0.1 * i) / 3.0);
  }
  return s;
}

}  // namespace

TEST(FormatDouble, RoundTripsExactly) {
  for (double v : {0.0, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.1, 99.98}) {
    const auto text = format_double(v);
    EXPECT_EQ(std::stod(text), v) << text;
  }
  EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(format_double(std::nan("")), "nan");
}

TEST(SeriesCsv, WriteReadRoundTrip) {
  TimeSeries s = sample();
  s.values[5] = -std::numeric_limits<double>::infinity();
  const auto path = scratch("series.csv");
  write_series_csv(path, s);
  const auto back = read_series_csv(path);
  EXPECT_EQ(back.t, s.t);
  EXPECT_EQ(back.values, s.values);
  EXPECT_TRUE(back.contains_neg_infinity);
  EXPECT_EQ(read_text(path).substr(0, 8), "t,value\n");
}

TEST(SeriesCsv, DeterministicBytes) {
  EXPECT_EQ(series_csv(sample()), series_csv(sample()));
}

TEST(SeriesCsv, MalformedInput) {
  const auto path = scratch("bad.csv");
  write_text(path, "t,value\n0,1\n1;2\n");
  EXPECT_THROW(read_series_csv(path), IoError);
  write_text(path, "t,value\n0,abc\n");
  EXPECT_THROW(read_series_csv(path), IoError);
  EXPECT_THROW(read_series_csv(scratch("absent.csv")), IoError);
}

TEST(Sha256, KnownVectors) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(SvgPlot, GoldenBytes) {
  SeriesStats st{0.0, 0.2, 0.0, 200};
  PlotStyle style;
  style.title = "golden";
  style.y_label = "L(t)";
  const auto svg = render_series_svg(sample(), st, style);
  EXPECT_EQ(svg, render_series_svg(sample(), st, style));
  EXPECT_NE(svg.find("stroke-dasharray"), std::string::npos);
  EXPECT_EQ(sha256_hex(svg), "51b2b8e11d0e630c2d373506426644e2a6473beb7ebca6f8eabd687f42e9852a");
}

TEST(SvgPlot, EmptySeriesIsAnError) {
  EXPECT_THROW(render_series_svg(TimeSeries{}, std::nullopt, {}), InvalidArgument);
}

TEST(HeatmapPng, WritesFileAndChecksShape) {
  const auto path = scratch("map.png");
  std::vector<double> grid(12 * 7);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = static_cast<double>(i % 13);
  write_heatmap_png(path, grid, 12, 7);
  const auto bytes = read_text(path);
  ASSERT_GT(bytes.size(), 8u);
  EXPECT_EQ(bytes.substr(1, 3), "PNG");
  write_heatmap_png(scratch("map2.png"), grid, 12, 7);
  EXPECT_EQ(file_sha256(path), file_sha256(scratch("map2.png")));
  EXPECT_THROW(write_heatmap_png(path, grid, 5, 5), InvalidArgument);
}
