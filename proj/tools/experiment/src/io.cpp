#include "xyrevival/experiment/io.hpp"

#include <openssl/evp.h>
#include <png.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "xyrevival/error.hpp"

namespace xyrevival::experiment {
namespace {

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

double parse_number(const std::string& field, const std::filesystem::path& path, std::size_t line) {
  const std::string f = trim(field);
  if (f == "-inf") return -std::numeric_limits<double>::infinity();
  if (f == "inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double v = std::stod(f, &used);
    if (used != f.size()) throw std::invalid_argument(f);
    return v;
  } catch (const std::exception&) {
    throw IoError(path.string() + ":" + std::to_string(line) + ": cannot parse '" + f + "'");
  }
}

// Piecewise-linear dark-to-bright ramp.
std::array<unsigned char, 3> ramp(double x) {
  static constexpr std::array<std::array<double, 3>, 5> stops{{{0, 0, 4},
                                                               {87, 16, 110},
                                                               {188, 55, 84},
                                                               {249, 142, 9},
                                                               {252, 255, 164}}};
  x = std::clamp(x, 0.0, 1.0) * (stops.size() - 1);
  const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(x), stops.size() - 2);
  const double f = x - static_cast<double>(i);
  std::array<unsigned char, 3> c{};
  for (int k = 0; k < 3; ++k)
    c[k] = static_cast<unsigned char>(std::lround(stops[i][k] + f * (stops[i + 1][k] - stops[i][k])));
  return c;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string series_csv(const TimeSeries& s) {
  if (s.t.size() != s.values.size()) throw InvalidArgument("time and value lengths differ");
  std::string out = "t,value\n";
  out.reserve(40 * s.t.size());
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    out += format_double(s.t[i]);
    out += ',';
    out += format_double(s.values[i]);
    out += '\n';
  }
  return out;
}

void write_series_csv(const std::filesystem::path& path, const TimeSeries& s) {
  write_text(path, series_csv(s));
}

TimeSeries read_series_csv(const std::filesystem::path& path) {
  std::istringstream in(read_text(path));
  TimeSeries s;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw IoError(path.string() + ":" + std::to_string(n) + ": expected two columns");
    if (s.t.empty() && !std::isdigit(static_cast<unsigned char>(line[0])) && line[0] != '-' &&
        line[0] != '+' && line[0] != '.')
      continue;  // header
    s.t.push_back(parse_number(line.substr(0, comma), path, n));
    const double v = parse_number(line.substr(comma + 1), path, n);
    s.contains_neg_infinity |= std::isinf(v) && v < 0;
    s.values.push_back(v);
  }
  if (s.t.empty()) throw IoError(path.string() + " holds no samples");
  return s;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw IoError("SHA-256 computation failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string file_sha256(const std::filesystem::path& path) { return sha256_hex(read_text(path)); }

std::string render_series_svg(const TimeSeries& s, const std::optional<SeriesStats>& stats,
                              const PlotStyle& style) {
  if (s.t.empty() || s.t.size() != s.values.size()) throw InvalidArgument("cannot plot an empty series");
  const double left = 70, right = 20, top = 30, bottom = 45;
  const double w = style.width - left - right, h = style.height - top - bottom;

  double y_lo = std::numeric_limits<double>::infinity(), y_hi = -y_lo;
  for (double v : s.values)
    if (std::isfinite(v)) {
      y_lo = std::min(y_lo, v);
      y_hi = std::max(y_hi, v);
    }
  if (stats) {
    y_lo = std::min(y_lo, stats->mean - 3 * stats->std);
    y_hi = std::max(y_hi, stats->mean + 3 * stats->std);
  }
  if (!std::isfinite(y_lo)) y_lo = 0, y_hi = 1;
  if (y_hi - y_lo < 1e-300) y_lo -= 0.5, y_hi += 0.5;
  const double pad = 0.05 * (y_hi - y_lo);
  y_lo -= pad;
  y_hi += pad;
  const double x_lo = s.t.front(), x_hi = s.t.size() > 1 ? s.t.back() : s.t.front() + 1;
  auto px = [&](double t) { return left + (t - x_lo) / (x_hi - x_lo) * w; };
  auto py = [&](double v) { return top + (y_hi - v) / (y_hi - y_lo) * h; };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };
  auto label = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return std::string(buf);
  };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(style.width) +
         "\" height=\"" + std::to_string(style.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(w) + "\" height=\"" +
         num(h) + "\" fill=\"none\" stroke=\"black\"/>\n";
  if (!style.title.empty())
    out += "<text x=\"" + num(left) + "\" y=\"20\">" + style.title + "</text>\n";
  for (int i = 0; i <= 4; ++i) {
    const double t = x_lo + (x_hi - x_lo) * i / 4.0;
    const double v = y_lo + (y_hi - y_lo) * i / 4.0;
    out += "<text x=\"" + num(px(t)) + "\" y=\"" + num(top + h + 16) + "\" text-anchor=\"middle\">" +
           label(t) + "</text>\n";
    out += "<text x=\"" + num(left - 6) + "\" y=\"" + num(py(v) + 4) + "\" text-anchor=\"end\">" +
           label(v) + "</text>\n";
  }
  out += "<text x=\"" + num(left + w / 2) + "\" y=\"" + num(top + h + 36) +
         "\" text-anchor=\"middle\">t</text>\n";
  out += "<text x=\"14\" y=\"" + num(top + h / 2) + "\" transform=\"rotate(-90 14 " + num(top + h / 2) +
         ")\" text-anchor=\"middle\">" + style.y_label + "</text>\n";

  if (stats) {
    const double levels[] = {stats->mean, stats->mean - 3 * stats->std, stats->mean + 3 * stats->std};
    for (int i = 0; i < 3; ++i)
      out += "<line x1=\"" + num(left) + "\" x2=\"" + num(left + w) + "\" y1=\"" + num(py(levels[i])) +
             "\" y2=\"" + num(py(levels[i])) + "\" stroke=\"#d62728\"" +
             (i == 0 ? "" : " stroke-dasharray=\"6 4\"") + "/>\n";
  }

  out += "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1\" points=\"";
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    const double v = std::isfinite(s.values[i]) ? s.values[i] : y_lo;
    out += num(px(s.t[i])) + "," + num(py(v)) + (i + 1 < s.t.size() ? " " : "");
  }
  out += "\"/>\n</svg>\n";
  return out;
}

void write_heatmap_png(const std::filesystem::path& path, const std::vector<double>& grid,
                       std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0 || grid.size() != rows * cols)
    throw InvalidArgument("heat map grid does not match its shape");
  double peak = 0.0;
  for (double v : grid) peak = std::max(peak, v);
  std::vector<unsigned char> pixels(rows * cols * 3);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    // Square-root scale so that weak fronts stay visible.
    const auto c = ramp(peak > 0.0 ? std::sqrt(std::max(grid[i], 0.0) / peak) : 0.0);
    std::copy(c.begin(), c.end(), pixels.begin() + static_cast<std::ptrdiff_t>(3 * i));
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(cols);
  image.height = static_cast<png_uint_32>(rows);
  image.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&image, path.c_str(), 0, pixels.data(), 0, nullptr))
    throw IoError("cannot write " + path.string() + ": " + image.message);
}

}  // namespace xyrevival::experiment
