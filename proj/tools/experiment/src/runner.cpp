#include "xyrevival/experiment/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>
#include <thread>

#include "xyrevival/ed/disorder.hpp"
#include "xyrevival/ed/dynamics.hpp"
#include "xyrevival/ed/fermion_sector.hpp"
#include "xyrevival/error.hpp"
#include "xyrevival/experiment/io.hpp"
#include "xyrevival/model.hpp"

#ifndef XYREVIVAL_VERSION
#define XYREVIVAL_VERSION "unknown"
#endif

namespace xyrevival::experiment {
namespace {

using nlohmann::json;

ModelParams side_model(const ExperimentConfig& c, const SideParams& s) {
  ModelParams p;
  p.n_sites = c.model.n_sites;
  p.eta = s.eta;
  p.h = s.h;
  p.q = c.model.q;
  return p;
}

std::set<Observable> observable_set(const ExperimentConfig& c) {
  return {c.observables.begin(), c.observables.end()};
}

ed::ChainParams chain(const SideParams& s) { return {s.eta, s.h, s.g, s.epsilon}; }

ed::EdQuenchSpec ed_spec(const ExperimentConfig& c, std::uint64_t seed) {
  ed::EdQuenchSpec spec;
  spec.n_sites = c.model.n_sites;
  spec.initial = chain(c.model.initial);
  spec.quench = chain(c.model.quench);
  spec.max_flips = c.model.max_flips;
  spec.seed = seed;
  spec.max_dimension = c.model.max_dimension;
  if (c.model.boundary == "matched") {
    const ed::MatchedSector m = ed::matched_spin_sector(side_model(c, c.model.initial));
    spec.boundary = m.boundary;
    spec.parity = m.parity;
  } else {
    spec.boundary = *ed::boundary_from_string(c.model.boundary);
    if (c.model.parity) spec.parity = ed::parity_from_string(*c.model.parity);
  }
  return spec;
}

RevivalAnalysisOptions analysis_options(const DetectorConfig& d) {
  RevivalAnalysisOptions o;
  o.threshold_sigma = d.threshold_sigma;
  o.burn_in = d.burn_in;
  o.dead_time = d.dead_time;
  o.window = {d.window_lower, d.window_upper};
  return o;
}

std::optional<RevivalReport> try_analyze(const TimeSeries& s, double predicted,
                                         const DetectorConfig& d) {
  if (s.contains_neg_infinity) return std::nullopt;
  try {
    return analyze_revivals(s, predicted, analysis_options(d));
  } catch (const InvalidArgument&) {
    return std::nullopt;
  }
}

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

std::vector<double> linspace(double lo, double hi, int steps) {
  std::vector<double> v(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) v[i] = steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1);
  return v;
}

// Runs body(i) for i in [0, n) on up to `threads` workers.
template <typename F>
void parallel_for(std::size_t n, unsigned threads, F body) {
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  for (auto& t : pool) t.join();
}

class ArtifactWriter {
 public:
  ArtifactWriter(const ExperimentConfig& c, const RunOptions& o, std::string command)
      : config_(c), options_(o), command_(std::move(command)), start_(std::chrono::steady_clock::now()) {
    std::filesystem::create_directories(o.out_dir);
  }

  void text(const std::string& name, std::string_view content) {
    write_text(options_.out_dir / name, content);
    written_.push_back(name);
  }

  void png(const std::string& name, const std::vector<double>& grid, std::size_t rows, std::size_t cols) {
    write_heatmap_png(options_.out_dir / name, grid, rows, cols);
    written_.push_back(name);
  }

  std::vector<std::string> finish() {
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    json outputs = json::object();
    for (const auto& name : written_) outputs[name] = file_sha256(options_.out_dir / name);
    json manifest{{"command", command_},
                  {"name", config_.name},
                  {"config_hash", config_hash(config_)},
                  {"seed", config_.seed},
                  {"toolkit_version", XYREVIVAL_VERSION},
                  {"wall_clock_seconds", seconds},
                  {"outputs", outputs}};
    write_text(options_.out_dir / "manifest.json", manifest.dump(2) + "\n");
    written_.push_back("manifest.json");
    return written_;
  }

  std::ostream* log() const { return options_.log; }

 private:
  const ExperimentConfig& config_;
  const RunOptions& options_;
  std::string command_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::string> written_;
};

}  // namespace

double predicted_revival_time(const ExperimentConfig& c) {
  return revival_time_estimate(c.model.n_sites,
                               max_group_velocity(c.model.quench.eta, c.model.quench.h));
}

std::vector<double> quench_times(const ExperimentConfig& c) {
  const double t_rev = predicted_revival_time(c);
  const double t_max = c.time.t_max ? *c.time.t_max : 4.5 * t_rev;
  TimeGrid grid;
  grid.t_max = t_max;
  if (c.time.n_samples) {
    grid.n_samples = *c.time.n_samples;
  } else if (c.engine == Engine::free_fermion) {
    ff::QuenchSpec spec{side_model(c, c.model.initial), side_model(c, c.model.quench)};
    grid = ff::default_time_grid(ff::build_mode_table(spec), t_rev, t_max);
  } else {
    grid.n_samples = static_cast<std::size_t>(std::ceil(t_max / (t_rev / 200.0))) + 1;
  }
  try {
    grid.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("invalid time grid: ") + e.what());
  }
  return grid.points();
}

QuenchResult compute_quench(const ExperimentConfig& c) {
  c.validate();
  QuenchResult r;
  r.predicted_t_rev = predicted_revival_time(c);
  const std::vector<double> times = quench_times(c);
  const std::set<Observable> wanted = observable_set(c);

  if (c.engine == Engine::free_fermion) {
    ff::QuenchSpec spec{side_model(c, c.model.initial), side_model(c, c.model.quench)};
    r.series = ff::evolve_series(ff::build_mode_table(spec), times, wanted);
    r.hilbert_dimension = 0;
    r.sector = c.model.q == 0 ? "q=0" : "q=1";
  } else {
    const std::vector<Observable> ordered(wanted.begin(), wanted.end());
    for (int k = 0; k < c.realizations; ++k) {
      const std::uint64_t seed =
          c.realizations == 1 ? c.seed : ed::realization_seed(c.seed, static_cast<std::uint64_t>(k));
      const ed::PreparedQuench q = ed::prepare_quench(ed_spec(c, seed));
      std::vector<TimeSeries> s = q.evolver.evolve_series(times, ordered);
      if (k == 0) {
        r.series = std::move(s);
        r.hilbert_dimension = q.evolver.hamiltonian().dimension();
        r.sector = std::string(ed::to_string(q.evolver.hamiltonian().couplings.boundary)) + "/" +
                   std::string(ed::to_string(*q.sector.parity));
        if (const auto* d = q.evolver.decomposition()) r.average_echo = d->average_echo();
      } else {
        for (std::size_t i = 0; i < s.size(); ++i)
          for (std::size_t j = 0; j < s[i].values.size(); ++j) r.series[i].values[j] += s[i].values[j];
      }
    }
    if (c.realizations > 1) {
      for (TimeSeries& s : r.series) {
        for (double& v : s.values) v /= c.realizations;
        // The log of an average is not the average of logs; recompute.
        if (s.label == Observable::log_loschmidt_echo) {
          const auto le = std::find_if(r.series.begin(), r.series.end(),
                                       [](const TimeSeries& x) { return x.label == Observable::loschmidt_echo; });
          if (le != r.series.end())
            for (std::size_t j = 0; j < s.values.size(); ++j)
              s.values[j] = le->values[j] > 0 ? std::log(le->values[j]) : -INFINITY;
        }
      }
    }
  }
  for (const TimeSeries& s : r.series) r.reports.push_back(try_analyze(s, r.predicted_t_rev, c.detector));
  return r;
}

LocalQuenchResult compute_local_quench(const ExperimentConfig& c) {
  c.validate();
  if (c.engine != Engine::free_fermion) throw ConfigError("local-quench needs the free_fermion engine");
  LocalQuenchResult r;
  const ModelParams quench = side_model(c, c.model.quench);
  r.v_max = max_group_velocity(quench.eta, quench.h);
  r.predicted_arrival = revival_time_estimate(quench.n_sites, r.v_max);
  const double t_max = c.time.t_max ? *c.time.t_max : 1.5 * r.predicted_arrival;
  std::vector<double> times{0.0};
  if (t_max > 0.0) {
    TimeGrid grid{t_max, c.time.n_samples ? *c.time.n_samples : 601};
    try {
      grid.validate();
    } catch (const InvalidArgument& e) {
      throw ConfigError(std::string("invalid time grid: ") + e.what());
    }
    times = grid.points();
  }
  r.field = ff::local_disturbance(quench, times);
  for (std::size_t i = 0; i < times.size(); ++i)
    r.max_norm_defect = std::max(r.max_norm_defect, std::abs(r.field.total_intensity(i) - 1.0));
  r.measured_arrival = ff::front_arrival_time(r.field, quench.n_sites / 2);
  return r;
}

ExperimentConfig sweep_point_config(const ExperimentConfig& c, double value) {
  if (!c.sweep) throw ConfigError("configuration has no sweep section");
  ExperimentConfig p = c;
  p.sweep.reset();
  switch (c.sweep->axis) {
    case SweepAxis::n_sites: p.model.n_sites = static_cast<int>(value); break;
    case SweepAxis::g: p.model.quench.g = value; break;
    case SweepAxis::epsilon: p.model.quench.epsilon = value; break;
    case SweepAxis::h1: p.model.initial.h = value; break;
  }
  p.validate();
  return p;
}

SweepResult compute_sweep(const ExperimentConfig& c, unsigned threads) {
  c.validate();
  if (!c.sweep) throw ConfigError("configuration has no sweep section");
  if (c.observables.empty()) throw ConfigError("a sweep needs at least one observable");
  SweepResult r;
  r.axis = c.sweep->axis;
  r.points.resize(c.sweep->values.size());
  parallel_for(r.points.size(), threads, [&](std::size_t i) {
    SweepPoint& p = r.points[i];
    p.value = c.sweep->values[i];
    try {
      const ExperimentConfig pc = sweep_point_config(c, p.value);
      p.predicted_t_rev = predicted_revival_time(pc);
      const QuenchResult q = compute_quench(pc);
      const auto& rep = q.reports.front();
      if (!rep) {
        p.error = "series could not be analysed";
        return;
      }
      p.measured_t_rev = rep->measured_t_rev;
      p.measured_t_rev_peak = rep->measured_t_rev_peak;
      p.visibility = rep->visibility;
      p.time_average = rep->stats.mean;
    } catch (const std::exception& e) {
      p.error = e.what();
    }
  });

  if (r.axis == SweepAxis::n_sites) {
    std::vector<std::pair<double, double>> pts;
    for (const SweepPoint& p : r.points)
      if (p.measured_t_rev) pts.emplace_back(p.value, *p.measured_t_rev);
    std::set<double> distinct;
    for (const auto& pt : pts) distinct.insert(pt.first);
    if (pts.size() >= 3 && distinct.size() >= 2) {
      r.scaling = scaling_fit(pts);
      r.scaling_through_origin = scaling_fit_through_origin(pts);
    }
  } else {
    VisibilityScan scan;
    std::vector<const SweepPoint*> sorted;
    for (const SweepPoint& p : r.points)
      if (p.visibility) sorted.push_back(&p);
    std::sort(sorted.begin(), sorted.end(),
              [](const SweepPoint* a, const SweepPoint* b) { return a->value < b->value; });
    for (const SweepPoint* p : sorted) {
      if (!scan.points.empty() && *p->visibility > scan.points.back().second)
        scan.monotone_nonincreasing = false;
      if (!scan.first_below_threshold && *p->visibility <= c.detector.threshold_sigma)
        scan.first_below_threshold = p->value;
      scan.points.emplace_back(p->value, *p->visibility);
    }
    if (!scan.points.empty()) r.visibility = scan;
  }
  return r;
}

VmaxMap compute_vmax_map(const VmaxMapConfig& m, unsigned threads) {
  VmaxMap out;
  out.eta = linspace(m.eta_min, m.eta_max, m.eta_steps);
  out.h = linspace(m.h_min, m.h_max, m.h_steps);
  out.v_max.assign(out.eta.size() * out.h.size(), 0.0);
  parallel_for(out.eta.size(), threads, [&](std::size_t i) {
    for (std::size_t j = 0; j < out.h.size(); ++j)
      out.v_max[i * out.h.size() + j] = max_group_velocity(out.eta[i], out.h[j], m.resolution);
  });
  return out;
}

std::string report_csv(const std::vector<std::string>& labels,
                       const std::vector<std::optional<RevivalReport>>& reports) {
  std::string out =
      "observable,predicted_t_rev,measured_t_rev,measured_t_rev_peak,spacing,spacing_residual,"
      "visibility,mean,std,burn_in,n_events,degenerate\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    out += labels[i] + ",";
    if (!reports[i]) {
      out += ",,,,,,,,,,\n";
      continue;
    }
    const RevivalReport& r = *reports[i];
    out += opt(r.predicted_t_rev) + "," + opt(r.measured_t_rev) + "," + opt(r.measured_t_rev_peak) + "," +
           opt(r.spacing) + "," + opt(r.spacing_residual) + "," + opt(r.visibility) + "," +
           format_double(r.stats.mean) + "," + format_double(r.stats.std) + "," +
           format_double(r.stats.burn_in) + "," + std::to_string(r.events.size()) + "," +
           (r.degenerate ? "1" : "0") + "\n";
  }
  return out;
}

std::string events_csv(const RevivalReport& r) {
  std::string out = "t_start,t_peak,t_end,magnitude_sigma,sign\n";
  for (const RevivalEvent& e : r.events)
    out += format_double(e.t_start) + "," + format_double(e.t_peak) + "," + format_double(e.t_end) + "," +
           format_double(e.magnitude_sigma) + "," + std::to_string(e.sign) + "\n";
  return out;
}

std::string sweep_csv(const SweepResult& r) {
  std::string out = std::string(to_string(r.axis)) +
                    ",predicted_t_rev,measured_t_rev,measured_t_rev_peak,visibility,time_average,error\n";
  for (const SweepPoint& p : r.points) {
    std::string err = p.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    out += format_double(p.value) + "," + format_double(p.predicted_t_rev) + "," + opt(p.measured_t_rev) +
           "," + opt(p.measured_t_rev_peak) + "," + opt(p.visibility) + "," + opt(p.time_average) + "," +
           err + "\n";
  }
  return out;
}

std::vector<std::string> run_quench(const ExperimentConfig& c, const RunOptions& o) {
  ArtifactWriter w(c, o, "quench");
  const QuenchResult r = compute_quench(c);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < r.series.size(); ++i) {
    const std::string name(to_string(r.series[i].label));
    labels.push_back(name);
    w.text(name + ".csv", series_csv(r.series[i]));
    if (r.reports[i]) w.text("events_" + name + ".csv", events_csv(*r.reports[i]));
    if (o.plot) {
      PlotStyle style;
      style.title = c.name + " " + name;
      style.y_label = name;
      std::optional<SeriesStats> stats;
      if (r.reports[i]) stats = r.reports[i]->stats;
      w.text(name + ".svg", render_series_svg(r.series[i], stats, style));
    }
  }
  if (!r.series.empty()) w.text("report.csv", report_csv(labels, r.reports));
  if (std::ostream* log = w.log()) {
    *log << c.name << ": engine " << to_string(c.engine) << ", N = " << c.model.n_sites;
    if (r.hilbert_dimension) *log << ", dim " << r.hilbert_dimension << " (" << r.sector << ")";
    *log << "\n  predicted T_rev = " << format_double(r.predicted_t_rev) << "\n";
    for (std::size_t i = 0; i < r.series.size(); ++i) {
      *log << "  " << labels[i] << ": measured T_rev = ";
      if (r.reports[i] && r.reports[i]->measured_t_rev)
        *log << format_double(*r.reports[i]->measured_t_rev) << " (peak "
             << format_double(*r.reports[i]->measured_t_rev_peak) << ")";
      else
        *log << "none";
      *log << "\n";
    }
  }
  return w.finish();
}

std::vector<std::string> run_local_quench(const ExperimentConfig& c, const RunOptions& o) {
  ArtifactWriter w(c, o, "local-quench");
  const LocalQuenchResult r = compute_local_quench(c);
  const std::size_t nt = r.field.times.size();
  const auto n = static_cast<std::size_t>(r.field.n_sites);

  std::string grid = "offset";
  for (double t : r.field.times) grid += "," + format_double(t);
  grid += "\n";
  for (std::size_t l = 0; l < n; ++l) {
    grid += std::to_string(l);
    for (std::size_t i = 0; i < nt; ++i) grid += "," + format_double(r.field.intensity(i, static_cast<int>(l)));
    grid += "\n";
  }
  w.text("intensity.csv", grid);
  w.text("front.csv", "v_max,predicted_arrival,measured_arrival,max_norm_defect\n" + format_double(r.v_max) +
                          "," + format_double(r.predicted_arrival) + "," + format_double(r.measured_arrival) +
                          "," + format_double(r.max_norm_defect) + "\n");
  if (o.plot) {
    std::vector<double> img(nt * n);
    for (std::size_t i = 0; i < nt; ++i)
      for (std::size_t l = 0; l < n; ++l) img[i * n + l] = r.field.intensity(i, static_cast<int>(l));
    w.png("intensity.png", img, nt, n);
  }
  if (std::ostream* log = w.log())
    *log << c.name << ": v_max = " << format_double(r.v_max) << ", front at offset N/2: predicted "
         << format_double(r.predicted_arrival) << ", measured " << format_double(r.measured_arrival)
         << ", norm defect " << format_double(r.max_norm_defect) << "\n";
  return w.finish();
}

std::vector<std::string> run_sweep(const ExperimentConfig& c, const RunOptions& o) {
  ArtifactWriter w(c, o, "sweep");
  const SweepResult r = compute_sweep(c, o.threads);
  w.text("sweep.csv", sweep_csv(r));
  if (r.scaling) {
    w.text("scaling.csv", "fit,slope,intercept,r_squared\nols," + format_double(r.scaling->slope) + "," +
                              format_double(r.scaling->intercept) + "," + format_double(r.scaling->r_squared) +
                              "\norigin," + format_double(r.scaling_through_origin->slope) + ",0," +
                              format_double(r.scaling_through_origin->r_squared) + "\n");
  }
  if (r.visibility) {
    std::string s = "monotone_nonincreasing,first_below_threshold\n";
    s += std::string(r.visibility->monotone_nonincreasing ? "1" : "0") + "," +
         opt(r.visibility->first_below_threshold) + "\n";
    w.text("visibility.csv", s);
  }
  if (std::ostream* log = w.log()) {
    *log << c.name << ": sweep over " << to_string(r.axis) << "\n";
    for (const SweepPoint& p : r.points) {
      *log << "  " << format_double(p.value) << ": predicted " << format_double(p.predicted_t_rev)
           << ", measured " << (p.measured_t_rev ? format_double(*p.measured_t_rev) : "none");
      if (p.visibility) *log << ", visibility " << format_double(*p.visibility);
      if (!p.error.empty()) *log << ", error: " << p.error;
      *log << "\n";
    }
    if (r.scaling_through_origin)
      *log << "  slope through origin " << format_double(r.scaling_through_origin->slope) << ", r^2 "
           << format_double(r.scaling_through_origin->r_squared) << "\n";
  }
  return w.finish();
}

std::vector<std::string> run_vmax_map(const ExperimentConfig& c, const RunOptions& o) {
  ArtifactWriter w(c, o, "vmax-map");
  const VmaxMap m = compute_vmax_map(c.vmax_map ? *c.vmax_map : VmaxMapConfig{}, o.threads);
  std::string csv = "eta,h,v_max\n";
  for (std::size_t i = 0; i < m.eta.size(); ++i)
    for (std::size_t j = 0; j < m.h.size(); ++j)
      csv += format_double(m.eta[i]) + "," + format_double(m.h[j]) + "," +
             format_double(m.v_max[i * m.h.size() + j]) + "\n";
  w.text("vmax_map.csv", csv);
  if (o.plot) {
    // Rows: eta from top (largest) to bottom; columns: h.
    std::vector<double> img(m.v_max.size());
    for (std::size_t i = 0; i < m.eta.size(); ++i)
      for (std::size_t j = 0; j < m.h.size(); ++j)
        img[i * m.h.size() + j] = m.v_max[(m.eta.size() - 1 - i) * m.h.size() + j];
    w.png("vmax_map.png", img, m.eta.size(), m.h.size());
  }
  if (std::ostream* log = w.log())
    *log << c.name << ": " << m.eta.size() << " x " << m.h.size() << " v_max grid, max "
         << format_double(*std::max_element(m.v_max.begin(), m.v_max.end())) << "\n";
  return w.finish();
}

RevivalReport detect_file(const std::filesystem::path& csv, const DetectOptions& o) {
  const TimeSeries s = read_series_csv(csv);
  if (s.contains_neg_infinity) throw InvalidArgument("series contains -inf samples");
  return analyze_revivals(s, o.predicted_t_rev, o.analysis);
}

std::vector<std::string> run_detect(const std::filesystem::path& csv, const DetectOptions& o,
                                    const RunOptions& run) {
  ExperimentConfig c;
  c.name = csv.stem().string();
  ArtifactWriter w(c, run, "detect");
  const TimeSeries s = read_series_csv(csv);
  const RevivalReport r = detect_file(csv, o);
  w.text("report.csv", report_csv({c.name}, {r}));
  w.text("events.csv", events_csv(r));
  if (run.plot) {
    PlotStyle style;
    style.title = c.name;
    w.text("series.svg", render_series_svg(s, r.stats, style));
  }
  if (std::ostream* log = w.log()) {
    *log << c.name << ": " << r.events.size() << " events";
    if (r.measured_t_rev) *log << ", first at " << format_double(*r.measured_t_rev);
    *log << "\n";
  }
  return w.finish();
}

}  // namespace xyrevival::experiment
