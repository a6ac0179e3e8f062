#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "xyrevival/error.hpp"
#include "xyrevival/experiment/config.hpp"
#include "xyrevival/experiment/runner.hpp"

namespace {

namespace xe = xyrevival::experiment;

struct CommonFlags {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::optional<bool> plot;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool needs_config) {
  auto* c = cmd->add_option("--config", f.config, "experiment config (JSON)");
  if (needs_config) c->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", f.out, "output directory (overrides output.dir)");
  cmd->add_option("--seed", f.seed, "disorder seed (overrides the config)");
  cmd->add_option("--threads", f.threads, "worker threads for sweeps and maps")->check(CLI::PositiveNumber);
  cmd->add_flag("--plot,!--no-plot", f.plot, "write plots (default from config)");
}

xe::ExperimentConfig load(const CommonFlags& f) {
  xe::ExperimentConfig c = xe::load_config(f.config);
  if (f.seed) c.seed = *f.seed;
  if (!f.out.empty()) c.output.dir = f.out;
  if (f.plot) c.output.plot = *f.plot;
  c.validate();
  return c;
}

xe::RunOptions run_options(const xe::ExperimentConfig& c, const CommonFlags& f) {
  return {c.output.dir, c.output.plot, f.threads, &std::cout};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quench revivals in the transverse-field XY chain"};
  app.require_subcommand(1);

  CommonFlags quench, local, sweep, vmax, detect;
  auto* q = app.add_subcommand("quench", "global quench time series and revival report");
  add_common(q, quench, true);
  auto* lq = app.add_subcommand("local-quench", "spreading of a single spin flip");
  add_common(lq, local, true);
  auto* sw = app.add_subcommand("sweep", "revival statistics across one parameter axis");
  add_common(sw, sweep, true);
  auto* vm = app.add_subcommand("vmax-map", "maximal group velocity over the (eta, h) plane");
  add_common(vm, vmax, false);

  auto* dt = app.add_subcommand("detect", "re-analyse an existing t,value CSV");
  add_common(dt, detect, false);
  std::string input;
  std::optional<double> predicted, threshold, burn_in;
  dt->add_option("--input", input, "series CSV")->required()->check(CLI::ExistingFile);
  dt->add_option("--predicted", predicted, "predicted revival time");
  dt->add_option("--threshold", threshold, "threshold in standard deviations");
  dt->add_option("--burn-in", burn_in, "samples before this time are ignored");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(xyrevival::ErrorCategory::invalid_argument);
  }

  try {
    if (*q) {
      const auto c = load(quench);
      xe::run_quench(c, run_options(c, quench));
    } else if (*lq) {
      const auto c = load(local);
      xe::run_local_quench(c, run_options(c, local));
    } else if (*sw) {
      const auto c = load(sweep);
      xe::run_sweep(c, run_options(c, sweep));
    } else if (*vm) {
      xe::ExperimentConfig c;
      c.name = "vmax_map";
      c.vmax_map = xe::VmaxMapConfig{};
      if (!vmax.config.empty()) c = load(vmax);
      if (!vmax.out.empty()) c.output.dir = vmax.out;
      if (vmax.plot) c.output.plot = *vmax.plot;
      xe::run_vmax_map(c, run_options(c, vmax));
    } else if (*dt) {
      xe::DetectOptions o;
      o.predicted_t_rev = predicted;
      if (!detect.config.empty()) {
        const auto c = load(detect);
        o.analysis.threshold_sigma = c.detector.threshold_sigma;
        o.analysis.burn_in = c.detector.burn_in;
        o.analysis.dead_time = c.detector.dead_time;
        o.analysis.window = {c.detector.window_lower, c.detector.window_upper};
      }
      if (threshold) o.analysis.threshold_sigma = *threshold;
      if (burn_in) o.analysis.burn_in = *burn_in;
      const std::string out = detect.out.empty() ? "out/detect" : detect.out;
      xe::run_detect(input, o, {out, detect.plot.value_or(true), detect.threads, &std::cout});
    }
  } catch (const xyrevival::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.category());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(xyrevival::ErrorCategory::io);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
