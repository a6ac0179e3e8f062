#include "xyrevival/experiment/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>

#include "xyrevival/ed/basis.hpp"
#include "xyrevival/error.hpp"
#include "xyrevival/experiment/io.hpp"

namespace xyrevival::experiment {
namespace {

using nlohmann::json;

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
}

void reject_unknown(const json& j, const std::string& where,
                    std::initializer_list<std::string_view> allowed) {
  const std::set<std::string_view> keys(allowed);
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!keys.count(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

template <typename T>
T get(const json& j, const std::string& key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + " is missing or has the wrong type");
  }
}

template <typename T>
void get_to(const json& j, const std::string& key, const std::string& where, T& out) {
  if (j.contains(key)) out = get<T>(j, key, where);
}

template <typename T>
void get_optional(const json& j, const std::string& key, const std::string& where,
                  std::optional<T>& out) {
  if (!j.contains(key) || j.at(key).is_null()) return;
  out = get<T>(j, key, where);
}

// Integers must be written as integers; 400.0 is rejected for N.
int get_int(const json& j, const std::string& key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + "." + key + " must be an integer");
  return v.get<int>();
}

SideParams parse_side(const json& j, const std::string& where) {
  require_object(j, where);
  reject_unknown(j, where, {"eta", "h", "g", "epsilon"});
  SideParams p;
  get_to(j, "eta", where, p.eta);
  get_to(j, "h", where, p.h);
  get_to(j, "g", where, p.g);
  get_to(j, "epsilon", where, p.epsilon);
  return p;
}

json side_json(const SideParams& p) {
  return json{{"eta", p.eta}, {"h", p.h}, {"g", p.g}, {"epsilon", p.epsilon}};
}

bool finite(const SideParams& p) {
  return std::isfinite(p.eta) && std::isfinite(p.h) && std::isfinite(p.g) && std::isfinite(p.epsilon);
}

}  // namespace

std::string_view to_string(Engine e) { return e == Engine::ed ? "ed" : "free_fermion"; }

std::string_view to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::n_sites: return "N";
    case SweepAxis::g: return "g";
    case SweepAxis::epsilon: return "epsilon";
    case SweepAxis::h1: return "h1";
  }
  return "unknown";
}

void ExperimentConfig::validate() const {
  if (schema_version != kSchemaVersion)
    throw ConfigError("unsupported schema_version " + std::to_string(schema_version));
  if (name.empty()) throw ConfigError("name must not be empty");
  const bool n_swept = sweep && sweep->axis == SweepAxis::n_sites;
  if (!vmax_map && !n_swept && model.n_sites < 2) throw ConfigError("model.N must be at least 2");
  if (model.q != 0 && model.q != 1) throw ConfigError("model.q must be 0 or 1");
  if (!finite(model.initial) || !finite(model.quench)) throw ConfigError("non-finite model parameter");
  if (model.initial.epsilon < 0.0 || model.quench.epsilon < 0.0)
    throw ConfigError("epsilon must be non-negative");
  if (engine == Engine::free_fermion) {
    if (model.initial.g != 0.0 || model.quench.g != 0.0)
      throw ConfigError("the free-fermion engine needs g = 0");
    if (model.initial.epsilon != 0.0 || model.quench.epsilon != 0.0)
      throw ConfigError("the free-fermion engine needs epsilon = 0");
    if (model.max_flips) throw ConfigError("max_flips applies to the ed engine only");
  } else {
    if (model.boundary != "matched" && !ed::boundary_from_string(model.boundary))
      throw ConfigError("model.boundary must be periodic, antiperiodic, open or matched");
    if (model.parity && !ed::parity_from_string(*model.parity))
      throw ConfigError("model.parity must be even or odd");
    if (model.boundary == "matched" && model.parity)
      throw ConfigError("model.parity is implied by a matched boundary");
    if (model.max_flips && *model.max_flips < 0) throw ConfigError("max_flips must be non-negative");
  }
  if (model.max_dimension == 0) throw ConfigError("max_dimension must be positive");
  if (time.t_max && !(*time.t_max >= 0.0)) throw ConfigError("time.t_max must be non-negative");
  if (time.n_samples && *time.n_samples < 1) throw ConfigError("time.n_samples must be positive");
  if (!(detector.threshold_sigma > 0.0)) throw ConfigError("threshold_sigma must be positive");
  if (detector.burn_in && !(*detector.burn_in >= 0.0)) throw ConfigError("burn_in must be non-negative");
  if (detector.dead_time && !(*detector.dead_time >= 0.0))
    throw ConfigError("dead_time must be non-negative");
  if (!(detector.window_lower < detector.window_upper) || detector.window_lower < 0.0)
    throw ConfigError("visibility window must satisfy 0 <= lower < upper");
  if (realizations < 1) throw ConfigError("realizations must be at least 1");
  if (realizations > 1 && engine != Engine::ed)
    throw ConfigError("disorder realizations need the ed engine");
  if (sweep) {
    if (sweep->values.empty()) throw ConfigError("sweep.values must not be empty");
    for (double v : sweep->values) {
      if (!std::isfinite(v)) throw ConfigError("sweep values must be finite");
      if (sweep->axis == SweepAxis::n_sites && (v < 2 || v != std::floor(v)))
        throw ConfigError("N sweep values must be integers >= 2");
      if (sweep->axis == SweepAxis::epsilon && v < 0.0)
        throw ConfigError("epsilon sweep values must be non-negative");
    }
    if (engine == Engine::free_fermion &&
        (sweep->axis == SweepAxis::g || sweep->axis == SweepAxis::epsilon))
      throw ConfigError("g and epsilon sweeps need the ed engine");
  }
  if (vmax_map) {
    const VmaxMapConfig& m = *vmax_map;
    if (m.eta_steps < 1 || m.h_steps < 1) throw ConfigError("vmax_map steps must be positive");
    if (m.eta_min > m.eta_max || m.h_min > m.h_max) throw ConfigError("vmax_map ranges are inverted");
    if (m.resolution < 100) throw ConfigError("vmax_map.resolution must be at least 100");
  }
  if (output.dir.empty()) throw ConfigError("output.dir must not be empty");
}

ExperimentConfig parse_config(const json& j) {
  require_object(j, "config");
  reject_unknown(j, "config",
                 {"schema_version", "name", "engine", "model", "time", "observables", "detector",
                  "seed", "realizations", "sweep", "vmax_map", "output"});
  ExperimentConfig c;
  if (!j.contains("schema_version")) throw ConfigError("schema_version is required");
  c.schema_version = get_int(j, "schema_version", "config");
  get_to(j, "name", "config", c.name);

  if (j.contains("engine")) {
    const auto e = get<std::string>(j, "engine", "config");
    if (e == "free_fermion")
      c.engine = Engine::free_fermion;
    else if (e == "ed")
      c.engine = Engine::ed;
    else
      throw ConfigError("engine must be free_fermion or ed");
  }

  if (j.contains("model")) {
    const json& m = j.at("model");
    require_object(m, "model");
    reject_unknown(m, "model",
                   {"N", "q", "boundary", "parity", "max_flips", "max_dimension", "initial", "quench"});
    if (m.contains("N")) c.model.n_sites = get_int(m, "N", "model");
    if (m.contains("q")) c.model.q = get_int(m, "q", "model");
    get_to(m, "boundary", "model", c.model.boundary);
    get_optional(m, "parity", "model", c.model.parity);
    if (m.contains("max_flips") && !m.at("max_flips").is_null())
      c.model.max_flips = get_int(m, "max_flips", "model");
    get_to(m, "max_dimension", "model", c.model.max_dimension);
    if (m.contains("initial")) c.model.initial = parse_side(m.at("initial"), "model.initial");
    if (m.contains("quench")) c.model.quench = parse_side(m.at("quench"), "model.quench");
  }

  if (j.contains("time")) {
    const json& t = j.at("time");
    require_object(t, "time");
    reject_unknown(t, "time", {"t_max", "n_samples"});
    get_optional(t, "t_max", "time", c.time.t_max);
    get_optional(t, "n_samples", "time", c.time.n_samples);
  }

  if (j.contains("observables")) {
    const json& o = j.at("observables");
    if (!o.is_array()) throw ConfigError("observables must be an array");
    c.observables.clear();
    for (const json& name : o) {
      if (!name.is_string()) throw ConfigError("observable names must be strings");
      const auto obs = observable_from_string(name.get<std::string>());
      if (!obs) throw ConfigError("unknown observable '" + name.get<std::string>() + "'");
      c.observables.push_back(*obs);
    }
  }

  if (j.contains("detector")) {
    const json& d = j.at("detector");
    require_object(d, "detector");
    reject_unknown(d, "detector", {"threshold_sigma", "burn_in", "dead_time", "window"});
    get_to(d, "threshold_sigma", "detector", c.detector.threshold_sigma);
    get_optional(d, "burn_in", "detector", c.detector.burn_in);
    get_optional(d, "dead_time", "detector", c.detector.dead_time);
    if (d.contains("window")) {
      const auto w = get<std::vector<double>>(d, "window", "detector");
      if (w.size() != 2) throw ConfigError("detector.window must hold two numbers");
      c.detector.window_lower = w[0];
      c.detector.window_upper = w[1];
    }
  }

  if (j.contains("seed")) {
    const json& s = j.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0))
      throw ConfigError("seed must be a non-negative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("realizations")) c.realizations = get_int(j, "realizations", "config");

  if (j.contains("sweep") && !j.at("sweep").is_null()) {
    const json& s = j.at("sweep");
    require_object(s, "sweep");
    reject_unknown(s, "sweep", {"axis", "values"});
    SweepConfig sw;
    const auto axis = get<std::string>(s, "axis", "sweep");
    if (axis == "N")
      sw.axis = SweepAxis::n_sites;
    else if (axis == "g")
      sw.axis = SweepAxis::g;
    else if (axis == "epsilon")
      sw.axis = SweepAxis::epsilon;
    else if (axis == "h1")
      sw.axis = SweepAxis::h1;
    else
      throw ConfigError("sweep.axis must be N, g, epsilon or h1");
    sw.values = get<std::vector<double>>(s, "values", "sweep");
    c.sweep = sw;
  }

  if (j.contains("vmax_map") && !j.at("vmax_map").is_null()) {
    const json& v = j.at("vmax_map");
    require_object(v, "vmax_map");
    reject_unknown(v, "vmax_map", {"eta", "h", "resolution"});
    VmaxMapConfig m;
    auto axis = [&](const char* key, double& lo, double& hi, int& steps) {
      if (!v.contains(key)) return;
      const json& a = v.at(key);
      if (!a.is_array() || a.size() != 3 || !a[2].is_number_integer())
        throw ConfigError(std::string("vmax_map.") + key + " must be [min, max, steps]");
      lo = a[0].get<double>();
      hi = a[1].get<double>();
      steps = a[2].get<int>();
    };
    axis("eta", m.eta_min, m.eta_max, m.eta_steps);
    axis("h", m.h_min, m.h_max, m.h_steps);
    if (v.contains("resolution")) m.resolution = get_int(v, "resolution", "vmax_map");
    c.vmax_map = m;
  }

  if (j.contains("output")) {
    const json& o = j.at("output");
    require_object(o, "output");
    reject_unknown(o, "output", {"dir", "plot"});
    get_to(o, "dir", "output", c.output.dir);
    get_to(o, "plot", "output", c.output.plot);
  }

  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["schema_version"] = c.schema_version;
  j["name"] = c.name;
  j["engine"] = std::string(to_string(c.engine));
  json m{{"N", c.model.n_sites},
         {"q", c.model.q},
         {"boundary", c.model.boundary},
         {"max_dimension", c.model.max_dimension},
         {"initial", side_json(c.model.initial)},
         {"quench", side_json(c.model.quench)}};
  if (c.model.parity) m["parity"] = *c.model.parity;
  if (c.model.max_flips) m["max_flips"] = *c.model.max_flips;
  j["model"] = m;
  json t = json::object();
  if (c.time.t_max) t["t_max"] = *c.time.t_max;
  if (c.time.n_samples) t["n_samples"] = *c.time.n_samples;
  j["time"] = t;
  json obs = json::array();
  for (Observable o : c.observables) obs.push_back(std::string(to_string(o)));
  j["observables"] = obs;
  json d{{"threshold_sigma", c.detector.threshold_sigma},
         {"window", {c.detector.window_lower, c.detector.window_upper}}};
  if (c.detector.burn_in) d["burn_in"] = *c.detector.burn_in;
  if (c.detector.dead_time) d["dead_time"] = *c.detector.dead_time;
  j["detector"] = d;
  j["seed"] = c.seed;
  j["realizations"] = c.realizations;
  if (c.sweep) j["sweep"] = json{{"axis", std::string(to_string(c.sweep->axis))}, {"values", c.sweep->values}};
  if (c.vmax_map) {
    const VmaxMapConfig& v = *c.vmax_map;
    j["vmax_map"] = json{{"eta", {v.eta_min, v.eta_max, v.eta_steps}},
                         {"h", {v.h_min, v.h_max, v.h_steps}},
                         {"resolution", v.resolution}};
  }
  j["output"] = json{{"dir", c.output.dir}, {"plot", c.output.plot}};
  return j;
}

std::string config_hash(const ExperimentConfig& c) { return sha256_hex(to_json(c).dump()); }

}  // namespace xyrevival::experiment
