#include "ppgossip/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ppg::harness {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& p : v) s += (s.empty() ? "" : "; ") + p;
  return s;
}

const std::vector<std::string> kKnownKeys{"topology", "eps",      "steps",    "inputs", "thresholds", "K",
                                          "modulus",  "label_bits", "backend", "reduction", "mode", "decision",
                                          "seed"};

template <class T>
void read(const json& j, const char* key, T& out, std::vector<std::string>& errs, const std::string& ctx = "") {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    errs.push_back("field '" + ctx + key + "' has the wrong type");
  }
}

ValueSpec read_values(const json& j, const char* key, std::vector<std::string>& errs) {
  ValueSpec v;
  if (!j.contains(key)) return v;
  const json& x = j.at(key);
  try {
    if (x.is_array()) {
      v.values = x.get<std::vector<double>>();
    } else if (x.is_number()) {
      v.values = {x.get<double>()};  // broadcast to every agent
    } else if (x.is_object() && x.contains("uniform")) {
      const auto r = x.at("uniform").get<std::vector<double>>();
      if (r.size() != 2) throw std::invalid_argument("range");
      v.random = true;
      v.lo = r[0];
      v.hi = r[1];
    } else {
      errs.push_back(std::string("field '") + key + "' must be a number, an array, or {\"uniform\": [lo, hi]}");
    }
  } catch (const std::exception&) {
    errs.push_back(std::string("field '") + key + "' is malformed");
  }
  return v;
}

void check_values(const ValueSpec& v, const char* name, const ExperimentConfig& c, std::size_t n,
                  std::vector<std::string>& errs) {
  const double limit = std::ldexp(1.0, static_cast<int>(c.modulus.ell)) / c.K;
  if (v.random) {
    if (!(v.lo >= 0 && v.lo < v.hi && v.hi <= limit))
      errs.push_back(std::string(name) + ": need 0 <= lo < hi <= 2^ell / K = " + std::to_string(limit));
    return;
  }
  if (v.values.empty()) {
    errs.push_back(std::string(name) + ": missing");
    return;
  }
  if (v.values.size() != 1 && n != 0 && v.values.size() != n)
    errs.push_back(std::string(name) + ": expected 1 or N=" + std::to_string(n) + " values, got " +
                   std::to_string(v.values.size()));
  for (double x : v.values)
    if (!(x >= 0 && x * c.K < std::ldexp(1.0, static_cast<int>(c.modulus.ell)))) {
      errs.push_back(std::string(name) + ": values must satisfy 0 <= x and K*x < 2^ell");
      break;
    }
}

std::vector<mpz_class> realize(const ValueSpec& v, std::size_t n, const QuantizationConfig& q, Rng rng) {
  std::vector<mpz_class> out;
  for (std::size_t i = 0; i < n; ++i) {
    double x = 0;
    if (v.random) x = v.lo + (v.hi - v.lo) * rng.uniform_real();
    else x = v.values.size() == 1 ? v.values[0] : v.values[i];
    out.emplace_back(static_cast<unsigned long>(quantize(x, q)));
  }
  return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error("invalid configuration: " + join(problems)), problems_(std::move(problems)) {}

void validate(const ExperimentConfig& c) {
  std::vector<std::string> errs;
  const auto& presets = simnet::preset_names();
  if (c.topology.file.empty()) {
    if (std::find(presets.begin(), presets.end(), c.topology.preset) == presets.end()) {
      std::string list;
      for (const auto& p : presets) list += (list.empty() ? "" : ", ") + p;
      errs.push_back("topology: unknown preset '" + c.topology.preset + "' (known: " + list + ")");
    }
    if (c.topology.n == 0) errs.push_back("topology: n >= 1 required");
  } else if (!c.topology.preset.empty()) {
    errs.push_back("topology: give either 'preset' or 'file', not both");
  }
  if (!(c.eps > 0 && c.eps < 1)) errs.push_back("eps: 0 < eps < 1 required");
  try {
    QuantizationConfig{c.K, c.modulus.ell}.validate();
  } catch (const std::exception& e) {
    errs.push_back(e.what());
  }
  try {
    c.modulus.validate();
  } catch (const std::exception& e) {
    errs.push_back(e.what());
  }
  try {
    c.reduction.validate(c.modulus);
  } catch (const std::exception& e) {
    errs.push_back(e.what());
  }
  if (c.label_bits == 0 || c.label_bits > 256) errs.push_back("label_bits: 1 <= t <= 256 required");
  if (c.backend != "test" && c.backend != "pairing") errs.push_back("backend: expected 'test' or 'pairing'");
  if (c.steps && c.modulus.ell + *c.steps >= c.modulus.n_bits && !c.reduction.enabled())
    errs.push_back("steps: ell + steps < log2 n required without the reduction variant (denominators grow by one bit per update)");
  const std::size_t n = c.topology.file.empty() ? c.topology.n : 0;
  check_values(c.inputs, "inputs", c, n, errs);
  check_values(c.thresholds, "thresholds", c, n, errs);
  if (!errs.empty()) throw ConfigError(std::move(errs));
}

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("parse error: ") + e.what()});
  }
  if (!j.is_object()) throw ConfigError({"top level must be a JSON object"});
  std::vector<std::string> errs;
  for (const auto& [k, v] : j.items())
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), k) == kKnownKeys.end()) errs.push_back("unknown field '" + k + "'");

  ExperimentConfig c;
  if (!j.contains("topology") || !j["topology"].is_object()) {
    errs.push_back("field 'topology' (object with 'preset' and 'n', or 'file') is required");
  } else {
    const json& t = j["topology"];
    read(t, "preset", c.topology.preset, errs, "topology.");
    read(t, "file", c.topology.file, errs, "topology.");
    read(t, "n", c.topology.n, errs, "topology.");
    read(t, "radius", c.topology.radius, errs, "topology.");
  }
  read(j, "eps", c.eps, errs);
  if (j.contains("steps") && !j["steps"].is_null()) {
    std::size_t s = 0;
    read(j, "steps", s, errs);
    c.steps = s;
  }
  c.inputs = read_values(j, "inputs", errs);
  c.thresholds = read_values(j, "thresholds", errs);
  read(j, "K", c.K, errs);
  if (j.contains("modulus")) {
    const json& m = j["modulus"];
    read(m, "n_bits", c.modulus.n_bits, errs, "modulus.");
    read(m, "ell", c.modulus.ell, errs, "modulus.");
    read(m, "t", c.modulus.t, errs, "modulus.");
  }
  read(j, "label_bits", c.label_bits, errs);
  read(j, "backend", c.backend, errs);
  if (j.contains("reduction") && !j["reduction"].is_null()) {
    read(j["reduction"], "ell1", c.reduction.ell1, errs, "reduction.");
    read(j["reduction"], "k", c.reduction.k, errs, "reduction.");
  }
  std::string mode = "dynamic";
  read(j, "mode", mode, errs);
  if (mode == "dynamic") c.mode = agent::KeyMode::dynamic;
  else if (mode == "static") c.mode = agent::KeyMode::static_neighbors;
  else errs.push_back("mode: expected 'dynamic' or 'static'");
  if (j.contains("decision")) read(j["decision"], "dual", c.dual, errs, "decision.");
  read(j, "seed", c.seed, errs);
  if (!errs.empty()) throw ConfigError(std::move(errs));
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError({"cannot open " + path});
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string to_json(const ExperimentConfig& c) {
  json j;
  if (c.topology.file.empty()) j["topology"] = {{"preset", c.topology.preset}, {"n", c.topology.n}, {"radius", c.topology.radius}};
  else j["topology"] = {{"file", c.topology.file}};
  j["eps"] = c.eps;
  j["steps"] = c.steps ? json(*c.steps) : json(nullptr);
  auto values = [](const ValueSpec& v) {
    return v.random ? json{{"uniform", {v.lo, v.hi}}} : json(v.values);
  };
  j["inputs"] = values(c.inputs);
  j["thresholds"] = values(c.thresholds);
  j["K"] = c.K;
  j["modulus"] = {{"n_bits", c.modulus.n_bits}, {"ell", c.modulus.ell}, {"t", c.modulus.t}};
  j["label_bits"] = c.label_bits;
  j["backend"] = c.backend;
  j["reduction"] = c.reduction.enabled() ? json{{"ell1", c.reduction.ell1}, {"k", c.reduction.k}} : json(nullptr);
  j["mode"] = c.mode == agent::KeyMode::dynamic ? "dynamic" : "static";
  j["decision"] = {{"dual", c.dual}};
  j["seed"] = c.seed;
  return j.dump(2);
}

simnet::Topology build_topology(const ExperimentConfig& c) {
  if (!c.topology.file.empty()) return simnet::load_edge_list(c.topology.file);
  Rng rng = Rng(c.seed).split("topology");
  return simnet::make_preset(c.topology.preset, {c.topology.n, c.topology.radius}, rng);
}

simnet::SimulationConfig to_simulation(const ExperimentConfig& c) {
  validate(c);
  simnet::SimulationConfig s;
  s.topology = build_topology(c);
  const std::size_t n = s.topology.size();
  for (const ValueSpec* v : {&c.inputs, &c.thresholds})
    if (!v->random && v->values.size() != 1 && v->values.size() != n)
      throw ConfigError({"expected 1 or N=" + std::to_string(n) + " values for inputs/thresholds"});
  const QuantizationConfig q{c.K, c.modulus.ell};
  const Rng root(c.seed);
  s.inputs = realize(c.inputs, n, q, root.split("inputs"));
  s.thresholds = realize(c.thresholds, n, q, root.split("thresholds"));
  s.scale = c.K;
  s.modulus = c.modulus;
  s.reduction = c.reduction;
  s.key_mode = c.mode;
  s.backend = c.backend;
  s.label_bits = c.label_bits;
  s.dual = c.dual;
  s.eps = c.eps;
  s.steps = c.steps;
  s.seed = c.seed;
  return s;
}

}  // namespace ppg::harness
