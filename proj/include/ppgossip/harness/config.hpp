#pragma once

#include <string>
#include <vector>

#include "ppgossip/simnet/simulation.hpp"

namespace ppg::harness {

/// Raised for unreadable or invalid configurations. Carries every violated
/// precondition, each naming the governing inequality or the bad field.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

struct TopologySpec {
  std::string preset;  ///< empty when `file` is set
  std::string file;
  std::size_t n = 0;
  double radius = 0.4;
};

/// Input or threshold source: explicit real values, or uniform draws in [lo, hi).
struct ValueSpec {
  std::vector<double> values;
  bool random = false;
  double lo = 0, hi = 0;
};

struct ExperimentConfig {
  TopologySpec topology;
  double eps = 0.01;
  std::optional<std::size_t> steps;
  ValueSpec inputs;
  ValueSpec thresholds;
  double K = 1024;  ///< quantization factor (power of two)
  ModulusParams modulus;
  unsigned label_bits = 128;
  std::string backend = "test";
  agent::ReductionParams reduction;
  agent::KeyMode mode = agent::KeyMode::dynamic;
  bool dual = true;
  std::uint64_t seed = 1;
};

/// JSON text to a validated config. Throws ConfigError.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
/// Re-checks all preconditions (after CLI overrides). Throws ConfigError.
void validate(const ExperimentConfig& cfg);
/// Canonical JSON echo.
std::string to_json(const ExperimentConfig& cfg);

/// Builds the topology and quantized inputs/thresholds. Random draws come from
/// streams derived from cfg.seed.
simnet::SimulationConfig to_simulation(const ExperimentConfig& cfg);
simnet::Topology build_topology(const ExperimentConfig& cfg);

}  // namespace ppg::harness
