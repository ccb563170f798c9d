#pragma once

#include <optional>
#include <string>

#include "ppgossip/agent/setup.hpp"
#include "ppgossip/simnet/schedule.hpp"

namespace ppg::simnet {

struct SimulationConfig {
  Topology topology;
  /// Graph swaps (step, topology) applied before the given 1-based step.
  std::vector<std::pair<std::size_t, Topology>> topology_changes;
  std::vector<mpz_class> inputs;      ///< quantized, < 2^ell
  std::vector<mpz_class> thresholds;  ///< quantized; empty skips the decision phase
  double scale = 1.0;                 ///< quantization factor K, for reported deviations
  ModulusParams modulus;
  agent::ReductionParams reduction;
  agent::KeyMode key_mode = agent::KeyMode::dynamic;
  std::string backend = "test";
  unsigned label_bits = 128;
  bool dual = true;
  double eps = 0.01;
  std::optional<std::size_t> steps;  ///< overrides T(eps)
  std::uint64_t seed = 1;
  std::optional<std::size_t> fault_step;  ///< test hook: corrupt one fused value at this step
};

struct StepRecord {
  std::size_t step = 0;
  std::size_t i = 0, j = 0;
  std::size_t bytes_round1 = 0;
  std::size_t bytes_round2 = 0;
  unsigned rounds = 2;
  bool reduced = false;
  double max_dev = 0;  ///< max_i |y_i - mean|, in input units
};

/// First step at which an agent's unmasked state differs from the oracle.
struct OracleMismatch {
  std::size_t step = 0;
  std::size_t agent = 0;
  RationalState expected;
  RationalState actual;
};

struct DecisionRecord {
  std::size_t evaluator = 0;
  std::optional<std::size_t> garbler;  ///< absent for plaintext decisions
  bool dual = false;
  bool result = false;
  bool expected = false;
  std::optional<bool> garbler_result;
  std::optional<bool> garbler_expected;
  // Garbled-circuit accounting (zero for plaintext decisions).
  unsigned w = 0;
  unsigned t = 0;
  std::size_t and_gates = 0;
  std::uint64_t hashes = 0;
  std::size_t modelled_bits = 0;
  std::size_t overhead_bits = 0;
  unsigned gc_rounds = 0;
};

struct SimulationTrace {
  std::size_t n_agents = 0;
  std::size_t steps_planned = 0;
  std::optional<double> lambda2;
  std::size_t q_bits = 0;
  unsigned n_bits = 0;
  unsigned label_bits = 0;
  std::vector<StepRecord> steps;
  std::vector<OracleMismatch> mismatches;
  std::size_t mean_violations = 0;   ///< steps where the exact oracle mean changed
  std::size_t view_exposures = 0;    ///< at-rest views equal to the true numerator
  bool wrapped = false;
  std::size_t reductions = 0;
  double max_reduction_drift = 0;    ///< max |protocol value - exact value|
  double drift_bound = 0;            ///< reductions * 2^(k - ell1)
  std::vector<DecisionRecord> decisions;
  std::vector<agent::OpCensus> census;
  std::vector<std::size_t> cross_keys;
  std::vector<std::size_t> self_keys;
  double initial_l2 = 0;  ///< ||y(0)||_2
  double final_l2_dev = 0;  ///< ||y(T) - mean 1||_2
  std::vector<double> final_values;
};

/// Runs setup, T update steps through the agents, and the decision phase.
/// The harness tracks a plaintext oracle alongside and unmasks every agent
/// after every step using the masks retained by their last partners.
/// Protocol errors are rethrown as std::runtime_error naming the step.
SimulationTrace run_simulation(const SimulationConfig& cfg);

}  // namespace ppg::simnet
