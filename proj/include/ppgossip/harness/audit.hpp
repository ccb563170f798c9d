#pragma once

#include <string>
#include <vector>

#include "ppgossip/simnet/simulation.hpp"

namespace ppg::harness {

struct AuditRow {
  std::string name;
  std::string measured;
  std::string relation;  ///< "<", "=", "<="
  std::string bound;
  bool pass = false;
};

struct AuditReport {
  std::vector<AuditRow> rows;

  bool all_pass() const;
  std::size_t failures() const;
};

/// Per-update wire bound 16 ceil(log2 q) + 6 ceil(log2 n) bits.
constexpr std::size_t update_step_bound_bits(std::size_t q_bits, std::size_t n_bits) { return 16 * q_bits + 6 * n_bits; }

/// Complexity-table audit of a run: per-step wire bits and rounds, final-step
/// bits, gate and hash counts, operation census, oracle agreement.
AuditReport build_audit(const simnet::SimulationTrace& tr);

/// One row per line: name, measured, relation, bound, PASS/FAIL.
std::string format_audit(const AuditReport& r);

}  // namespace ppg::harness
