#include "ppgossip/harness/audit.hpp"

#include <algorithm>
#include <sstream>

#include "ppgossip/gc/decision.hpp"

namespace ppg::harness {

bool AuditReport::all_pass() const { return failures() == 0; }

std::size_t AuditReport::failures() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const AuditRow& r) { return !r.pass; }));
}

namespace {

template <class A, class B>
AuditRow eq(std::string name, A measured, B bound) {
  return {std::move(name), std::to_string(measured), "=", std::to_string(bound),
          static_cast<unsigned long long>(measured) == static_cast<unsigned long long>(bound)};
}

template <class A, class B>
AuditRow le(std::string name, A measured, B bound) {
  return {std::move(name), std::to_string(measured), "<=", std::to_string(bound),
          static_cast<unsigned long long>(measured) <= static_cast<unsigned long long>(bound)};
}

}  // namespace

AuditReport build_audit(const simnet::SimulationTrace& tr) {
  AuditReport r;
  const std::size_t bound = update_step_bound_bits(tr.q_bits, tr.n_bits);

  std::size_t max_bits = 0;
  unsigned max_rounds = 0, min_rounds = 2;
  for (const auto& s : tr.steps) {
    max_bits = std::max(max_bits, 8 * (s.bytes_round1 + s.bytes_round2));
    max_rounds = std::max(max_rounds, s.rounds);
    min_rounds = std::min(min_rounds, s.rounds);
  }
  if (!tr.steps.empty()) {
    r.rows.push_back({"update_step_bits_max", std::to_string(max_bits), "<", std::to_string(bound), max_bits < bound});
    r.rows.push_back(eq("update_step_rounds", max_rounds, 2));
    r.rows.push_back(eq("update_step_rounds_min", min_rounds, 2));
  }

  // Census over all updates: every participation performs one level-2
  // encryption and six modular additions; all but an agent's first one
  // re-encrypt, and each re-encryption is opened by the partner.
  std::uint64_t l2 = 0, reenc = 0, l1 = 0, adds = 0, prods = 0;
  for (const auto& c : tr.census) {
    l2 += c.l2_encryptions;
    reenc += c.reencryptions;
    l1 += c.l1_decryptions;
    adds += c.mod_additions;
    prods += c.mod_products;
  }
  std::size_t active = 0;
  {
    std::vector<bool> seen(tr.n_agents, false);
    for (const auto& s : tr.steps) seen[s.i] = seen[s.j] = true;
    active = static_cast<std::size_t>(std::count(seen.begin(), seen.end(), true));
  }
  const std::size_t parts = 2 * tr.steps.size();
  if (!tr.steps.empty()) {
    r.rows.push_back(eq("census_l2_encryptions", l2, parts));
    r.rows.push_back(eq("census_reencryptions", reenc, parts - active));
    r.rows.push_back(eq("census_l1_decryptions", l1, reenc));
    r.rows.push_back(eq("census_modular_additions", adds, 6 * parts));
    r.rows.push_back(le("census_modular_products", prods, 2 * parts));
  }

  for (const auto& d : tr.decisions) {
    if (!d.garbler) continue;
    const std::string tag = "[" + std::to_string(d.evaluator) + (d.dual ? "<->" : "<-") + std::to_string(*d.garbler) +
                            ",w=" + std::to_string(d.w) + ",t=" + std::to_string(d.t) + "]";
    if (d.dual) {
      r.rows.push_back(eq("final_step_bits" + tag, d.modelled_bits, gc::account_final_step(d.w, d.t)));
      r.rows.push_back(eq("final_step_non_xor" + tag, d.and_gates, 3ull * d.w));
      r.rows.push_back(eq("final_step_hashes" + tag, d.hashes, 12ull * d.w));
      r.rows.push_back(eq("final_step_rounds" + tag, d.gc_rounds, 2));
      r.rows.push_back(eq("final_step_control_bits" + tag, d.overhead_bits, 2ull * d.w + 1 + d.t));
    } else {
      // One comparator: OT 4wt + garbler labels wt + tables 6wt.
      r.rows.push_back(eq("decision_bits" + tag, d.modelled_bits, 11ull * d.w * d.t));
      r.rows.push_back(eq("decision_non_xor" + tag, d.and_gates, 2ull * d.w));
      r.rows.push_back(eq("decision_rounds" + tag, d.gc_rounds, 2));
    }
  }
  std::size_t wrong = 0;
  for (const auto& d : tr.decisions) {
    wrong += d.result != d.expected;
    if (d.garbler_result) wrong += *d.garbler_result != *d.garbler_expected;
  }
  r.rows.push_back(eq("decision_mismatches", wrong, 0));
  r.rows.push_back(eq("oracle_mismatches", tr.mismatches.size(), 0));
  r.rows.push_back(eq("mean_violations", tr.mean_violations, 0));
  r.rows.push_back(eq("view_exposures", tr.view_exposures, 0));
  r.rows.push_back(eq("modular_wraparound", tr.wrapped ? 1 : 0, 0));
  return r;
}

std::string format_audit(const AuditReport& r) {
  std::ostringstream os;
  std::size_t width = 5;
  for (const auto& row : r.rows) width = std::max(width, row.name.size());
  os << "check" << std::string(width - 5 + 2, ' ') << "measured relation bound result\n";
  for (const auto& row : r.rows) {
    os << row.name << std::string(width - row.name.size() + 2, ' ') << row.measured << ' ' << row.relation << ' '
       << row.bound << ' ' << (row.pass ? "PASS" : "FAIL") << '\n';
  }
  os << "summary " << (r.rows.size() - r.failures()) << '/' << r.rows.size() << " pass\n";
  return os.str();
}

}  // namespace ppg::harness
