// Experiment harness: seeded runs, oracle comparison, spectral analysis and
// the complexity audit.

#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ppgossip/harness/audit.hpp"
#include "ppgossip/harness/config.hpp"
#include "ppgossip/harness/report.hpp"

namespace fs = std::filesystem;
using namespace ppg;

namespace {

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  std::optional<std::string> backend;
  std::size_t sweep = 0;
  std::optional<std::size_t> fault_step;
};

harness::ExperimentConfig load(const Options& o) {
  harness::ExperimentConfig c = harness::load_config(o.config);
  if (o.seed) c.seed = *o.seed;
  if (o.backend) c.backend = *o.backend;
  harness::validate(c);
  return c;
}

fs::path out_path(const Options& o, const std::string& name) {
  fs::create_directories(o.out_dir);
  return fs::path(o.out_dir) / name;
}

int cmd_run(const Options& o, bool audit_only) {
  const harness::ExperimentConfig c = load(o);
  if (!audit_only) std::cout << harness::to_json(c) << '\n';

  if (o.sweep > 0) {
    std::ostringstream csv;
    csv << "seed,steps,final_l2_dev,initial_l2,within_eps,oracle_ok,audit_pass\n";
    std::size_t within = 0;
    bool ok = true;
    for (std::size_t s = 0; s < o.sweep; ++s) {
      harness::ExperimentConfig cs = c;
      cs.seed = c.seed + s;
      const auto tr = simnet::run_simulation(harness::to_simulation(cs));
      const bool in_eps = tr.final_l2_dev <= cs.eps * tr.initial_l2;
      const bool oracle_ok = tr.mismatches.empty();
      const bool audit_ok = harness::build_audit(tr).all_pass();
      within += in_eps;
      ok = ok && oracle_ok && audit_ok;
      csv << cs.seed << ',' << tr.steps.size() << ',' << harness::fmt(tr.final_l2_dev) << ','
          << harness::fmt(tr.initial_l2) << ',' << in_eps << ',' << oracle_ok << ',' << audit_ok << '\n';
    }
    harness::write_file(out_path(o, "sweep.csv").string(), csv.str());
    std::cout << "within eps: " << within << '/' << o.sweep << '\n';
    return ok ? 0 : 1;
  }

  simnet::SimulationConfig sc = harness::to_simulation(c);
  sc.fault_step = o.fault_step;
  const auto tr = simnet::run_simulation(sc);
  const harness::AuditReport audit = harness::build_audit(tr);
  const std::string audit_txt = harness::format_audit(audit);
  harness::write_file(out_path(o, "audit.txt").string(), audit_txt);
  if (!audit_only) harness::write_file(out_path(o, "trace.csv").string(), harness::trace_csv(tr));
  std::cout << audit_txt;
  const std::string diff = harness::oracle_diff(tr);
  if (!tr.mismatches.empty()) std::cout << diff;
  if (!audit_only)
    std::cout << "steps " << tr.steps.size() << ", final ||y - mean||_2 " << harness::fmt(tr.final_l2_dev) << '\n';
  return audit.all_pass() && tr.mismatches.empty() ? 0 : 1;
}

int cmd_oracle_diff(const Options& o) {
  const harness::ExperimentConfig c = load(o);
  if (c.backend != "test") {
    std::cerr << "oracle-diff requires the test backend\n";
    return 2;
  }
  simnet::SimulationConfig sc = harness::to_simulation(c);
  sc.fault_step = o.fault_step;
  const auto tr = simnet::run_simulation(sc);
  const std::string diff = harness::oracle_diff(tr);
  std::cout << diff;
  if (tr.mismatches.empty()) {
    std::cout << "no divergence over " << tr.steps.size() << " steps\n";
    return tr.reductions > 0 && tr.max_reduction_drift > tr.drift_bound ? 1 : 0;
  }
  const auto& first = tr.mismatches.front();
  std::cout << "first divergence at step " << first.step << ", agent " << first.agent << '\n';
  return 1;
}

int cmd_spectral(const Options& o) {
  const harness::ExperimentConfig c = load(o);
  const std::string rep = harness::spectral_report(harness::build_topology(c));
  harness::write_file(out_path(o, "spectral.txt").string(), rep);
  std::cout << rep;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Privacy-preserving gossip consensus: simulator and audit harness"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "JSON experiment configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", o.seed, "override the configured seed");
    sub->add_option("--out-dir", o.out_dir, "directory for output files");
    sub->add_option("--backend", o.backend, "pairing backend: test or pairing");
  };
  CLI::App* run = app.add_subcommand("run", "run a simulation, write trace.csv and audit.txt");
  add_common(run);
  run->add_option("--sweep-seeds", o.sweep, "run N consecutive seeds and write sweep.csv");
  CLI::App* diff = app.add_subcommand("oracle-diff", "compare the unmasked protocol state with the plaintext oracle");
  add_common(diff);
  diff->add_option("--inject-fault", o.fault_step, "corrupt one fused value at this step (1-based)");
  CLI::App* spectral = app.add_subcommand("spectral", "lambda2 of E[W] and T(eps) table");
  add_common(spectral);
  CLI::App* audit = app.add_subcommand("audit", "run and print the complexity audit only");
  add_common(audit);

  CLI11_PARSE(app, argc, argv);
  try {
    if (run->parsed()) return cmd_run(o, false);
    if (diff->parsed()) return cmd_oracle_diff(o);
    if (spectral->parsed()) return cmd_spectral(o);
    if (audit->parsed()) return cmd_run(o, true);
  } catch (const harness::ConfigError& e) {
    std::cerr << "configuration rejected:\n";
    for (const auto& p : e.problems()) std::cerr << "  - " << p << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
