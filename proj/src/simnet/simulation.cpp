#include "ppgossip/simnet/simulation.hpp"

#include <cmath>
#include <string>

#include "ppgossip/simnet/spectral.hpp"

namespace ppg::simnet {

namespace {

void validate(const SimulationConfig& cfg) {
  const std::size_t n = cfg.topology.size();
  if (n == 0) throw std::invalid_argument("simulation: empty network");
  if (cfg.inputs.size() != n) throw std::invalid_argument("simulation: one input per agent required");
  if (!cfg.thresholds.empty() && cfg.thresholds.size() != n)
    throw std::invalid_argument("simulation: one threshold per agent required");
  if (!cfg.topology.connected()) throw std::invalid_argument("simulation: topology must be connected");
  cfg.modulus.validate();
  cfg.reduction.validate(cfg.modulus);
  for (const auto& [step, t] : cfg.topology_changes) {
    if (t.size() != n) throw std::invalid_argument("simulation: topology change alters N");
    if (step == 0) throw std::invalid_argument("simulation: topology change steps are 1-based");
  }
  if (!cfg.topology_changes.empty() && cfg.key_mode != agent::KeyMode::dynamic)
    throw std::invalid_argument("simulation: changing topologies need dynamic key distribution");
  for (const auto& x : cfg.inputs)
    if (x < 0 || mpz_sizeinbase(x.get_mpz_t(), 2) > cfg.modulus.ell)
      throw std::invalid_argument("simulation: inputs must be non-negative and fit in ell bits");
  if (!(cfg.scale > 0)) throw std::invalid_argument("simulation: scale must be positive");
}

RationalState unmask(const std::vector<agent::Agent>& agents, std::size_t a) {
  const agent::Agent& ag = agents[a];
  mpz_class v = ag.masked();
  if (const auto lp = ag.last_partner()) {
    v -= agents[*lp].issued_mask(a).value;
    mpz_fdiv_r_2exp(v.get_mpz_t(), v.get_mpz_t(), ag.modulus().n_bits);
  }
  return {v, ag.denom_exp()};
}

}  // namespace

SimulationTrace run_simulation(const SimulationConfig& cfg) {
  validate(cfg);
  const std::size_t n_agents = cfg.topology.size();
  const ModulusParams& mp = cfg.modulus;
  const mpz_class n = mp.n();

  SimulationTrace tr;
  tr.n_agents = n_agents;
  tr.n_bits = mp.n_bits;
  tr.label_bits = cfg.label_bits;

  const auto group = pre::make_group(cfg.backend);
  const pre::PreScheme scheme(group);
  const pre::EnvelopeCodec codec(scheme, mp.n_bits);
  const agent::MessageCodec wire(codec, mp.n_bits);
  tr.q_bits = group->order_bits();

  std::size_t steps = 0;
  if (n_agents >= 2) {
    tr.lambda2 = lambda2(expected_w(cfg.topology, uniform_pair_probs(cfg.topology)));
    steps = cfg.steps ? *cfg.steps : epsilon_averaging_T(cfg.eps, *tr.lambda2);
  }
  tr.steps_planned = steps;

  // The schedule is fixed up front so each agent's final update is known and
  // its partner can draw the pre-decision mask.
  const Rng root(cfg.seed);
  GossipSchedule sched(cfg.topology, root.split("schedule"));
  std::vector<Edge> pairs;
  std::vector<std::size_t> last_step(n_agents, 0);
  for (std::size_t tau = 1; tau <= steps; ++tau) {
    for (const auto& [at, topo] : cfg.topology_changes)
      if (at == tau) sched.set_topology(topo);
    pairs.push_back(sched.random_pair());
    last_step[pairs.back().first] = last_step[pairs.back().second] = tau;
  }

  Rng setup_rng = root.split("setup");
  std::vector<agent::Agent> agents = agent::setup_agents(cfg.inputs, codec, mp, cfg.reduction, cfg.key_mode,
                                                         cfg.topology.neighbor_lists(), setup_rng);
  std::vector<Rng> rngs;
  for (std::size_t a = 0; a < n_agents; ++a) rngs.push_back(root.split("agent", a));

  GossipOracle mirror(cfg.inputs, n);  // follows the protocol, reductions included
  GossipOracle exact(cfg.inputs, n);   // never reduced
  const mpq_class mean0 = exact.mean();
  const double mean0_d = mean0.get_d() / cfg.scale;
  {
    double s = 0;
    for (std::size_t a = 0; a < n_agents; ++a) s += std::pow(mirror.value(a).get_d() / cfg.scale, 2);
    tr.initial_l2 = std::sqrt(s);
  }
  std::vector<bool> diverged(n_agents, false);

  for (std::size_t tau = 1; tau <= steps; ++tau) {
    const auto [i, j] = pairs[tau - 1];
    StepRecord rec;
    rec.step = tau;
    rec.i = i;
    rec.j = j;
    try {
      const Bytes m1i = wire.encode(agents[i].part1(j, rngs[i]));
      const Bytes m1j = wire.encode(agents[j].part1(i, rngs[j]));
      rec.bytes_round1 = m1i.size() + m1j.size();
      if (cfg.fault_step == tau) agents[i].inject_fault();
      const Bytes m2i = wire.encode(agents[i].part2(wire.decode_msg1(m1j), rngs[i], tau == last_step[j]));
      const Bytes m2j = wire.encode(agents[j].part2(wire.decode_msg1(m1i), rngs[j], tau == last_step[i]));
      rec.bytes_round2 = m2i.size() + m2j.size();
      agents[i].part3(wire.decode_msg2(m2j));
      agents[j].part3(wire.decode_msg2(m2i));
    } catch (const std::exception& e) {
      throw std::runtime_error("step " + std::to_string(tau) + ": " + e.what());
    }

    mirror.fuse(i, j);
    exact.fuse(i, j);
    if (cfg.reduction.enabled() && mirror.state(i).denom_exp == cfg.reduction.ell1) {
      mirror.reduce(i, cfg.reduction.k);
      mirror.reduce(j, cfg.reduction.k);
      rec.reduced = true;
      ++tr.reductions;
    }
    if (exact.mean() != mean0) ++tr.mean_violations;

    double max_dev = 0;
    for (std::size_t a = 0; a < n_agents; ++a) {
      const RationalState got = unmask(agents, a);
      if (got != mirror.state(a) && !diverged[a]) {
        diverged[a] = true;
        tr.mismatches.push_back({tau, a, mirror.state(a), got});
      }
      const double v = mirror.value(a).get_d();
      max_dev = std::max(max_dev, std::abs(v / cfg.scale - mean0_d));
      tr.max_reduction_drift = std::max(tr.max_reduction_drift, std::abs(v - exact.value(a).get_d()));
    }
    for (std::size_t a : {i, j})
      if (agents[a].view().masked == mirror.state(a).numerator) ++tr.view_exposures;
    rec.max_dev = max_dev;
    tr.steps.push_back(rec);
  }
  tr.wrapped = mirror.wrapped();
  if (cfg.reduction.enabled())
    tr.drift_bound = static_cast<double>(tr.reductions) *
                     std::ldexp(1.0, static_cast<int>(cfg.reduction.k) - static_cast<int>(cfg.reduction.ell1));

  {
    double s = 0;
    for (std::size_t a = 0; a < n_agents; ++a) {
      const double v = mirror.value(a).get_d() / cfg.scale;
      tr.final_values.push_back(v);
      s += (v - mean0_d) * (v - mean0_d);
    }
    tr.final_l2_dev = std::sqrt(s);
  }

  if (!cfg.thresholds.empty()) {
    std::vector<bool> done(n_agents, false);
    for (std::size_t a = 0; a < n_agents; ++a) {
      if (done[a]) continue;
      done[a] = true;
      DecisionRecord d;
      d.evaluator = a;
      d.expected = decide_plain(mirror.state(a), cfg.thresholds[a]);
      const auto lp = agents[a].last_partner();
      if (!lp) {
        // Never updated: the agent decides on its own input in the clear.
        if (mpz_sizeinbase(cfg.thresholds[a].get_mpz_t(), 2) > mp.ell || cfg.thresholds[a] < 0)
          throw std::invalid_argument("simulation: threshold must fit in ell bits");
        d.result = decide_plain({agents[a].masked(), agents[a].denom_exp()}, cfg.thresholds[a]);
        tr.decisions.push_back(d);
        continue;
      }
      const std::size_t j = *lp;
      const bool mutual = cfg.dual && last_step[a] == last_step[j] && !done[j];
      Rng grng = root.split("garbler", a);
      Rng dealer = root.split("dealer", a);
      gc::DecisionOutcome out;
      try {
        out = agent::decide(agents[a], agents[j], cfg.thresholds[a],
                            mutual ? std::optional<mpz_class>(cfg.thresholds[j]) : std::nullopt, cfg.label_bits, grng,
                            dealer);
      } catch (const std::exception& e) {
        throw std::runtime_error("decision of agent " + std::to_string(a) + ": " + e.what());
      }
      d.garbler = j;
      d.dual = mutual;
      d.result = out.evaluator_below;
      if (mutual) {
        done[j] = true;
        d.garbler_result = out.garbler_below;
        d.garbler_expected = decide_plain(mirror.state(j), cfg.thresholds[j]);
      }
      d.w = out.w;
      d.t = out.t;
      d.and_gates = out.and_gates;
      d.hashes = out.garble_hashes + out.eval_hashes;
      d.modelled_bits = out.modelled_bits();
      d.overhead_bits = out.overhead_bits();
      d.gc_rounds = out.gc_rounds();
      tr.decisions.push_back(d);
    }
  }

  for (const auto& ag : agents) {
    tr.census.push_back(ag.census());
    tr.cross_keys.push_back(ag.rekeys().cross_count());
    tr.self_keys.push_back(ag.rekeys().self_count());
  }
  return tr;
}

}  // namespace ppg::simnet
