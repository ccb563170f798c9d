#include "ppgossip/gc/decision.hpp"

namespace ppg::gc {

std::size_t DecisionOutcome::modelled_bits() const {
  return transcript.bits(RecordKind::ot_transfer) + transcript.bits(RecordKind::garbler_labels) +
         transcript.bits(RecordKind::garbled_tables);
}

std::size_t DecisionOutcome::overhead_bits() const {
  return transcript.bits(RecordKind::ot_correction) + transcript.bits(RecordKind::output_decode) +
         transcript.bits(RecordKind::result_delivery);
}

unsigned DecisionOutcome::gc_rounds() const {
  return transcript.rounds({RecordKind::ot_correction, RecordKind::ot_transfer, RecordKind::garbler_labels,
                            RecordKind::garbled_tables, RecordKind::output_decode});
}

namespace {

void check_fits(const mpz_class& v, unsigned w, const char* what) {
  if (v < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > w)
    throw std::invalid_argument(std::string("decision: ") + what + " does not fit in w bits");
}

mpz_class low_bits(const mpz_class& v, unsigned w) {
  mpz_class r;
  mpz_fdiv_r_2exp(r.get_mpz_t(), v.get_mpz_t(), w);
  return r;
}

}  // namespace

DecisionOutcome run_decision(const DecisionParams& p, const EvaluatorInput& ev, const GarblerInput& gb, Rng& garbler_rng,
                             Rng& dealer_rng) {
  if (p.dual != gb.thr_scaled.has_value()) throw std::invalid_argument("decision: garbler threshold iff dual mode");
  const BooleanCircuit circuit = build_decision_circuit(p.w, p.dual, p.n_bits);
  check_fits(ev.thr_scaled, p.w, "evaluator threshold");
  if (gb.thr_scaled) check_fits(*gb.thr_scaled, p.w, "garbler threshold");

  const unsigned w = p.w;
  const unsigned t = p.t;
  DecisionOutcome out;
  out.w = w;
  out.t = t;
  out.and_gates = circuit.non_xor_count();

  // Offline: one random-OT record per evaluator input bit.
  OtPrecomputation pre = ot_precompute(circuit.evaluator_inputs.size(), t, dealer_rng);

  // Garbler.
  GarbleResult g = garble(circuit, t, garbler_rng);
  out.garble_hashes = g.hash_calls;
  std::vector<bool> g_bits = to_bits(low_bits(gb.mask, w), w);
  if (gb.thr_scaled) {
    const auto tb = to_bits(*gb.thr_scaled, w);
    g_bits.insert(g_bits.end(), tb.begin(), tb.end());
  }

  // Evaluator inputs, truncated to w bits.
  std::vector<bool> e_bits = to_bits(low_bits(ev.masked, w), w);
  {
    const auto tb = to_bits(ev.thr_scaled, w);
    e_bits.insert(e_bits.end(), tb.begin(), tb.end());
  }

  // Round 1, evaluator -> garbler: OT corrections.
  {
    BitPacker pk;
    for (bool b : e_bits) pk.put_bit(pre.receiver.correct(b));
    out.transcript.add(1, Party::evaluator, RecordKind::ot_correction, std::move(pk));
  }

  // Round 2, garbler -> evaluator: tables, own input labels, OT replies, decode bit.
  {
    BitUnpacker corr(out.transcript.records().back().payload);
    BitPacker tables, labels, transfers, decode;
    for (const GarbledTable& tab : g.garbled.tables)
      for (const Label& row : tab) tables.put_label(row, t);
    for (std::size_t i = 0; i < circuit.garbler_inputs.size(); ++i)
      labels.put_label(g.secrets.label(circuit.garbler_inputs[i], g_bits[i]), t);
    for (Wire wi : circuit.evaluator_inputs) {
      const auto reply = pre.sender.respond(corr.get_bit(), {g.secrets.label(wi, false), g.secrets.label(wi, true)});
      transfers.put_label(reply.first, t);
      transfers.put_label(reply.second, t);
    }
    decode.put_bit(g.garbled.decode[0]);
    out.transcript.add(2, Party::garbler, RecordKind::garbled_tables, std::move(tables));
    out.transcript.add(2, Party::garbler, RecordKind::garbler_labels, std::move(labels));
    out.transcript.add(2, Party::garbler, RecordKind::ot_transfer, std::move(transfers));
    out.transcript.add(2, Party::garbler, RecordKind::output_decode, std::move(decode));
  }

  // Evaluator reads round 2 back from the wire.
  const auto& recs = out.transcript.records();
  const std::size_t base = recs.size() - 4;
  GarbledCircuit received;
  received.t = t;
  {
    BitUnpacker u(recs[base].payload);
    received.tables.resize(circuit.non_xor_count());
    for (auto& tab : received.tables)
      for (auto& row : tab) row = u.get_label(t);
  }
  std::vector<Label> g_labels;
  {
    BitUnpacker u(recs[base + 1].payload);
    for (std::size_t i = 0; i < circuit.garbler_inputs.size(); ++i) g_labels.push_back(u.get_label(t));
  }
  std::vector<Label> e_labels;
  {
    BitUnpacker u(recs[base + 2].payload);
    for (std::size_t i = 0; i < circuit.evaluator_inputs.size(); ++i) {
      std::pair<Label, Label> reply;
      reply.first = u.get_label(t);
      reply.second = u.get_label(t);
      e_labels.push_back(pre.receiver.finish(reply));
    }
  }
  const bool decode0 = BitUnpacker(recs[base + 3].payload).get_bit();

  const EvalResult er = evaluate(circuit, received, g_labels, e_labels);
  out.eval_hashes = er.hash_calls;
  const std::vector<bool> mine = decode_outputs(std::span(er.outputs).first(1), std::vector<bool>{decode0});
  out.evaluator_below = mine[0];

  if (p.dual) {
    // Separate flow, evaluator -> garbler: the garbler's output label.
    BitPacker pk;
    pk.put_label(er.outputs[1], t);
    out.transcript.add(3, Party::evaluator, RecordKind::result_delivery, std::move(pk));
    const Label back = BitUnpacker(out.transcript.records().back().payload).get_label(t);
    out.garbler_below = decode_strict(g.secrets, circuit.outputs[1], back);
  }
  return out;
}

}  // namespace ppg::gc
