#include <gtest/gtest.h>

#include "ppgossip/gc/decision.hpp"

using namespace ppg;
using namespace ppg::gc;

namespace {

mpz_class pow2(unsigned e) {
  mpz_class v = 1;
  return v << e;
}

std::vector<bool> concat(std::vector<bool> a, const std::vector<bool>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<Label> labels_for(const GarblerSecrets& s, const std::vector<Wire>& wires, const std::vector<bool>& bits) {
  std::vector<Label> out;
  for (std::size_t i = 0; i < wires.size(); ++i) out.push_back(s.label(wires[i], bits[i]));
  return out;
}

std::vector<bool> garbled_eval(const BooleanCircuit& c, const GarbleResult& g, const std::vector<bool>& gb,
                               const std::vector<bool>& eb, std::uint64_t* hashes = nullptr) {
  const auto gl = labels_for(g.secrets, c.garbler_inputs, gb);
  const auto el = labels_for(g.secrets, c.evaluator_inputs, eb);
  const EvalResult r = evaluate(c, g.garbled, gl, el);
  if (hashes) *hashes = r.hash_calls;
  return decode_outputs(r.outputs, g.garbled.decode);
}

// Integer oracle for the decision circuit.
std::vector<bool> decision_oracle(unsigned w, bool dual, const mpz_class& masked, const mpz_class& mask,
                                  const mpz_class& thr_e, const mpz_class& thr_g) {
  mpz_class r = masked - mask;
  mpz_fdiv_r_2exp(r.get_mpz_t(), r.get_mpz_t(), w);
  std::vector<bool> out{r < thr_e};
  if (dual) out.push_back(r < thr_g);
  return out;
}

std::vector<bool> bits_of(std::uint64_t v, unsigned n) {
  std::vector<bool> b(n);
  for (unsigned i = 0; i < n; ++i) b[i] = (v >> i) & 1;
  return b;
}

}  // namespace

TEST(Circuit, NonXorCounts) {
  EXPECT_EQ(build_decision_circuit(8, true, 384).non_xor_count(), 24u);
  EXPECT_EQ(build_decision_circuit(8, false, 384).non_xor_count(), 16u);
  for (unsigned w = 1; w <= 64; ++w) {
    EXPECT_EQ(build_decision_circuit(w, true, 384).non_xor_count(), 3u * w);
    EXPECT_EQ(build_decision_circuit(w, false, 384).non_xor_count(), 2u * w);
  }
}

TEST(Circuit, WidthBound) {
  EXPECT_THROW(build_decision_circuit(0, true, 384), WidthError);
  EXPECT_THROW(build_decision_circuit(384, true, 384), WidthError);
  EXPECT_NO_THROW(build_decision_circuit(383, true, 384));
}

TEST(Circuit, InputPartition) {
  const BooleanCircuit c = build_decision_circuit(5, true, 64);
  EXPECT_EQ(c.garbler_inputs.size(), 10u);
  EXPECT_EQ(c.evaluator_inputs.size(), 10u);
  EXPECT_EQ(c.outputs.size(), 2u);
  EXPECT_NO_THROW(c.validate());
  const BooleanCircuit s = build_decision_circuit(5, false, 64);
  EXPECT_EQ(s.garbler_inputs.size(), 5u);
  EXPECT_EQ(s.outputs.size(), 1u);
}

TEST(Circuit, PlaintextExample) {
  const BooleanCircuit c = build_decision_circuit(4, false, 64);
  // masked = 9, mask = 4, threshold 6: 5 < 6.
  EXPECT_TRUE(c.evaluate(to_bits(4, 4), concat(to_bits(9, 4), to_bits(6, 4)))[0]);
  EXPECT_FALSE(c.evaluate(to_bits(4, 4), concat(to_bits(9, 4), to_bits(5, 4)))[0]);
}

TEST(Circuit, TruncationRecoversValue) {
  // Every 6-bit value hidden by a mask far wider than 2^6 is recovered by the
  // mod-2^6 subtractor, so the comparison is exact.
  const unsigned w = 6;
  const BooleanCircuit c = build_decision_circuit(w, true, 384);
  Rng rng(3);
  for (unsigned v = 0; v < 64; ++v) {
    const mpz_class s = rng.uniform_bits(120) + pow2(w);
    const mpz_class masked = v + s;
    for (unsigned thr = 0; thr < 64; ++thr) {
      const auto out = c.evaluate(concat(to_bits(s, w), to_bits(thr, w)), concat(to_bits(masked, w), to_bits(thr, w)));
      ASSERT_EQ(out[0], v < thr);
      ASSERT_EQ(out[1], v < thr);
    }
  }
}

TEST(Circuit, SubtractorAgainstIntegers) {
  CircuitBuilder b;
  std::vector<Wire> x, y;
  for (int i = 0; i < 5; ++i) x.push_back(b.garbler_input());
  for (int i = 0; i < 5; ++i) y.push_back(b.evaluator_input());
  const SubtractResult r = build_subtractor(b, x, y);
  for (Wire w : r.diff) b.output(w);
  b.output(r.borrow_out);
  const BooleanCircuit c = b.build();
  EXPECT_EQ(c.non_xor_count(), 5u);
  for (unsigned u = 0; u < 32; ++u)
    for (unsigned v = 0; v < 32; ++v) {
      const auto out = c.evaluate(bits_of(u, 5), bits_of(v, 5));
      unsigned d = 0;
      for (int i = 0; i < 5; ++i) d |= static_cast<unsigned>(out[i]) << i;
      ASSERT_EQ(d, (u - v) & 31u);
      ASSERT_EQ(out[5], u < v);
    }
}

TEST(Circuit, BuilderRejectsLateInputs) {
  CircuitBuilder b;
  const Wire a = b.garbler_input(), c = b.evaluator_input();
  b.and_(a, c);
  EXPECT_THROW(b.garbler_input(), std::logic_error);
}

TEST(Circuit, BitConversions) {
  EXPECT_EQ(to_bits(6, 4), (std::vector<bool>{false, true, true, false}));
  EXPECT_EQ(to_bits(0x1f, 3), (std::vector<bool>{true, true, true}));
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const mpz_class v = rng.uniform_bits(70);
    EXPECT_EQ(from_bits(to_bits(v, 70)), v);
  }
}

TEST(Garble, HashCountsPerAndGate) {
  // Row-reduced garbling hashes all four input combinations of an AND gate
  // (one fixes the output label, three fill the table); evaluation hashes once.
  const BooleanCircuit c = build_decision_circuit(8, true, 384);
  const GarbleResult g = garble(c, 80, 1);
  EXPECT_EQ(g.hash_calls, 4u * 24u);
  std::uint64_t eval_hashes = 0;
  garbled_eval(c, g, std::vector<bool>(16, false), std::vector<bool>(16, false), &eval_hashes);
  EXPECT_EQ(eval_hashes, 24u);
  EXPECT_EQ(g.garbled.tables.size(), 24u);
}

TEST(Garble, DeterministicPerSeed) {
  const BooleanCircuit c = build_decision_circuit(8, true, 384);
  const GarbleResult a = garble(c, 128, 99), b = garble(c, 128, 99), d = garble(c, 128, 100);
  EXPECT_EQ(a.garbled.tables, b.garbled.tables);
  EXPECT_EQ(a.garbled.decode, b.garbled.decode);
  EXPECT_EQ(a.secrets.delta, b.secrets.delta);
  EXPECT_NE(a.garbled.tables, d.garbled.tables);
}

TEST(Garble, FreeXorInvariant) {
  const BooleanCircuit c = build_decision_circuit(10, true, 384);
  for (unsigned t : {1u, 7u, 80u, 128u, 256u}) {
    const GarbleResult g = garble(c, t, t);
    EXPECT_TRUE(free_xor_invariant_holds(g.secrets));
    EXPECT_TRUE(g.secrets.delta.color());
    for (unsigned i = t; i < kMaxLabelBits; ++i) ASSERT_FALSE(g.secrets.delta.bit(i));
  }
}

TEST(Garble, LabelLengthValidated) {
  const BooleanCircuit c = build_decision_circuit(2, false, 64);
  EXPECT_THROW(garble(c, 0, 1), std::invalid_argument);
  EXPECT_THROW(garble(c, 257, 1), std::invalid_argument);
}

TEST(Garble, AllZeroInputs) {
  const BooleanCircuit c = build_decision_circuit(8, true, 384);
  const GarbleResult g = garble(c, 80, 5);
  const std::vector<bool> z(16, false);
  EXPECT_EQ(garbled_eval(c, g, z, z), c.evaluate(z, z));
}

TEST(Garble, RandomInputsMatchPlaintext) {
  const unsigned w = 12;
  const BooleanCircuit c = build_decision_circuit(w, true, 384);
  Rng rng(6);
  for (int i = 0; i < 1000; ++i) {
    const GarbleResult g = garble(c, 80, rng);
    std::vector<bool> gb(2 * w), eb(2 * w);
    for (std::size_t k = 0; k < gb.size(); ++k) gb[k] = rng.next_bit();
    for (std::size_t k = 0; k < eb.size(); ++k) eb[k] = rng.next_bit();
    ASSERT_EQ(garbled_eval(c, g, gb, eb), c.evaluate(gb, eb));
  }
}

TEST(Garble, ExhaustiveSmallWidths) {
  // Against the integer oracle, every input combination.
  for (unsigned w = 1; w <= 3; ++w)
    for (bool dual : {false, true}) {
      const BooleanCircuit c = build_decision_circuit(w, dual, 64);
      const GarbleResult g = garble(c, 64, 1000 + w);
      const unsigned gbits = dual ? 2 * w : w;
      const std::uint64_t mask_w = (1u << w) - 1;
      for (std::uint64_t gv = 0; gv < (1ull << gbits); ++gv)
        for (std::uint64_t ev = 0; ev < (1ull << (2 * w)); ++ev) {
          const auto out = garbled_eval(c, g, bits_of(gv, gbits), bits_of(ev, 2 * w));
          const auto want = decision_oracle(w, dual, ev & mask_w, gv & mask_w, ev >> w, gv >> w);
          ASSERT_EQ(out, want) << "w=" << w << " dual=" << dual << " g=" << gv << " e=" << ev;
        }
    }
}

TEST(Garble, WrongLabelFailsStrictDecode) {
  const BooleanCircuit c = build_decision_circuit(4, true, 64);
  Rng rng(8);
  const GarbleResult g = garble(c, 80, rng);
  const Wire out = c.outputs[1];
  EXPECT_FALSE(decode_strict(g.secrets, out, g.secrets.label(out, false)));
  EXPECT_TRUE(decode_strict(g.secrets, out, g.secrets.label(out, true)));
  Label bogus = g.secrets.label(out, false);
  bogus.set_bit(5, !bogus.bit(5));
  EXPECT_THROW(decode_strict(g.secrets, out, bogus), LabelDecodeError);
  EXPECT_THROW(decode_outputs(std::vector<Label>(1), std::vector<bool>{}), LabelDecodeError);
}

TEST(Garble, EvaluateRejectsLabelCountMismatch) {
  const BooleanCircuit c = build_decision_circuit(4, false, 64);
  const GarbleResult g = garble(c, 80, 1);
  EXPECT_THROW(evaluate(c, g.garbled, std::vector<Label>(3), std::vector<Label>(8)), std::invalid_argument);
}

TEST(Ot, ChosenLabelDelivered) {
  Rng dealer(9), rng(10);
  const std::size_t count = 64;
  OtPrecomputation pre = ot_precompute(count, 128, dealer);
  std::vector<bool> choices;
  std::vector<std::pair<Label, Label>> pairs;
  for (std::size_t i = 0; i < count; ++i) {
    choices.push_back(rng.next_bit());
    pairs.emplace_back(Label::random(128, rng), Label::random(128, rng));
  }
  OtOnlineStats stats;
  const auto got = ot_online(pre, choices, pairs, 128, &stats);
  for (std::size_t i = 0; i < count; ++i) EXPECT_EQ(got[i], choices[i] ? pairs[i].second : pairs[i].first);
  EXPECT_EQ(stats.correction_bits, count);
  EXPECT_EQ(stats.transfer_bits, count * 2 * 128);
}

TEST(Ot, OnlineBitsForDualDecision) {
  // 2w evaluator bits, w = 8, t = 80.
  Rng dealer(11), rng(12);
  OtPrecomputation pre = ot_precompute(16, 80, dealer);
  std::vector<std::pair<Label, Label>> pairs(16, {Label::random(80, rng), Label::random(80, rng)});
  OtOnlineStats stats;
  ot_online(pre, std::vector<bool>(16, true), pairs, 80, &stats);
  EXPECT_EQ(stats.transfer_bits, 2u * 16u * 80u);
  EXPECT_EQ(stats.transfer_bits, 2560u);
}

TEST(Ot, PoolExhaustionAndReuse) {
  Rng dealer(13), rng(14);
  OtPrecomputation pre = ot_precompute(2, 80, dealer);
  std::vector<std::pair<Label, Label>> pairs(3, {Label::random(80, rng), Label::random(80, rng)});
  EXPECT_THROW(ot_online(pre, {true, false, true}, pairs, 80), OtError);

  OtPrecomputation pre2 = ot_precompute(2, 80, dealer);
  pre2.sender.take(0);
  EXPECT_THROW(pre2.sender.take(0), OtError);
  pre2.receiver.take(1);
  EXPECT_THROW(pre2.receiver.take(1), OtError);
  EXPECT_THROW(pre2.sender.take(5), OtError);
}

TEST(Ot, ReplyWithoutCorrectionRejected) {
  Rng dealer(15);
  OtPrecomputation pre = ot_precompute(1, 80, dealer);
  EXPECT_THROW(pre.receiver.finish({Label{}, Label{}}), OtError);
}

TEST(Accounting, FinalStepFormula) {
  EXPECT_EQ(account_final_step(8, 80), 9600u);
  EXPECT_EQ(account_final_step(1, 1), 15u);
}

TEST(Accounting, MeasuredTranscriptMatchesFormula) {
  Rng rng(16);
  for (int i = 0; i < 20; ++i) {
    const unsigned w = 1 + static_cast<unsigned>(rng.uniform(48));
    const unsigned t = 1 + static_cast<unsigned>(rng.uniform(256));
    const mpz_class mask = rng.uniform_bits(w + 80);
    const mpz_class v = rng.uniform_bits(w);
    Rng grng = rng.split("g", i), dealer = rng.split("d", i);
    const DecisionOutcome out = run_decision({w, t, 384, true}, {v + mask, rng.uniform_bits(w)},
                                             {mask, rng.uniform_bits(w)}, grng, dealer);
    EXPECT_EQ(out.modelled_bits(), account_final_step(w, t)) << "w=" << w << " t=" << t;
    EXPECT_EQ(out.transcript.bits(RecordKind::ot_transfer), 4ull * w * t);
    EXPECT_EQ(out.transcript.bits(RecordKind::garbler_labels), 2ull * w * t);
    EXPECT_EQ(out.transcript.bits(RecordKind::garbled_tables), 9ull * w * t);
    EXPECT_EQ(out.overhead_bits(), 2ull * w + 1 + t);
    EXPECT_EQ(out.gc_rounds(), 2u);
    EXPECT_EQ(out.and_gates, 3u * w);
    EXPECT_EQ(out.eval_hashes, 3u * w);
    EXPECT_EQ(out.garble_hashes, 12u * w);
  }
}

TEST(Accounting, SingleModeBits) {
  Rng rng(17), grng(18), dealer(19);
  const DecisionOutcome out = run_decision({10, 80, 384, false}, {700, 100}, {300, std::nullopt}, grng, dealer);
  EXPECT_EQ(out.modelled_bits(), 11u * 10u * 80u);
  EXPECT_EQ(out.and_gates, 20u);
  EXPECT_FALSE(out.garbler_below.has_value());
  EXPECT_EQ(out.transcript.bits(RecordKind::result_delivery), 0u);
}

TEST(Decision, RandomInstancesMatchPlaintext) {
  Rng rng(20);
  for (int i = 0; i < 300; ++i) {
    const unsigned e = static_cast<unsigned>(rng.uniform(20));
    const unsigned w = 16 + e;
    const mpz_class value = rng.uniform_bits(w);
    const mpz_class mask = rng.uniform_bits(w + 80);
    const mpz_class te = rng.uniform_bits(16) << e, tg = rng.uniform_bits(16) << e;
    Rng grng = rng.split("g", i), dealer = rng.split("d", i);
    const DecisionOutcome out = run_decision({w, 128, 384, true}, {value + mask, te}, {mask, tg}, grng, dealer);
    ASSERT_EQ(out.evaluator_below, value < te);
    ASSERT_EQ(*out.garbler_below, value < tg);
  }
}

TEST(Decision, BoundaryIsStrict) {
  Rng grng(21), dealer(22);
  const DecisionOutcome out = run_decision({8, 80, 64, true}, {40 + 1000, 40}, {1000, 41}, grng, dealer);
  EXPECT_FALSE(out.evaluator_below);
  EXPECT_TRUE(*out.garbler_below);
}

TEST(Decision, InputValidation) {
  Rng grng(23), dealer(24);
  EXPECT_THROW(run_decision({8, 80, 64, true}, {1, 1}, {1, std::nullopt}, grng, dealer), std::invalid_argument);
  EXPECT_THROW(run_decision({8, 80, 64, false}, {1, 256}, {1, std::nullopt}, grng, dealer), std::invalid_argument);
  EXPECT_THROW(run_decision({64, 80, 64, false}, {1, 1}, {1, std::nullopt}, grng, dealer), WidthError);
}

TEST(Transcript, RoundTripAndRounds) {
  Rng grng(25), dealer(26);
  const DecisionOutcome out = run_decision({9, 80, 64, true}, {123456, 300}, {120000, 200}, grng, dealer);
  const Bytes b = out.transcript.serialize();
  const Transcript back = Transcript::deserialize(b);
  ASSERT_EQ(back.records().size(), out.transcript.records().size());
  for (std::size_t i = 0; i < back.records().size(); ++i) {
    const auto &x = back.records()[i], &y = out.transcript.records()[i];
    EXPECT_EQ(x.round, y.round);
    EXPECT_EQ(x.from, y.from);
    EXPECT_EQ(x.kind, y.kind);
    EXPECT_EQ(x.bits, y.bits);
    EXPECT_EQ(x.payload, y.payload);
    EXPECT_EQ(x.payload.size(), (x.bits + 7) / 8);
  }
  EXPECT_EQ(back.total_bits(), out.transcript.total_bits());
  EXPECT_EQ(back.rounds(), 3u);
  EXPECT_EQ(back.rounds({RecordKind::result_delivery}), 1u);
  Bytes cut = b;
  cut.resize(cut.size() - 1);
  EXPECT_THROW(Transcript::deserialize(cut), DecodeError);
}

TEST(Transcript, BitPackingIsDense) {
  BitPacker p;
  Rng rng(27);
  const Label a = Label::random(13, rng), b = Label::random(13, rng);
  p.put_bit(true);
  p.put_label(a, 13);
  p.put_label(b, 13);
  EXPECT_EQ(p.bits(), 27u);
  const Bytes bytes = p.take();
  EXPECT_EQ(bytes.size(), 4u);
  BitUnpacker u(bytes);
  EXPECT_TRUE(u.get_bit());
  EXPECT_EQ(u.get_label(13), a);
  EXPECT_EQ(u.get_label(13), b);
}
