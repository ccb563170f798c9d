#include "ppgossip/gc/garble.hpp"

#include <algorithm>
#include <cassert>

#include "ppgossip/bytes.hpp"

namespace ppg::gc {

namespace {

void check_t(unsigned t) {
  if (t == 0 || t > kMaxLabelBits) throw std::invalid_argument("label length t must be in [1, 256]");
}

void truncate(Label& l, unsigned t) {
  std::size_t keep = t / 8;
  if (t % 8 != 0) l.bytes[keep++] &= static_cast<std::uint8_t>((1u << (t % 8)) - 1);
  std::fill(l.bytes.begin() + static_cast<std::ptrdiff_t>(keep), l.bytes.end(), std::uint8_t{0});
}

}  // namespace

void Label::set_bit(unsigned i, bool v) {
  const auto mask = static_cast<std::uint8_t>(1u << (i % 8));
  if (v) bytes[i / 8] |= mask;
  else bytes[i / 8] &= static_cast<std::uint8_t>(~mask);
}

Label Label::operator^(const Label& o) const {
  Label r = *this;
  r ^= o;
  return r;
}

Label& Label::operator^=(const Label& o) {
  for (std::size_t i = 0; i < bytes.size(); ++i) bytes[i] ^= o.bytes[i];
  return *this;
}

Label Label::random(unsigned t, Rng& rng) {
  check_t(t);
  Label l;
  rng.fill(std::span(l.bytes).first(bytes_for_bits(t)));
  truncate(l, t);
  return l;
}

Label gate_hash(const Label& a, const Label& b, std::uint32_t gate_id, unsigned t, HashCounter& counter) {
  const std::size_t lb = bytes_for_bits(t);
  std::array<std::uint8_t, 2 * kMaxLabelBits / 8 + 4> in{};
  std::copy_n(a.bytes.begin(), lb, in.begin());
  std::copy_n(b.bytes.begin(), lb, in.begin() + static_cast<std::ptrdiff_t>(lb));
  for (std::size_t i = 0; i < 4; ++i) in[2 * lb + i] = static_cast<std::uint8_t>(gate_id >> (8 * (3 - i)));
  const Digest d = sha256(std::span(in).first(2 * lb + 4));
  ++counter.calls;
  Label out;
  std::copy(d.begin(), d.end(), out.bytes.begin());
  truncate(out, t);
  return out;
}

GarbleResult garble(const BooleanCircuit& c, unsigned t, Rng& rng) {
  check_t(t);
  GarbleResult res;
  GarblerSecrets& s = res.secrets;
  s.delta = Label::random(t, rng);
  s.delta.set_bit(0, true);
  s.zero.assign(c.num_wires, Label{});
  for (Wire w : c.garbler_inputs) s.zero[w] = Label::random(t, rng);
  for (Wire w : c.evaluator_inputs) s.zero[w] = Label::random(t, rng);

  HashCounter hc;
  res.garbled.t = t;
  std::uint32_t and_id = 0;
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::xor_gate: s.zero[g.out] = s.zero[g.a] ^ s.zero[g.b]; break;
      case GateKind::not_gate: s.zero[g.out] = s.zero[g.a] ^ s.delta; break;
      case GateKind::and_gate: {
        // Row (ca, cb) is keyed by the labels whose colors are ca and cb.
        // The (0,0) row defines the output label, so only three rows are sent.
        const bool pa = s.zero[g.a].color();
        const bool pb = s.zero[g.b].color();
        std::array<Label, 4> key;
        for (int ca = 0; ca < 2; ++ca)
          for (int cb = 0; cb < 2; ++cb)
            key[2 * ca + cb] = gate_hash(s.label(g.a, ca != pa), s.label(g.b, cb != pb), and_id, t, hc);
        const bool v00 = (pa != 0) && (pb != 0);  // plaintext at colors (0,0)
        s.zero[g.out] = v00 ? key[0] ^ s.delta : key[0];
        GarbledTable table;
        for (int r = 1; r < 4; ++r) {
          const bool va = ((r >> 1) != 0) != pa;
          const bool vb = ((r & 1) != 0) != pb;
          table[r - 1] = key[r] ^ s.label(g.out, va && vb);
        }
        res.garbled.tables.push_back(table);
        ++and_id;
        break;
      }
    }
  }
  for (Wire w : c.outputs) res.garbled.decode.push_back(s.zero[w].color());
  res.hash_calls = hc.calls;
  assert(free_xor_invariant_holds(s));
  return res;
}

GarbleResult garble(const BooleanCircuit& c, unsigned t, std::uint64_t seed) {
  Rng rng(seed);
  return garble(c, t, rng);
}

EvalResult evaluate(const BooleanCircuit& c, const GarbledCircuit& g, std::span<const Label> garbler_labels,
                    std::span<const Label> evaluator_labels) {
  if (garbler_labels.size() != c.garbler_inputs.size() || evaluator_labels.size() != c.evaluator_inputs.size())
    throw std::invalid_argument("evaluate: expected one label per input wire");
  if (g.tables.size() != c.non_xor_count()) throw std::invalid_argument("evaluate: table count mismatch");
  std::vector<Label> v(c.num_wires);
  for (std::size_t i = 0; i < garbler_labels.size(); ++i) v[c.garbler_inputs[i]] = garbler_labels[i];
  for (std::size_t i = 0; i < evaluator_labels.size(); ++i) v[c.evaluator_inputs[i]] = evaluator_labels[i];

  HashCounter hc;
  std::uint32_t and_id = 0;
  // NOT flips the plaintext value but the evaluator cannot add Δ; it passes the
  // label through and the garbler's 0-label bookkeeping absorbs the flip.
  for (const Gate& gate : c.gates) {
    switch (gate.kind) {
      case GateKind::xor_gate: v[gate.out] = v[gate.a] ^ v[gate.b]; break;
      case GateKind::not_gate: v[gate.out] = v[gate.a]; break;
      case GateKind::and_gate: {
        const Label k = gate_hash(v[gate.a], v[gate.b], and_id, g.t, hc);
        const int r = 2 * v[gate.a].color() + v[gate.b].color();
        v[gate.out] = r == 0 ? k : k ^ g.tables[and_id][r - 1];
        ++and_id;
        break;
      }
    }
  }
  EvalResult res;
  for (Wire w : c.outputs) res.outputs.push_back(v[w]);
  res.hash_calls = hc.calls;
  return res;
}

std::vector<bool> decode_outputs(std::span<const Label> outputs, const std::vector<bool>& decode) {
  if (outputs.size() != decode.size()) throw LabelDecodeError("decode: output count mismatch");
  std::vector<bool> bits;
  for (std::size_t i = 0; i < outputs.size(); ++i) bits.push_back(outputs[i].color() != decode[i]);
  return bits;
}

bool decode_strict(const GarblerSecrets& s, Wire w, const Label& l) {
  if (l == s.label(w, false)) return false;
  if (l == s.label(w, true)) return true;
  throw LabelDecodeError("decode: label matches neither value of the output wire");
}

bool free_xor_invariant_holds(const GarblerSecrets& s) {
  if (!s.delta.color()) return false;
  for (std::size_t w = 0; w < s.zero.size(); ++w)
    if ((s.label(static_cast<Wire>(w), true) ^ s.label(static_cast<Wire>(w), false)) != s.delta) return false;
  return true;
}

}  // namespace ppg::gc
