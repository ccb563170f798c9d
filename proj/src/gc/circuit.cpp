#include "ppgossip/gc/circuit.hpp"

#include <string>

namespace ppg::gc {

std::size_t BooleanCircuit::non_xor_count() const {
  std::size_t n = 0;
  for (const auto& g : gates) n += g.kind == GateKind::and_gate;
  return n;
}

void BooleanCircuit::validate() const {
  std::vector<bool> defined(num_wires, false);
  for (Wire w : garbler_inputs) defined.at(w) = true;
  for (Wire w : evaluator_inputs) defined.at(w) = true;
  for (const auto& g : gates) {
    if (!defined.at(g.a) || (g.kind != GateKind::not_gate && !defined.at(g.b)))
      throw std::logic_error("circuit: gate reads an undefined wire");
    if (defined.at(g.out)) throw std::logic_error("circuit: wire assigned twice");
    defined[g.out] = true;
  }
  for (Wire w : outputs)
    if (!defined.at(w)) throw std::logic_error("circuit: undefined output wire");
}

std::vector<bool> BooleanCircuit::evaluate(const std::vector<bool>& garbler_bits, const std::vector<bool>& evaluator_bits) const {
  if (garbler_bits.size() != garbler_inputs.size() || evaluator_bits.size() != evaluator_inputs.size())
    throw std::invalid_argument("circuit: input size mismatch");
  std::vector<bool> v(num_wires, false);
  for (std::size_t i = 0; i < garbler_inputs.size(); ++i) v[garbler_inputs[i]] = garbler_bits[i];
  for (std::size_t i = 0; i < evaluator_inputs.size(); ++i) v[evaluator_inputs[i]] = evaluator_bits[i];
  for (const auto& g : gates) {
    switch (g.kind) {
      case GateKind::xor_gate: v[g.out] = v[g.a] != v[g.b]; break;
      case GateKind::and_gate: v[g.out] = v[g.a] && v[g.b]; break;
      case GateKind::not_gate: v[g.out] = !v[g.a]; break;
    }
  }
  std::vector<bool> out;
  out.reserve(outputs.size());
  for (Wire w : outputs) out.push_back(v[w]);
  return out;
}

Wire CircuitBuilder::garbler_input() {
  if (gates_started_) throw std::logic_error("builder: inputs must precede gates");
  const Wire w = fresh();
  c_.garbler_inputs.push_back(w);
  return w;
}

Wire CircuitBuilder::evaluator_input() {
  if (gates_started_) throw std::logic_error("builder: inputs must precede gates");
  const Wire w = fresh();
  c_.evaluator_inputs.push_back(w);
  return w;
}

Wire CircuitBuilder::xor_(Wire a, Wire b) {
  gates_started_ = true;
  const Wire o = fresh();
  c_.gates.push_back({GateKind::xor_gate, a, b, o});
  return o;
}

Wire CircuitBuilder::and_(Wire a, Wire b) {
  gates_started_ = true;
  const Wire o = fresh();
  c_.gates.push_back({GateKind::and_gate, a, b, o});
  return o;
}

Wire CircuitBuilder::not_(Wire a) {
  gates_started_ = true;
  const Wire o = fresh();
  c_.gates.push_back({GateKind::not_gate, a, a, o});
  return o;
}

void CircuitBuilder::output(Wire w) { c_.outputs.push_back(w); }

BooleanCircuit CircuitBuilder::build() {
  c_.validate();
  return std::move(c_);
}

namespace {

// Borrow out of x - y - c: majority(!x, y, c) = ((!x ^ c) & (y ^ c)) ^ c.
// `c` is absent for the least significant bit (borrow-in 0).
Wire borrow(CircuitBuilder& b, Wire x, Wire y, const Wire* c) {
  const Wire nx = b.not_(x);
  if (c == nullptr) return b.and_(nx, y);
  return b.xor_(b.and_(b.xor_(nx, *c), b.xor_(y, *c)), *c);
}

}  // namespace

SubtractResult build_subtractor(CircuitBuilder& b, std::span<const Wire> x, std::span<const Wire> y) {
  if (x.size() != y.size() || x.empty()) throw std::invalid_argument("subtractor: operand widths differ");
  SubtractResult r;
  Wire carry = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Wire* c = i == 0 ? nullptr : &carry;
    const Wire d = b.xor_(x[i], y[i]);
    r.diff.push_back(c == nullptr ? d : b.xor_(d, *c));
    carry = borrow(b, x[i], y[i], c);
  }
  r.borrow_out = carry;
  return r;
}

Wire build_less_than(CircuitBuilder& b, std::span<const Wire> x, std::span<const Wire> y) {
  if (x.size() != y.size() || x.empty()) throw std::invalid_argument("comparator: operand widths differ");
  Wire carry = 0;
  for (std::size_t i = 0; i < x.size(); ++i) carry = borrow(b, x[i], y[i], i == 0 ? nullptr : &carry);
  return carry;
}

BooleanCircuit build_decision_circuit(unsigned w, bool dual, unsigned n_bits) {
  if (w == 0) throw WidthError("decision circuit: width must be positive");
  if (w >= n_bits)
    throw WidthError("decision circuit: width " + std::to_string(w) + " must be below log2 n = " + std::to_string(n_bits));
  CircuitBuilder b;
  std::vector<Wire> masked, thr_eval, mask, thr_garbler;
  for (unsigned i = 0; i < w; ++i) masked.push_back(b.evaluator_input());
  for (unsigned i = 0; i < w; ++i) thr_eval.push_back(b.evaluator_input());
  for (unsigned i = 0; i < w; ++i) mask.push_back(b.garbler_input());
  if (dual)
    for (unsigned i = 0; i < w; ++i) thr_garbler.push_back(b.garbler_input());

  const SubtractResult r = build_subtractor(b, masked, mask);
  b.output(build_less_than(b, r.diff, thr_eval));
  if (dual) b.output(build_less_than(b, r.diff, thr_garbler));
  return b.build();
}

std::vector<bool> to_bits(const mpz_class& v, unsigned w) {
  std::vector<bool> bits(w);
  for (unsigned i = 0; i < w; ++i) bits[i] = mpz_tstbit(v.get_mpz_t(), i) != 0;
  return bits;
}

mpz_class from_bits(const std::vector<bool>& bits) {
  mpz_class v = 0;
  for (std::size_t i = bits.size(); i-- > 0;) {
    v <<= 1;
    if (bits[i]) v += 1;
  }
  return v;
}

}  // namespace ppg::gc
