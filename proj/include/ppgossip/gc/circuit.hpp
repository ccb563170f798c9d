#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace ppg::gc {

using Wire = std::uint32_t;

enum class GateKind : std::uint8_t { xor_gate, and_gate, not_gate };

struct Gate {
  GateKind kind;
  Wire a;
  Wire b;  ///< unused for not_gate
  Wire out;
};

/// Boolean circuit in topological order. Input wires come first, partitioned
/// between the garbler and the evaluator.
struct BooleanCircuit {
  std::uint32_t num_wires = 0;
  std::vector<Wire> garbler_inputs;
  std::vector<Wire> evaluator_inputs;
  std::vector<Gate> gates;
  std::vector<Wire> outputs;

  std::size_t non_xor_count() const;
  /// Checks that every gate reads only wires defined before it.
  void validate() const;
  /// Plaintext evaluation.
  std::vector<bool> evaluate(const std::vector<bool>& garbler_bits, const std::vector<bool>& evaluator_bits) const;
};

class CircuitBuilder {
 public:
  Wire garbler_input();
  Wire evaluator_input();
  Wire xor_(Wire a, Wire b);
  Wire and_(Wire a, Wire b);
  Wire not_(Wire a);
  void output(Wire w);

  BooleanCircuit build();

 private:
  Wire fresh() { return c_.num_wires++; }
  BooleanCircuit c_;
  bool gates_started_ = false;
};

/// (x - y) mod 2^w over little-endian bit vectors using a ripple-borrow
/// chain with one AND per bit; the final borrow is also produced.
struct SubtractResult {
  std::vector<Wire> diff;
  Wire borrow_out;
};
SubtractResult build_subtractor(CircuitBuilder& b, std::span<const Wire> x, std::span<const Wire> y);

/// x < y (unsigned), w AND gates.
Wire build_less_than(CircuitBuilder& b, std::span<const Wire> x, std::span<const Wire> y);

class WidthError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Decision circuit over w-bit values:
///   r = (masked - mask) mod 2^w;  out0 = r < thr_eval;  out1 = r < thr_garbler (dual only)
/// Evaluator inputs: masked[w], thr_eval[w]. Garbler inputs: mask[w], thr_garbler[w] (dual).
/// Non-XOR gates: 2w single, 3w dual. Throws WidthError when w == 0 or w >= n_bits.
BooleanCircuit build_decision_circuit(unsigned w, bool dual, unsigned n_bits);

/// Low w bits of v, least significant first.
std::vector<bool> to_bits(const mpz_class& v, unsigned w);
mpz_class from_bits(const std::vector<bool>& bits);

}  // namespace ppg::gc
