#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "ppgossip/gc/circuit.hpp"
#include "ppgossip/rng.hpp"

namespace ppg::gc {

constexpr unsigned kMaxLabelBits = 256;

/// A t-bit wire label (1 <= t <= 256). Bit 0 is the point-and-permute color;
/// bits at positions >= t are always zero.
struct Label {
  std::array<std::uint8_t, kMaxLabelBits / 8> bytes{};

  bool color() const { return (bytes[0] & 1) != 0; }
  bool bit(unsigned i) const { return ((bytes[i / 8] >> (i % 8)) & 1) != 0; }
  void set_bit(unsigned i, bool v);

  Label operator^(const Label& o) const;
  Label& operator^=(const Label& o);
  bool operator==(const Label&) const = default;

  static Label random(unsigned t, Rng& rng);
};

/// Counts invocations of the gate hash.
struct HashCounter {
  std::uint64_t calls = 0;
};

/// H(a || b || gate_id) truncated to t bits.
Label gate_hash(const Label& a, const Label& b, std::uint32_t gate_id, unsigned t, HashCounter& counter);

/// Three ciphertext rows per AND gate, indexed by (color_a, color_b) - 1.
using GarbledTable = std::array<Label, 3>;

/// Material the evaluator receives (apart from input labels).
struct GarbledCircuit {
  unsigned t = 0;
  std::vector<GarbledTable> tables;  ///< one per AND gate, in gate order
  std::vector<bool> decode;          ///< color of each output wire's 0-label
};

/// Garbler-side secrets: Δ and the 0-label of every wire.
struct GarblerSecrets {
  Label delta;
  std::vector<Label> zero;

  Label label(Wire w, bool v) const { return v ? zero.at(w) ^ delta : zero.at(w); }
};

struct GarbleResult {
  GarbledCircuit garbled;
  GarblerSecrets secrets;
  std::uint64_t hash_calls = 0;
};

/// Free-XOR, point-and-permute, 3-row reduction. Deterministic in `rng`.
GarbleResult garble(const BooleanCircuit& c, unsigned t, Rng& rng);
GarbleResult garble(const BooleanCircuit& c, unsigned t, std::uint64_t seed);

struct EvalResult {
  std::vector<Label> outputs;
  std::uint64_t hash_calls = 0;
};

/// Evaluates with one label per input wire (garbler inputs, then evaluator
/// inputs, each in circuit order). Throws std::invalid_argument on a count mismatch.
EvalResult evaluate(const BooleanCircuit& c, const GarbledCircuit& g, std::span<const Label> garbler_labels,
                    std::span<const Label> evaluator_labels);

class LabelDecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Output bits from colors and the decode map.
std::vector<bool> decode_outputs(std::span<const Label> outputs, const std::vector<bool>& decode);

/// Garbler-side decoding of a returned output label: checks the label is one
/// of the two valid labels for that wire and throws LabelDecodeError otherwise.
bool decode_strict(const GarblerSecrets& s, Wire w, const Label& l);

/// Debug check: label1 ^ label0 == Δ and Δ has color 1.
bool free_xor_invariant_holds(const GarblerSecrets& s);

}  // namespace ppg::gc
