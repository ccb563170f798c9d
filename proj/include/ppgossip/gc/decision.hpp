#pragma once

#include <optional>

#include <gmpxx.h>

#include "ppgossip/gc/circuit.hpp"
#include "ppgossip/gc/ot.hpp"
#include "ppgossip/gc/transcript.hpp"

namespace ppg::gc {

struct DecisionParams {
  unsigned w = 0;       ///< ell + denominator exponent
  unsigned t = 128;     ///< label length
  unsigned n_bits = 0;  ///< blinding modulus width; w must stay below it
  bool dual = false;    ///< garbler also learns its own comparison
};

/// Evaluator (the deciding agent): its masked numerator and thr * 2^e.
struct EvaluatorInput {
  mpz_class masked;
  mpz_class thr_scaled;
};

/// Garbler (the evaluator's last partner): the mask it issued and, in dual
/// mode, its own scaled threshold.
struct GarblerInput {
  mpz_class mask;
  std::optional<mpz_class> thr_scaled;
};

struct DecisionOutcome {
  bool evaluator_below = false;               ///< n_i < thr_i * 2^e
  std::optional<bool> garbler_below;          ///< dual mode only
  Transcript transcript;
  std::uint64_t garble_hashes = 0;
  std::uint64_t eval_hashes = 0;
  std::size_t and_gates = 0;
  unsigned w = 0;
  unsigned t = 0;

  /// OT transfers + garbler input labels + garbled tables.
  std::size_t modelled_bits() const;
  /// OT corrections, output decode bits and result delivery.
  std::size_t overhead_bits() const;
  /// Rounds carrying circuit material and OT traffic.
  unsigned gc_rounds() const;
};

/// Two-party decision: the garbler garbles the subtract-then-compare circuit,
/// the evaluator obtains its input labels through precomputed OT, evaluates,
/// and in dual mode returns the garbler's output label. All evaluator-side
/// values are read back from the transcript payloads.
DecisionOutcome run_decision(const DecisionParams& p, const EvaluatorInput& ev, const GarblerInput& gb, Rng& garbler_rng,
                             Rng& dealer_rng);

/// Bits of the dual final step as modelled: OT 4wt + garbler labels 2wt + tables 9wt.
constexpr std::size_t account_final_step(unsigned w, unsigned t) {
  return 4ull * w * t + 2ull * w * t + 9ull * w * t;
}

}  // namespace ppg::gc
