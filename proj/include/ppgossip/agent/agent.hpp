#pragma once

#include <map>
#include <optional>
#include <utility>

#include "ppgossip/agent/messages.hpp"
#include "ppgossip/blinding.hpp"
#include "ppgossip/core_arith.hpp"
#include "ppgossip/gc/decision.hpp"

namespace ppg::agent {

class MissingKeyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Data-size reduction: when an update produces denominator 2^ell1, masks are
/// drawn from Z_{2^(ell+ell1+t-k)}, sent as s*2^k, and both agents drop k bits.
struct ReductionParams {
  unsigned ell1 = 0;
  unsigned k = 0;

  bool enabled() const { return k > 0; }
  /// Throws std::invalid_argument unless 1 <= k <= ell1 < n_bits - ell - t - 1.
  void validate(const ModulusParams& mp) const;
};

/// Re-encryption keys rk_{a->b} held by one agent. Keys with a == b
/// (self-delegation, used when the partner's previous partner is the partner
/// itself) are tracked apart from the cross keys.
class RekeyStore {
 public:
  void put(std::size_t a, std::size_t b, pre::ReEncryptionKey rk);
  /// Throws MissingKeyError.
  const pre::ReEncryptionKey& get(std::size_t a, std::size_t b) const;
  bool has(std::size_t a, std::size_t b) const { return keys_.count({a, b}) != 0; }
  std::size_t cross_count() const;
  std::size_t self_count() const;
  const std::map<std::pair<std::size_t, std::size_t>, pre::ReEncryptionKey>& all() const { return keys_; }

 private:
  std::map<std::pair<std::size_t, std::size_t>, pre::ReEncryptionKey> keys_;
};

/// Cryptographic and arithmetic operations performed, for the cost census.
struct OpCensus {
  std::uint64_t reencryptions = 0;
  std::uint64_t l2_encryptions = 0;
  std::uint64_t l1_decryptions = 0;
  std::uint64_t mod_products = 0;  ///< scalings by a multiplier other than 1
  std::uint64_t mod_additions = 0;
};

/// The agent's state at rest, as an observer of its memory would see it.
struct AgentView {
  mpz_class masked;
  unsigned denom_exp = 0;
  std::optional<std::size_t> last_partner;
};

/// A mask this agent issued to a partner (the partner's value is hidden by it).
struct IssuedMask {
  mpz_class value;
  BlindingMode mode = BlindingMode::uniform;
  unsigned range_bits = 0;
};

class Agent {
 public:
  Agent(std::size_t id, pre::KeyPair keys, const pre::EnvelopeCodec& codec, ModulusParams mp, ReductionParams red,
        mpz_class input);

  std::size_t id() const { return id_; }
  const pre::PublicKey& public_key() const { return keys_.pk; }
  RekeyStore& rekeys() { return rekeys_; }
  const RekeyStore& rekeys() const { return rekeys_; }

  /// Part 1: re-mask the own numerator with a fresh r and re-encrypt the held
  /// mask envelope for the partner.
  UpdateMsg1 part1(std::size_t partner, Rng& rng);
  /// Part 2: open the partner's mask, fuse, and re-mask with a fresh mask s
  /// for the partner. `statistical` selects the bounded-range mask required
  /// before the partner's decision.
  UpdateMsg2 part2(const UpdateMsg1& from_partner, Rng& rng, bool statistical = false);
  /// Part 3: remove the obfuscation, leaving n(tau) + s_partner.
  void part3(const UpdateMsg2& from_partner);

  bool busy() const { return pending_.has_value(); }
  AgentView view() const { return {masked_, denom_exp_, last_partner_}; }
  const mpz_class& masked() const { return masked_; }
  unsigned denom_exp() const { return denom_exp_; }
  std::optional<std::size_t> last_partner() const { return last_partner_; }
  /// Mask issued to `partner` in the latest update with it. Throws ProtocolError if none.
  const IssuedMask& issued_mask(std::size_t partner) const;
  const OpCensus& census() const { return census_; }
  const ModulusParams& modulus() const { return mp_; }

  /// Test hook: the next fused value sent in Part 2 is off by one.
  void inject_fault() { fault_ = true; }

 private:
  struct Pending {
    std::size_t partner;
    mpz_class r;
    mpz_class s_prev_partner;  ///< s_l, opened in Part 2
    unsigned mi = 0;           ///< own multiplier exponent
    unsigned mj = 0;           ///< partner multiplier exponent
    unsigned exp_after = 0;
    unsigned shift = 0;
    bool part2_done = false;
  };

  mpz_class mod_n(const mpz_class& v) const;

  std::size_t id_;
  pre::KeyPair keys_;
  const pre::EnvelopeCodec& codec_;
  ModulusParams mp_;
  ReductionParams red_;
  mpz_class n_;
  RekeyStore rekeys_;

  mpz_class masked_;  ///< n_i + s_k mod n
  unsigned denom_exp_ = 0;
  std::optional<pre::EnvelopeL2> held_;  ///< the current mask, under the last partner's key
  std::optional<std::size_t> last_partner_;
  std::map<std::size_t, IssuedMask> issued_;
  std::optional<Pending> pending_;
  OpCensus census_;
  bool fault_ = false;
};

/// Final decision between an evaluator and its last partner (the garbler).
/// Thresholds are quantized (fit in ell bits); the evaluator compares its
/// numerator with thr * 2^e. In dual mode the garbler must also have the
/// evaluator as its last partner.
gc::DecisionOutcome decide(const Agent& evaluator, const Agent& garbler, const mpz_class& thr_evaluator,
                           const std::optional<mpz_class>& thr_garbler, unsigned label_bits, Rng& garbler_rng,
                           Rng& dealer_rng);

}  // namespace ppg::agent
