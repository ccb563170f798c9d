#include "ppgossip/agent/agent.hpp"

#include <string>

namespace ppg::agent {

void ReductionParams::validate(const ModulusParams& mp) const {
  if (!enabled()) return;
  if (k > ell1) throw std::invalid_argument("reduction: k <= ell1 required");
  const long bound = static_cast<long>(mp.n_bits) - mp.ell - mp.t - 1;
  if (static_cast<long>(ell1) >= bound)
    throw std::invalid_argument("reduction: ell1 < floor(log2 n) - ell - t - 1 required (ell1=" + std::to_string(ell1) +
                                ", bound=" + std::to_string(bound) + ")");
}

void RekeyStore::put(std::size_t a, std::size_t b, pre::ReEncryptionKey rk) { keys_[{a, b}] = std::move(rk); }

const pre::ReEncryptionKey& RekeyStore::get(std::size_t a, std::size_t b) const {
  const auto it = keys_.find({a, b});
  if (it == keys_.end())
    throw MissingKeyError("missing re-encryption key rk_{" + std::to_string(a) + "->" + std::to_string(b) + "}");
  return it->second;
}

std::size_t RekeyStore::cross_count() const {
  std::size_t c = 0;
  for (const auto& [ab, rk] : keys_) c += ab.first != ab.second;
  return c;
}

std::size_t RekeyStore::self_count() const { return keys_.size() - cross_count(); }

Agent::Agent(std::size_t id, pre::KeyPair keys, const pre::EnvelopeCodec& codec, ModulusParams mp, ReductionParams red,
             mpz_class input)
    : id_(id), keys_(std::move(keys)), codec_(codec), mp_(mp), red_(red), n_(mp.n()), masked_(std::move(input)) {
  mp_.validate();
  red_.validate(mp_);
  if (masked_ < 0 || masked_ >= n_) throw std::out_of_range("agent: input outside Z_n");
}

mpz_class Agent::mod_n(const mpz_class& v) const {
  mpz_class r;
  mpz_fdiv_r_2exp(r.get_mpz_t(), v.get_mpz_t(), mp_.n_bits);
  return r;
}

const IssuedMask& Agent::issued_mask(std::size_t partner) const {
  const auto it = issued_.find(partner);
  if (it == issued_.end()) throw ProtocolError("agent " + std::to_string(id_) + " issued no mask to " + std::to_string(partner));
  return it->second;
}

UpdateMsg1 Agent::part1(std::size_t partner, Rng& rng) {
  if (busy()) throw ProtocolError("agent " + std::to_string(id_) + " is already engaged in an update");
  if (partner == id_) throw ProtocolError("agent cannot update with itself");
  Pending p;
  p.partner = partner;
  p.r = rng.uniform_below(n_);

  UpdateMsg1 m;
  m.numerator = mod_n(masked_ + p.r);
  ++census_.mod_additions;
  m.denom_exp = denom_exp_;
  if (held_) {
    m.envelope = codec_.reencrypt(*held_, rekeys_.get(*last_partner_, partner));
    ++census_.reencryptions;
  }
  pending_ = std::move(p);
  return m;
}

UpdateMsg2 Agent::part2(const UpdateMsg1& from_partner, Rng& rng, bool statistical) {
  if (!pending_ || pending_->part2_done) throw ProtocolError("part2 without a matching part1");
  Pending& p = *pending_;
  if (from_partner.denom_exp + mp_.ell >= mp_.n_bits)
    throw ProtocolError("partner denominator exponent exceeds the modulus width");

  mpz_class s_l = 0;
  if (from_partner.envelope) {
    s_l = codec_.unwrap(*from_partner.envelope, keys_.sk);
    ++census_.l1_decryptions;
  }
  const mpz_class njr = mod_n(from_partner.numerator - s_l);
  ++census_.mod_additions;

  const unsigned lcm = lcm_pow2(denom_exp_, from_partner.denom_exp);
  p.mi = lcm - denom_exp_;
  p.mj = lcm - from_partner.denom_exp;
  p.s_prev_partner = s_l;
  p.exp_after = lcm + 1;
  p.shift = (red_.enabled() && p.exp_after == red_.ell1) ? red_.k : 0;
  p.exp_after -= p.shift;

  IssuedMask s;
  if (p.shift > 0 || statistical) {
    s.mode = BlindingMode::statistical;
    s.range_bits = mp_.ell + p.exp_after + mp_.t;
    if (s.range_bits + p.shift + 1 >= mp_.n_bits)
      throw ProtocolError("statistical mask range " + std::to_string(s.range_bits) + " bits does not fit below n");
    s.value = rng.uniform_bits(s.range_bits);
  } else {
    s.value = rng.uniform_below(n_);
  }

  // (n_i + s_k) * lcm/d_i + (n_j + r_j) * lcm/d_j + s_i * 2^shift
  mpz_class out = (masked_ << p.mi) + (njr << p.mj) + (s.value << p.shift);
  census_.mod_products += (p.mi > 0) + (p.mj > 0);
  census_.mod_additions += 2;
  if (fault_) {
    out += 1;
    fault_ = false;
  }

  UpdateMsg2 m{mod_n(out), codec_.wrap(s.value, keys_.pk, rng)};
  ++census_.l2_encryptions;
  issued_[p.partner] = std::move(s);
  p.part2_done = true;
  return m;
}

void Agent::part3(const UpdateMsg2& from_partner) {
  if (!pending_ || !pending_->part2_done) throw ProtocolError("part3 before part2");
  const Pending& p = *pending_;
  // obf = s_l * lcm/d_j + r_i * lcm/d_i
  const mpz_class obf = (p.s_prev_partner << p.mj) + (p.r << p.mi);
  census_.mod_products += (p.mi > 0) + (p.mj > 0);
  mpz_class v = mod_n(from_partner.numerator - obf);
  census_.mod_additions += 2;
  if (p.shift > 0) v >>= p.shift;

  masked_ = std::move(v);
  denom_exp_ = p.exp_after;
  held_ = from_partner.envelope;
  last_partner_ = p.partner;
  pending_.reset();
}

gc::DecisionOutcome decide(const Agent& evaluator, const Agent& garbler, const mpz_class& thr_evaluator,
                           const std::optional<mpz_class>& thr_garbler, unsigned label_bits, Rng& garbler_rng,
                           Rng& dealer_rng) {
  if (evaluator.busy() || garbler.busy()) throw ProtocolError("decision during an update");
  if (evaluator.last_partner() != garbler.id())
    throw ProtocolError("decision partner must be the evaluator's last partner");
  const IssuedMask& mask = garbler.issued_mask(evaluator.id());
  if (mask.mode != BlindingMode::statistical)
    throw ProtocolError("decision requires the statistical pre-decision mask");
  const ModulusParams& mp = evaluator.modulus();
  const unsigned e = evaluator.denom_exp();
  for (const mpz_class* thr : {&thr_evaluator, thr_garbler ? &*thr_garbler : nullptr}) {
    if (thr != nullptr && (*thr < 0 || mpz_sizeinbase(thr->get_mpz_t(), 2) > mp.ell))
      throw std::invalid_argument("decision: threshold must fit in ell bits");
  }

  gc::DecisionParams params;
  params.w = mp.ell + e;
  params.t = label_bits;
  params.n_bits = mp.n_bits;
  params.dual = thr_garbler.has_value();
  if (params.dual && (garbler.last_partner() != evaluator.id() || garbler.denom_exp() != e))
    throw ProtocolError("dual decision requires mutual last partners");

  gc::EvaluatorInput ev{evaluator.masked(), mpz_class(thr_evaluator << e)};
  gc::GarblerInput gb{mask.value, std::nullopt};
  if (thr_garbler) gb.thr_scaled = mpz_class(*thr_garbler << e);
  return gc::run_decision(params, ev, gb, garbler_rng, dealer_rng);
}

}  // namespace ppg::agent
