#include "ppgossip/pre/scheme.hpp"

namespace ppg::pre {

PreScheme::PreScheme(std::shared_ptr<const PairingGroup> group) : group_(std::move(group)) {
  if (!group_) throw std::invalid_argument("PreScheme: null group");
}

KeyPair PreScheme::keygen(Rng& rng) const {
  const auto& grp = *group_;
  SecretKey sk{grp.random_exponent(rng), grp.random_exponent(rng)};
  PublicKey pk{grp.gt_pow(grp.gt_generator(), sk.a1), grp.g1_mul(grp.generator(), sk.a2)};
  return {std::move(pk), std::move(sk)};
}

ReEncryptionKey PreScheme::reenc_keygen(const SecretKey& sk_a, const PublicKey& pk_b) const {
  return {group_->g1_mul(pk_b.g_a2, sk_a.a1)};
}

CiphertextL2 PreScheme::encrypt_l2(const G2Elem& m, const PublicKey& pk, Rng& rng) const {
  const auto& grp = *group_;
  const mpz_class k = grp.random_exponent(rng);
  return {grp.g1_mul(grp.generator(), k), grp.gt_mul(m, grp.gt_pow(pk.z_a1, k))};
}

CiphertextL1 PreScheme::encrypt_l1(const G2Elem& m, const PublicKey& pk, Rng& rng) const {
  const auto& grp = *group_;
  const mpz_class k = grp.random_exponent(rng);
  return {grp.gt_pow(pk.z_a1, k), grp.gt_mul(m, grp.gt_pow(grp.gt_generator(), k)), L1Origin::first_level};
}

CiphertextL1 PreScheme::reencrypt(const CiphertextL2& c, const ReEncryptionKey& rk) const {
  return {group_->pair(c.alpha, rk.value), c.beta, L1Origin::reencrypted};
}

mpz_class PreScheme::inverse_mod_q(const mpz_class& a) const {
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), group_->order().get_mpz_t()) == 0)
    throw std::domain_error("secret exponent not invertible mod q");
  return inv;
}

G2Elem PreScheme::decrypt_l1(const CiphertextL1& c, const SecretKey& sk) const {
  const mpz_class& a = c.origin == L1Origin::first_level ? sk.a1 : sk.a2;
  const G2Elem z_k = group_->gt_pow(c.alpha, inverse_mod_q(a));
  return group_->gt_div(c.beta, z_k);
}

G2Elem PreScheme::decrypt_l2(const CiphertextL2& c, const SecretKey& sk) const {
  const G2Elem mask = group_->gt_pow(group_->pair(c.alpha, group_->generator()), sk.a1);
  return group_->gt_div(c.beta, mask);
}

G2Elem PreScheme::random_message(Rng& rng) const {
  return group_->gt_pow(group_->gt_generator(), group_->random_exponent(rng));
}

Bytes PreScheme::encode(const CiphertextL2& c) const {
  ByteWriter w;
  w.put_prefixed(group_->encode_g1(c.alpha));
  w.put_prefixed(group_->encode_gt(c.beta));
  return w.take();
}

Bytes PreScheme::encode(const CiphertextL1& c) const {
  ByteWriter w;
  w.put_prefixed(group_->encode_gt(c.alpha));
  w.put_prefixed(group_->encode_gt(c.beta));
  return w.take();
}

CiphertextL2 PreScheme::decode_l2(std::span<const std::uint8_t> in) const {
  ByteReader r(in);
  CiphertextL2 c{group_->decode_g1(r.get_prefixed()), group_->decode_gt(r.get_prefixed())};
  r.expect_done();
  return c;
}

CiphertextL1 PreScheme::decode_l1(std::span<const std::uint8_t> in, L1Origin origin) const {
  ByteReader r(in);
  CiphertextL1 c{group_->decode_gt(r.get_prefixed()), group_->decode_gt(r.get_prefixed()), origin};
  r.expect_done();
  return c;
}

std::size_t PreScheme::encoded_l2_bytes() const {
  const G1Point& g = group_->generator();
  return 4 + group_->encode_g1(g).size() + group_->encode_gt(group_->gt_generator()).size();
}

std::size_t PreScheme::encoded_l1_bytes() const { return 4 + 2 * group_->encode_gt(group_->gt_generator()).size(); }

}  // namespace ppg::pre
