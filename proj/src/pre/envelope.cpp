#include "ppgossip/pre/envelope.hpp"

namespace ppg::pre {

EnvelopeCodec::EnvelopeCodec(const PreScheme& scheme, unsigned n_bits) : scheme_(scheme), n_bits_(n_bits), n_(1) {
  if (n_bits == 0) throw std::invalid_argument("envelope: n_bits must be positive");
  n_ <<= n_bits;
}

mpz_class EnvelopeCodec::mod_n(const mpz_class& v) const {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), v.get_mpz_t(), n_.get_mpz_t());
  return r;
}

void EnvelopeCodec::check_pad(const mpz_class& pad) const {
  if (pad < 0 || pad >= n_) throw DecodeError("envelope pad outside Z_n");
}

mpz_class EnvelopeCodec::pad_hash(const G2Elem& r) const {
  // Block 0 is SHA-256(enc(R)); moduli wider than 256 bits append
  // SHA-256(enc(R) || u32 counter) blocks.
  const Bytes enc = scheme_.group().encode_gt(r);
  Bytes stream;
  const Digest first = sha256(enc);
  stream.insert(stream.end(), first.begin(), first.end());
  for (std::uint32_t ctr = 1; stream.size() * 8 < n_bits_; ++ctr) {
    Bytes input = enc;
    for (int i = 3; i >= 0; --i) input.push_back(static_cast<std::uint8_t>(ctr >> (8 * i)));
    const Digest d = sha256(input);
    stream.insert(stream.end(), d.begin(), d.end());
  }
  return mod_n(decode_be(stream));
}

EnvelopeL2 EnvelopeCodec::wrap(const mpz_class& s, const PublicKey& pk, Rng& rng) const {
  if (s < 0 || s >= n_) throw std::out_of_range("wrap: scalar outside Z_n");
  const G2Elem r = scheme_.random_message(rng);
  return {scheme_.encrypt_l2(r, pk, rng), mod_n(s + pad_hash(r))};
}

EnvelopeL1 EnvelopeCodec::reencrypt(const EnvelopeL2& env, const ReEncryptionKey& rk) const {
  return {scheme_.reencrypt(env.kem, rk), env.pad};
}

mpz_class EnvelopeCodec::unwrap(const EnvelopeL2& env, const SecretKey& sk) const {
  check_pad(env.pad);
  return mod_n(env.pad - pad_hash(scheme_.decrypt_l2(env.kem, sk)));
}

mpz_class EnvelopeCodec::unwrap(const EnvelopeL1& env, const SecretKey& sk) const {
  check_pad(env.pad);
  return mod_n(env.pad - pad_hash(scheme_.decrypt_l1(env.kem, sk)));
}

Bytes EnvelopeCodec::encode(const EnvelopeL2& env) const {
  ByteWriter w;
  w.put_bytes(scheme_.encode(env.kem));
  w.put_fixed(env.pad, pad_bytes());
  return w.take();
}

Bytes EnvelopeCodec::encode(const EnvelopeL1& env) const {
  ByteWriter w;
  w.put_bytes(scheme_.encode(env.kem));
  w.put_fixed(env.pad, pad_bytes());
  return w.take();
}

EnvelopeL2 EnvelopeCodec::decode_l2(std::span<const std::uint8_t> in) const {
  if (in.size() < pad_bytes()) throw DecodeError("envelope too short");
  const std::size_t kem_len = in.size() - pad_bytes();
  EnvelopeL2 env{scheme_.decode_l2(in.first(kem_len)), decode_be(in.subspan(kem_len))};
  check_pad(env.pad);
  return env;
}

EnvelopeL1 EnvelopeCodec::decode_l1(std::span<const std::uint8_t> in, L1Origin origin) const {
  if (in.size() < pad_bytes()) throw DecodeError("envelope too short");
  const std::size_t kem_len = in.size() - pad_bytes();
  EnvelopeL1 env{scheme_.decode_l1(in.first(kem_len), origin), decode_be(in.subspan(kem_len))};
  check_pad(env.pad);
  return env;
}

}  // namespace ppg::pre
