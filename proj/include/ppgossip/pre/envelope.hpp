#pragma once

#include "ppgossip/pre/scheme.hpp"

namespace ppg::pre {

/// A Z_n scalar carried under PRE: the KEM part encrypts a random R in G2 and
/// the pad is s + H(R) mod n, with H = SHA-256 of R's canonical encoding
/// (extended with counter blocks when n is wider than 256 bits).
template <class Kem>
struct Envelope {
  Kem kem;
  mpz_class pad;
};

using EnvelopeL2 = Envelope<CiphertextL2>;
using EnvelopeL1 = Envelope<CiphertextL1>;

class DecryptionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scalar wrapping for a fixed blinding modulus n = 2^n_bits.
class EnvelopeCodec {
 public:
  EnvelopeCodec(const PreScheme& scheme, unsigned n_bits);

  EnvelopeL2 wrap(const mpz_class& s, const PublicKey& pk, Rng& rng) const;
  /// Re-encrypts the KEM part only; the pad is unchanged.
  EnvelopeL1 reencrypt(const EnvelopeL2& env, const ReEncryptionKey& rk) const;
  mpz_class unwrap(const EnvelopeL2& env, const SecretKey& sk) const;
  mpz_class unwrap(const EnvelopeL1& env, const SecretKey& sk) const;

  /// H(R) mod n.
  mpz_class pad_hash(const G2Elem& r) const;

  /// KEM bytes followed by the pad as a ceil(n_bits / 8)-byte big-endian field.
  Bytes encode(const EnvelopeL2& env) const;
  Bytes encode(const EnvelopeL1& env) const;
  EnvelopeL2 decode_l2(std::span<const std::uint8_t> in) const;
  EnvelopeL1 decode_l1(std::span<const std::uint8_t> in, L1Origin origin) const;

  std::size_t pad_bytes() const { return bytes_for_bits(n_bits_); }
  const PreScheme& scheme() const { return scheme_; }

 private:
  mpz_class mod_n(const mpz_class& v) const;
  void check_pad(const mpz_class& pad) const;

  const PreScheme& scheme_;
  unsigned n_bits_;
  mpz_class n_;
};

}  // namespace ppg::pre
