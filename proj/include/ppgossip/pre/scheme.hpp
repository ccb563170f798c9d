#pragma once

#include <memory>

#include "ppgossip/pre/group.hpp"

namespace ppg::pre {

/// pk = (Z^a1, g^a2)
struct PublicKey {
  G2Elem z_a1;
  G1Point g_a2;
};

/// sk = (a1, a2), both in Z_q^*
struct SecretKey {
  mpz_class a1;
  mpz_class a2;
};

struct KeyPair {
  PublicKey pk;
  SecretKey sk;
};

/// rk_{A->B} = g^(a1 * b2)
struct ReEncryptionKey {
  G1Point value;

  bool operator==(const ReEncryptionKey&) const = default;
};

/// Second-level ciphertext (g^k, m Z^(a1 k)); can be re-encrypted once.
struct CiphertextL2 {
  G1Point alpha;
  G2Elem beta;
};

/// How a first-level ciphertext came to be; selects a1 or a2 at decryption.
enum class L1Origin { first_level, reencrypted };

/// First-level ciphertext (Z^(a k), m Z^k). Cannot be re-encrypted.
struct CiphertextL1 {
  G2Elem alpha;
  G2Elem beta;
  L1Origin origin = L1Origin::first_level;
};

/// Unidirectional single-hop proxy re-encryption over a bilinear group.
class PreScheme {
 public:
  explicit PreScheme(std::shared_ptr<const PairingGroup> group);

  const PairingGroup& group() const { return *group_; }
  std::shared_ptr<const PairingGroup> group_ptr() const { return group_; }

  KeyPair keygen(Rng& rng) const;
  /// Computed by A from its own secret and B's public key.
  ReEncryptionKey reenc_keygen(const SecretKey& sk_a, const PublicKey& pk_b) const;

  CiphertextL2 encrypt_l2(const G2Elem& m, const PublicKey& pk, Rng& rng) const;
  CiphertextL1 encrypt_l1(const G2Elem& m, const PublicKey& pk, Rng& rng) const;
  /// Level-2 ciphertext under A into a level-1 ciphertext under B.
  CiphertextL1 reencrypt(const CiphertextL2& c, const ReEncryptionKey& rk) const;

  G2Elem decrypt_l1(const CiphertextL1& c, const SecretKey& sk) const;
  G2Elem decrypt_l2(const CiphertextL2& c, const SecretKey& sk) const;

  /// Uniform element of G2 (Z^rho).
  G2Elem random_message(Rng& rng) const;

  /// Canonical form: u16-length-prefixed big-endian encodings of each element.
  Bytes encode(const CiphertextL2& c) const;
  Bytes encode(const CiphertextL1& c) const;
  CiphertextL2 decode_l2(std::span<const std::uint8_t> in) const;
  CiphertextL1 decode_l1(std::span<const std::uint8_t> in, L1Origin origin) const;
  /// Encoded ciphertext sizes in bytes, length prefixes included.
  std::size_t encoded_l2_bytes() const;
  std::size_t encoded_l1_bytes() const;

 private:
  mpz_class inverse_mod_q(const mpz_class& a) const;

  std::shared_ptr<const PairingGroup> group_;
};

}  // namespace ppg::pre
