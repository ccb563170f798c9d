#pragma once

#include <optional>

#include "ppgossip/pre/envelope.hpp"

namespace ppg::agent {

/// Round 1: re-masked numerator, the held mask envelope re-encrypted for the
/// partner (absent before the sender's first update), and the exponent.
struct UpdateMsg1 {
  mpz_class numerator;
  std::optional<pre::EnvelopeL1> envelope;
  unsigned denom_exp = 0;
};

/// Round 2: obfuscated fused numerator and a fresh level-2 envelope of the
/// sender's new mask under the sender's own key.
struct UpdateMsg2 {
  mpz_class numerator;
  pre::EnvelopeL2 envelope;
};

/// Wire format. Numerators are ceil(n_bits/8)-byte big-endian fields.
///   Msg1: numerator | u8 has_envelope | [u16-prefixed envelope] | varint denom_exp
///   Msg2: numerator | envelope
class MessageCodec {
 public:
  MessageCodec(const pre::EnvelopeCodec& env, unsigned n_bits) : env_(env), n_bits_(n_bits) {}

  Bytes encode(const UpdateMsg1& m) const;
  Bytes encode(const UpdateMsg2& m) const;
  UpdateMsg1 decode_msg1(std::span<const std::uint8_t> in) const;
  UpdateMsg2 decode_msg2(std::span<const std::uint8_t> in) const;

 private:
  std::size_t num_bytes() const { return bytes_for_bits(n_bits_); }

  const pre::EnvelopeCodec& env_;
  unsigned n_bits_;
};

}  // namespace ppg::agent
