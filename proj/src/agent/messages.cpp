#include "ppgossip/agent/messages.hpp"

#include <limits>

namespace ppg::agent {

namespace {

void check_numerator(const mpz_class& v, unsigned n_bits) {
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > n_bits && v != 0) throw DecodeError("numerator outside Z_n");
}

}  // namespace

Bytes MessageCodec::encode(const UpdateMsg1& m) const {
  ByteWriter w;
  w.put_fixed(m.numerator, num_bytes());
  w.put_u8(m.envelope ? 1 : 0);
  if (m.envelope) w.put_prefixed(env_.encode(*m.envelope));
  w.put_varint(m.denom_exp);
  return w.take();
}

Bytes MessageCodec::encode(const UpdateMsg2& m) const {
  ByteWriter w;
  w.put_fixed(m.numerator, num_bytes());
  w.put_bytes(env_.encode(m.envelope));
  return w.take();
}

UpdateMsg1 MessageCodec::decode_msg1(std::span<const std::uint8_t> in) const {
  ByteReader r(in);
  UpdateMsg1 m;
  m.numerator = r.get_fixed(num_bytes());
  check_numerator(m.numerator, n_bits_);
  const std::uint8_t flag = r.get_u8();
  if (flag > 1) throw DecodeError("msg1: bad envelope flag");
  if (flag == 1) m.envelope = env_.decode_l1(r.get_prefixed(), pre::L1Origin::reencrypted);
  const std::uint64_t e = r.get_varint();
  if (e > std::numeric_limits<unsigned>::max()) throw DecodeError("msg1: exponent out of range");
  m.denom_exp = static_cast<unsigned>(e);
  r.expect_done();
  return m;
}

UpdateMsg2 MessageCodec::decode_msg2(std::span<const std::uint8_t> in) const {
  ByteReader r(in);
  UpdateMsg2 m;
  m.numerator = r.get_fixed(num_bytes());
  check_numerator(m.numerator, n_bits_);
  m.envelope = env_.decode_l2(r.get_bytes(r.remaining()));
  return m;
}

}  // namespace ppg::agent
