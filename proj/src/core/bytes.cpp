#include "ppgossip/bytes.hpp"

#include <limits>

namespace ppg {

Bytes encode_be(const mpz_class& v, std::size_t width_bytes) {
  if (v < 0) throw std::out_of_range("encode_be: negative value");
  const std::size_t bits = v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
  if (bits > width_bytes * 8) throw std::out_of_range("encode_be: value wider than field");
  Bytes out(width_bytes, 0);
  if (v == 0) return out;
  std::size_t count = 0;
  std::vector<std::uint8_t> tmp(bytes_for_bits(bits));
  mpz_export(tmp.data(), &count, 1, 1, 1, 0, v.get_mpz_t());
  std::copy(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(count),
            out.end() - static_cast<std::ptrdiff_t>(count));
  return out;
}

mpz_class decode_be(std::span<const std::uint8_t> in) {
  mpz_class v;
  if (in.empty()) return v;
  mpz_import(v.get_mpz_t(), in.size(), 1, 1, 1, 0, in.data());
  return v;
}

Bytes encode_be_minimal(const mpz_class& v) {
  if (v == 0) return {};
  return encode_be(v, bytes_for_bits(mpz_sizeinbase(v.get_mpz_t(), 2)));
}

void ByteWriter::put_u16(std::uint16_t v) {
  buf_.push_back(static_cast<std::uint8_t>(v >> 8));
  buf_.push_back(static_cast<std::uint8_t>(v & 0xff));
}

void ByteWriter::put_varint(std::uint64_t v) {
  while (v >= 0x80) {
    buf_.push_back(static_cast<std::uint8_t>(v | 0x80));
    v >>= 7;
  }
  buf_.push_back(static_cast<std::uint8_t>(v));
}

void ByteWriter::put_bytes(std::span<const std::uint8_t> b) { buf_.insert(buf_.end(), b.begin(), b.end()); }

void ByteWriter::put_prefixed(std::span<const std::uint8_t> b) {
  if (b.size() > std::numeric_limits<std::uint16_t>::max()) throw std::length_error("put_prefixed: too long");
  put_u16(static_cast<std::uint16_t>(b.size()));
  put_bytes(b);
}

void ByteWriter::put_fixed(const mpz_class& v, std::size_t width_bytes) { put_bytes(encode_be(v, width_bytes)); }

std::uint8_t ByteReader::get_u8() {
  if (pos_ >= in_.size()) throw DecodeError("unexpected end of input");
  return in_[pos_++];
}

std::uint16_t ByteReader::get_u16() {
  const std::uint16_t hi = get_u8();
  return static_cast<std::uint16_t>((hi << 8) | get_u8());
}

std::uint64_t ByteReader::get_varint() {
  std::uint64_t v = 0;
  for (int shift = 0; shift < 64; shift += 7) {
    const std::uint8_t b = get_u8();
    v |= static_cast<std::uint64_t>(b & 0x7f) << shift;
    if ((b & 0x80) == 0) return v;
  }
  throw DecodeError("varint too long");
}

std::span<const std::uint8_t> ByteReader::get_bytes(std::size_t n) {
  if (n > remaining()) throw DecodeError("unexpected end of input");
  auto s = in_.subspan(pos_, n);
  pos_ += n;
  return s;
}

std::span<const std::uint8_t> ByteReader::get_prefixed() { return get_bytes(get_u16()); }

mpz_class ByteReader::get_fixed(std::size_t width_bytes) { return decode_be(get_bytes(width_bytes)); }

void ByteReader::expect_done() const {
  if (!done()) throw DecodeError("trailing bytes after message");
}

std::string to_hex(std::span<const std::uint8_t> b) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s;
  s.reserve(b.size() * 2);
  for (auto c : b) {
    s.push_back(digits[c >> 4]);
    s.push_back(digits[c & 0xf]);
  }
  return s;
}

}  // namespace ppg
