#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ppg {

using Bytes = std::vector<std::uint8_t>;

/// Thrown when a byte stream does not decode.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Number of bytes needed for a value of `bits` bits.
constexpr std::size_t bytes_for_bits(std::size_t bits) { return (bits + 7) / 8; }

/// Fixed-width big-endian encoding. Throws std::out_of_range if `v` does not fit.
Bytes encode_be(const mpz_class& v, std::size_t width_bytes);
mpz_class decode_be(std::span<const std::uint8_t> in);

/// Big-endian encoding without leading zeros (zero encodes as an empty string).
Bytes encode_be_minimal(const mpz_class& v);

class ByteWriter {
 public:
  void put_u8(std::uint8_t b) { buf_.push_back(b); }
  void put_u16(std::uint16_t v);
  void put_varint(std::uint64_t v);
  void put_bytes(std::span<const std::uint8_t> b);
  /// u16 length prefix followed by the bytes.
  void put_prefixed(std::span<const std::uint8_t> b);
  void put_fixed(const mpz_class& v, std::size_t width_bytes);

  const Bytes& bytes() const { return buf_; }
  Bytes take() { return std::move(buf_); }

 private:
  Bytes buf_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint8_t get_u8();
  std::uint16_t get_u16();
  std::uint64_t get_varint();
  std::span<const std::uint8_t> get_bytes(std::size_t n);
  std::span<const std::uint8_t> get_prefixed();
  mpz_class get_fixed(std::size_t width_bytes);

  bool done() const { return pos_ == in_.size(); }
  std::size_t remaining() const { return in_.size() - pos_; }
  /// Throws DecodeError when trailing bytes remain.
  void expect_done() const;

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

std::string to_hex(std::span<const std::uint8_t> b);

}  // namespace ppg
