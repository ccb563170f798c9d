#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include <gmpxx.h>

namespace ppg {

using Digest = std::array<std::uint8_t, 32>;

Digest sha256(std::span<const std::uint8_t> data);

/// Deterministic, splittable random generator: SHA-256 in counter mode over a
/// 32-byte key. Equal seeds replay bit-exactly. A handle is single-owner; use
/// split() to hand independent streams to other components.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  explicit Rng(const Digest& key) : key_(key) {}

  /// Child stream keyed by (this key, label, index). Does not advance this stream.
  Rng split(std::string_view label, std::uint64_t index = 0) const;

  void fill(std::span<std::uint8_t> out);
  std::uint64_t next_u64();
  bool next_bit();
  /// Uniform in [0, bound) by rejection sampling.
  std::uint64_t uniform(std::uint64_t bound);
  /// Uniform in [0, 2^bits).
  mpz_class uniform_bits(std::size_t bits);
  /// Uniform in [0, bound), bound > 0.
  mpz_class uniform_below(const mpz_class& bound);
  /// Uniform real in [0, 1).
  double uniform_real();

 private:
  void refill();

  Digest key_{};
  std::uint64_t counter_ = 0;
  Digest block_{};
  std::size_t used_ = block_.size();
};

}  // namespace ppg
