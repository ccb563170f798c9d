#include "ppgossip/rng.hpp"

#include <stdexcept>
#include <vector>

#include <memory>

#include <openssl/evp.h>

#include "ppgossip/bytes.hpp"

namespace ppg {

Digest sha256(std::span<const std::uint8_t> data) {
  // The one-shot helper re-fetches the algorithm on every call; keep the
  // digest and a per-thread context instead.
  static const std::unique_ptr<EVP_MD, decltype(&EVP_MD_free)> md(EVP_MD_fetch(nullptr, "SHA256", nullptr),
                                                                   &EVP_MD_free);
  thread_local const std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  Digest d;
  unsigned len = 0;
  if (!md || !ctx || EVP_DigestInit_ex(ctx.get(), md.get(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx.get(), d.data(), &len) != 1)
    throw std::runtime_error("sha256: OpenSSL digest failure");
  return d;
}

namespace {

void append_u64(Bytes& b, std::uint64_t v) {
  for (int i = 7; i >= 0; --i) b.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

}  // namespace

Rng::Rng(std::uint64_t seed) {
  Bytes b{'p', 'p', 'g', '-', 's', 'e', 'e', 'd'};
  append_u64(b, seed);
  key_ = sha256(b);
}

Rng Rng::split(std::string_view label, std::uint64_t index) const {
  Bytes b(key_.begin(), key_.end());
  b.push_back('/');
  b.insert(b.end(), label.begin(), label.end());
  b.push_back('/');
  append_u64(b, index);
  return Rng(sha256(b));
}

void Rng::refill() {
  Bytes b(key_.begin(), key_.end());
  append_u64(b, counter_++);
  block_ = sha256(b);
  used_ = 0;
}

void Rng::fill(std::span<std::uint8_t> out) {
  for (auto& byte : out) {
    if (used_ == block_.size()) refill();
    byte = block_[used_++];
  }
}

std::uint64_t Rng::next_u64() {
  std::array<std::uint8_t, 8> b{};
  fill(b);
  std::uint64_t v = 0;
  for (auto c : b) v = (v << 8) | c;
  return v;
}

bool Rng::next_bit() { return (next_u64() & 1) != 0; }

std::uint64_t Rng::uniform(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform: zero bound");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    const std::uint64_t v = next_u64();
    if (v < limit) return v % bound;
  }
}

mpz_class Rng::uniform_bits(std::size_t bits) {
  if (bits == 0) return 0;
  std::vector<std::uint8_t> b(bytes_for_bits(bits));
  fill(b);
  const std::size_t excess = b.size() * 8 - bits;
  b[0] &= static_cast<std::uint8_t>(0xff >> excess);
  return decode_be(b);
}

mpz_class Rng::uniform_below(const mpz_class& bound) {
  if (bound <= 0) throw std::invalid_argument("uniform_below: bound must be positive");
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  for (;;) {
    mpz_class v = uniform_bits(bits);
    if (v < bound) return v;
  }
}

double Rng::uniform_real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

}  // namespace ppg
