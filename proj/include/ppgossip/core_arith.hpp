#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace ppg {

/// Blinding modulus n = 2^n_bits together with the input bit length ell and
/// the statistical security parameter t.
struct ModulusParams {
  unsigned n_bits = 384;
  unsigned ell = 16;
  unsigned t = 80;

  mpz_class n() const;
  /// Throws std::invalid_argument naming the violated constraint.
  void validate() const;
};

/// A consensus value numerator / 2^denom_exp with the numerator in Z_n.
struct RationalState {
  mpz_class numerator;
  unsigned denom_exp = 0;

  bool operator==(const RationalState&) const = default;
};

struct QuantizationConfig {
  double K = 1024.0;  ///< amplification factor, a power of two
  unsigned ell = 16;  ///< quantized values must fit in ell bits

  void validate() const;
};

/// floor(K * x). Negative inputs are rejected (callers offset signed
/// statistics by a public constant first).
std::uint64_t quantize(double x, const QuantizationConfig& cfg);

/// Exponent of lcm(2^a, 2^b).
constexpr unsigned lcm_pow2(unsigned a, unsigned b) { return a > b ? a : b; }

/// Plaintext averaging step on rational states over Z_n.
RationalState fuse_plain(const RationalState& a, const RationalState& b, const mpz_class& n);

/// numerator < thr * 2^denom_exp
bool decide_plain(const RationalState& s, const mpz_class& thr_scaled_base);

/// Exact value numerator / 2^denom_exp as a rational.
mpq_class rational_value(const mpz_class& numerator, unsigned denom_exp);

/// Plaintext randomized-gossip oracle. Each agent carries the Z_n state and an
/// unreduced shadow numerator so modular wraparound can be detected.
class GossipOracle {
 public:
  GossipOracle(const std::vector<mpz_class>& inputs, mpz_class n);

  std::size_t size() const { return reduced_.size(); }
  const RationalState& state(std::size_t i) const { return reduced_.at(i); }
  const mpz_class& shadow_numerator(std::size_t i) const { return shadow_.at(i); }
  mpq_class value(std::size_t i) const;

  /// Averages agents i and j.
  void fuse(std::size_t i, std::size_t j);
  /// Drops the k low bits of agent i's numerator and k from its exponent.
  void reduce(std::size_t i, unsigned k);

  /// Sum of agent values divided by N.
  mpq_class mean() const;
  /// True once any shadow numerator has reached n.
  bool wrapped() const { return wrapped_; }

 private:
  mpz_class n_;
  std::vector<RationalState> reduced_;
  std::vector<mpz_class> shadow_;
  bool wrapped_ = false;
};

}  // namespace ppg
