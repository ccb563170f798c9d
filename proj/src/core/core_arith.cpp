#include "ppgossip/core_arith.hpp"

#include <cmath>
#include <string>

namespace ppg {

mpz_class ModulusParams::n() const {
  mpz_class v = 1;
  v <<= n_bits;
  return v;
}

void ModulusParams::validate() const {
  if (t < 1) throw std::invalid_argument("modulus: t >= 1 required");
  if (n_bits < ell) throw std::invalid_argument("modulus: n >= 2^ell required");
  if (n_bits <= ell + t + 1)
    throw std::invalid_argument("modulus: floor(log2 n) > ell + t + 1 required (n_bits=" + std::to_string(n_bits) +
                                ", ell=" + std::to_string(ell) + ", t=" + std::to_string(t) + ")");
}

void QuantizationConfig::validate() const {
  int exp = 0;
  const double mant = std::frexp(K, &exp);
  if (!(K > 0) || mant != 0.5) throw std::invalid_argument("quantization: K must be a positive power of two");
  if (ell == 0 || ell > 62) throw std::invalid_argument("quantization: ell must be in [1, 62]");
}

std::uint64_t quantize(double x, const QuantizationConfig& cfg) {
  cfg.validate();
  if (std::isnan(x) || x < 0) throw std::domain_error("quantize: input must be a non-negative number");
  const long double scaled = std::floor(static_cast<long double>(cfg.K) * static_cast<long double>(x));
  const long double limit = std::ldexp(1.0L, static_cast<int>(cfg.ell));
  if (!(scaled < limit)) throw std::overflow_error("quantize: value does not fit in ell bits");
  return static_cast<std::uint64_t>(scaled);
}

RationalState fuse_plain(const RationalState& a, const RationalState& b, const mpz_class& n) {
  const unsigned lcm = lcm_pow2(a.denom_exp, b.denom_exp);
  mpz_class num = (a.numerator << (lcm - a.denom_exp)) + (b.numerator << (lcm - b.denom_exp));
  mpz_mod(num.get_mpz_t(), num.get_mpz_t(), n.get_mpz_t());
  return {num, lcm + 1};
}

bool decide_plain(const RationalState& s, const mpz_class& thr) { return s.numerator < (thr << s.denom_exp); }

mpq_class rational_value(const mpz_class& numerator, unsigned denom_exp) {
  mpz_class den = 1;
  den <<= denom_exp;
  mpq_class q(numerator, den);
  q.canonicalize();
  return q;
}

GossipOracle::GossipOracle(const std::vector<mpz_class>& inputs, mpz_class n) : n_(std::move(n)) {
  for (const auto& x : inputs) {
    if (x < 0 || x >= n_) throw std::out_of_range("oracle: input outside Z_n");
    reduced_.push_back({x, 0});
    shadow_.push_back(x);
  }
}

mpq_class GossipOracle::value(std::size_t i) const { return rational_value(shadow_.at(i), reduced_.at(i).denom_exp); }

void GossipOracle::fuse(std::size_t i, std::size_t j) {
  const RationalState fused = fuse_plain(reduced_.at(i), reduced_.at(j), n_);
  const unsigned lcm = fused.denom_exp - 1;
  const mpz_class exact =
      (shadow_[i] << (lcm - reduced_[i].denom_exp)) + (shadow_[j] << (lcm - reduced_[j].denom_exp));
  if (exact >= n_) wrapped_ = true;
  reduced_[i] = reduced_[j] = fused;
  shadow_[i] = shadow_[j] = exact;
}

void GossipOracle::reduce(std::size_t i, unsigned k) {
  auto& s = reduced_.at(i);
  if (k > s.denom_exp) throw std::invalid_argument("oracle: reduction larger than denominator exponent");
  s.numerator >>= k;
  s.denom_exp -= k;
  shadow_[i] >>= k;
}

mpq_class GossipOracle::mean() const {
  mpq_class sum = 0;
  for (std::size_t i = 0; i < size(); ++i) sum += value(i);
  sum /= static_cast<unsigned long>(size());
  return sum;
}

}  // namespace ppg
