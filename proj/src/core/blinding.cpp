#include "ppgossip/blinding.hpp"

namespace ppg {

namespace {

mpz_class mod(const mpz_class& v, const mpz_class& n) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  return r;
}

void check_statistical_range(const mpz_class& x, unsigned m, unsigned t, const mpz_class& n) {
  mpz_class bound_x = 1, bound_r = 1;
  bound_x <<= m;
  bound_r <<= m + t;
  if (x < 0 || x >= bound_x) throw std::out_of_range("blind_statistical: x must be below 2^m");
  if (bound_x + bound_r >= n) throw std::out_of_range("blind_statistical: 2^m + 2^(m+t) < n violated");
}

}  // namespace

Blinded blind_uniform(const mpz_class& x, Rng& rng, const mpz_class& n) {
  BlindingFactor r{rng.uniform_below(n), BlindingMode::uniform, 0};
  mpz_class y = blind_uniform_with(x, r.value, n);
  return {std::move(y), std::move(r)};
}

mpz_class blind_uniform_with(const mpz_class& x, const mpz_class& r, const mpz_class& n) {
  if (x < 0 || x >= n) throw std::out_of_range("blind_uniform: x outside Z_n");
  return mod(x + r, n);
}

Blinded blind_statistical(const mpz_class& x, unsigned m, unsigned t, Rng& rng, const mpz_class& n) {
  check_statistical_range(x, m, t, n);
  BlindingFactor r{rng.uniform_bits(m + t), BlindingMode::statistical, m + t};
  mpz_class y = x + r.value;
  return {std::move(y), std::move(r)};
}

mpz_class blind_statistical_with(const mpz_class& x, unsigned m, unsigned t, const mpz_class& r, const mpz_class& n) {
  check_statistical_range(x, m, t, n);
  mpz_class bound_r = 1;
  bound_r <<= m + t;
  if (r < 0 || r >= bound_r) throw std::out_of_range("blind_statistical: r outside [0, 2^(m+t))");
  return x + r;
}

mpz_class unblind(const mpz_class& y, const BlindingFactor& r, const mpz_class& n) {
  if (r.mode == BlindingMode::uniform) return mod(y - r.value, n);
  mpz_class x = y - r.value;
  if (x < 0) throw std::domain_error("unblind: negative result, mismatched blinding factor");
  return x;
}

}  // namespace ppg
