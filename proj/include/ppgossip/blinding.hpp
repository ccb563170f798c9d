#pragma once

#include <stdexcept>

#include <gmpxx.h>

#include "ppgossip/rng.hpp"

namespace ppg {

enum class BlindingMode { uniform, statistical };

/// Additive mask. In uniform mode `value` is in Z_n; in statistical mode it is
/// in [0, 2^range_bits) and the masked value is an ordinary integer sum.
struct BlindingFactor {
  mpz_class value;
  BlindingMode mode = BlindingMode::uniform;
  unsigned range_bits = 0;
};

struct Blinded {
  mpz_class y;
  BlindingFactor r;
};

/// y = x + r mod n with r uniform over Z_n.
Blinded blind_uniform(const mpz_class& x, Rng& rng, const mpz_class& n);
/// Same with a caller-chosen factor.
mpz_class blind_uniform_with(const mpz_class& x, const mpz_class& r, const mpz_class& n);

/// y = x + r over the integers with r uniform in [0, 2^(m+t)). Requires x < 2^m
/// and 2^m + 2^(m+t) < n so the sum never wraps.
Blinded blind_statistical(const mpz_class& x, unsigned m, unsigned t, Rng& rng, const mpz_class& n);
mpz_class blind_statistical_with(const mpz_class& x, unsigned m, unsigned t, const mpz_class& r, const mpz_class& n);

/// Removes the mask. Statistical mode throws std::domain_error when the
/// result is negative (the factor does not belong to `y`).
mpz_class unblind(const mpz_class& y, const BlindingFactor& r, const mpz_class& n);

}  // namespace ppg
