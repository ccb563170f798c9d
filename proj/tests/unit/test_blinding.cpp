#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>

#include "ppgossip/blinding.hpp"

using namespace ppg;

namespace {

mpz_class pow2(unsigned e) {
  mpz_class v = 1;
  return v << e;
}

}  // namespace

TEST(BlindUniform, Examples) {
  EXPECT_EQ(blind_uniform_with(5, 7, 13), 12);
  EXPECT_EQ(blind_uniform_with(5, 8, 13), 0);
  EXPECT_EQ(blind_uniform_with(0, 9, 13), 9);
}

TEST(BlindUniform, UnblindExamples) {
  EXPECT_EQ(unblind(12, {7, BlindingMode::uniform, 0}, 13), 5);
  EXPECT_EQ(unblind(0, {8, BlindingMode::uniform, 0}, 13), 5);
}

TEST(BlindUniform, RejectsOutOfRange) { EXPECT_THROW(blind_uniform_with(13, 1, 13), std::out_of_range); }

TEST(BlindUniform, ZeroYieldsFactor) {
  Rng rng(2);
  const mpz_class n = pow2(384);
  const Blinded b = blind_uniform(0, rng, n);
  EXPECT_EQ(b.y, b.r.value);
  EXPECT_EQ(b.r.mode, BlindingMode::uniform);
}

TEST(BlindUniform, RoundTrip) {
  Rng rng(4);
  const mpz_class n = pow2(384);
  for (int i = 0; i < 5000; ++i) {
    const mpz_class x = rng.uniform_below(n);
    const Blinded b = blind_uniform(x, rng, n);
    ASSERT_LT(b.y, n);
    ASSERT_EQ(unblind(b.y, b.r, n), x);
  }
}

TEST(BlindUniform, ChiSquareUniformity) {
  // Fixed x, 10^5 draws over Z_256; df = 255, alpha = 0.001.
  Rng rng(6);
  const mpz_class n = 256;
  std::vector<double> counts(256, 0);
  const int samples = 100000;
  for (int i = 0; i < samples; ++i) counts[blind_uniform(77, rng, n).y.get_ui()] += 1;
  const double expected = samples / 256.0;
  double chi2 = 0;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  const double critical = boost::math::quantile(boost::math::complement(boost::math::chi_squared(255), 0.001));
  EXPECT_LT(chi2, critical);
}

TEST(BlindStatistical, Examples) {
  const mpz_class n = pow2(64);
  EXPECT_EQ(blind_statistical_with(9, 4, 2, 41, n), 50);
  EXPECT_EQ(blind_statistical_with(0, 4, 2, 41, n), 41);
  EXPECT_EQ(unblind(50, {41, BlindingMode::statistical, 6}, n), 9);
}

TEST(BlindStatistical, NeverExceedsRange) {
  Rng rng(7);
  const mpz_class n = pow2(64);
  const mpz_class bound = pow2(4) + pow2(12);
  mpz_class max_y = 0;
  for (int i = 0; i < 100000; ++i) {
    const Blinded b = blind_statistical(rng.uniform_bits(4), 4, 8, rng, n);
    EXPECT_EQ(b.r.range_bits, 12u);
    if (b.y > max_y) max_y = b.y;
  }
  EXPECT_LT(max_y, bound);
  EXPECT_LT(max_y, n);
}

TEST(BlindStatistical, RoundTrip) {
  Rng rng(8);
  const mpz_class n = pow2(384);
  for (int i = 0; i < 5000; ++i) {
    const mpz_class x = rng.uniform_bits(16);
    const Blinded b = blind_statistical(x, 16, 80, rng, n);
    ASSERT_EQ(unblind(b.y, b.r, n), x);
  }
}

TEST(BlindStatistical, PreconditionsEnforced) {
  Rng rng(9);
  // 2^4 + 2^12 >= 2^12 violates the headroom requirement.
  EXPECT_THROW(blind_statistical(3, 4, 8, rng, pow2(12)), std::out_of_range);
  EXPECT_THROW(blind_statistical(16, 4, 8, rng, pow2(64)), std::out_of_range);
  EXPECT_THROW(blind_statistical_with(1, 4, 2, 64, pow2(64)), std::out_of_range);
}

TEST(BlindStatistical, MismatchedFactorDetected) {
  EXPECT_THROW(unblind(5, {9, BlindingMode::statistical, 6}, pow2(64)), std::domain_error);
}
