#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string_view>

#include <gmpxx.h>

#include "ppgossip/bytes.hpp"
#include "ppgossip/rng.hpp"

namespace ppg::pre {

/// Element of the source group G1. The meaning of the coordinates is
/// backend-specific; callers treat it as opaque.
struct G1Point {
  mpz_class x;
  mpz_class y;
  bool infinity = false;

  bool operator==(const G1Point&) const = default;
};

/// Element of the target group G2 (a + b*i for the pairing backend).
struct G2Elem {
  mpz_class a;
  mpz_class b;

  bool operator==(const G2Elem&) const = default;
};

class GroupMembershipError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Prime-order groups G1, G2 with a symmetric bilinear map e: G1 x G1 -> G2.
class PairingGroup {
 public:
  virtual ~PairingGroup() = default;

  virtual std::string_view name() const = 0;
  /// Prime group order q.
  virtual const mpz_class& order() const = 0;
  /// g in G1.
  virtual const G1Point& generator() const = 0;
  /// Z = e(g, g).
  virtual const G2Elem& gt_generator() const = 0;

  virtual G1Point g1_mul(const G1Point& p, const mpz_class& k) const = 0;
  virtual G1Point g1_add(const G1Point& p, const G1Point& r) const = 0;

  virtual G2Elem gt_one() const = 0;
  virtual G2Elem gt_mul(const G2Elem& u, const G2Elem& v) const = 0;
  virtual G2Elem gt_inv(const G2Elem& u) const = 0;
  virtual G2Elem gt_pow(const G2Elem& u, const mpz_class& k) const = 0;

  virtual G2Elem pair(const G1Point& p, const G1Point& r) const = 0;

  virtual bool in_g1(const G1Point& p) const = 0;
  virtual bool in_gt(const G2Elem& u) const = 0;

  /// Fixed-width canonical encodings. Decoding validates group membership.
  virtual Bytes encode_g1(const G1Point& p) const = 0;
  virtual Bytes encode_gt(const G2Elem& u) const = 0;
  virtual G1Point decode_g1(std::span<const std::uint8_t> in) const = 0;
  virtual G2Elem decode_gt(std::span<const std::uint8_t> in) const = 0;

  std::size_t order_bits() const { return mpz_sizeinbase(order().get_mpz_t(), 2); }
  /// Uniform in Z_q^*.
  mpz_class random_exponent(Rng& rng) const;
  G2Elem gt_div(const G2Elem& u, const G2Elem& v) const { return gt_mul(u, gt_inv(v)); }
};

/// Insecure backend: elements are represented by their discrete logarithms
/// modulo q, so the pairing is multiplication of exponents. Only for tests
/// and fast simulation.
class ArithmeticGroup final : public PairingGroup {
 public:
  /// Default order is the Mersenne prime 2^521 - 1.
  ArithmeticGroup();
  explicit ArithmeticGroup(mpz_class q);

  std::string_view name() const override { return "test"; }
  const mpz_class& order() const override { return q_; }
  const G1Point& generator() const override { return g_; }
  const G2Elem& gt_generator() const override { return z_; }

  G1Point g1_mul(const G1Point& p, const mpz_class& k) const override;
  G1Point g1_add(const G1Point& p, const G1Point& r) const override;
  G2Elem gt_one() const override { return {0, 0}; }
  G2Elem gt_mul(const G2Elem& u, const G2Elem& v) const override;
  G2Elem gt_inv(const G2Elem& u) const override;
  G2Elem gt_pow(const G2Elem& u, const mpz_class& k) const override;
  G2Elem pair(const G1Point& p, const G1Point& r) const override;
  bool in_g1(const G1Point& p) const override;
  bool in_gt(const G2Elem& u) const override;
  Bytes encode_g1(const G1Point& p) const override;
  Bytes encode_gt(const G2Elem& u) const override;
  G1Point decode_g1(std::span<const std::uint8_t> in) const override;
  G2Elem decode_gt(std::span<const std::uint8_t> in) const override;

  /// Discrete logs, exposed so tests can recompute values by exponent arithmetic.
  const mpz_class& dlog(const G1Point& p) const { return p.x; }
  const mpz_class& dlog(const G2Elem& u) const { return u.a; }

 private:
  mpz_class reduce(const mpz_class& v) const;

  mpz_class q_;
  std::size_t width_;
  G1Point g_;
  G2Elem z_;
};

/// Type-A symmetric pairing: the supersingular curve y^2 = x^3 + x over F_p
/// with p = 3 mod 4, G1 the order-q subgroup of E(F_p), G2 the order-q
/// subgroup of F_{p^2}^*, and e the reduced Tate pairing composed with the
/// distortion map (x, y) -> (-x, i*y). q has 509 bits, p = 12q - 1 has 512.
class SupersingularGroup final : public PairingGroup {
 public:
  SupersingularGroup();

  std::string_view name() const override { return "pairing"; }
  const mpz_class& order() const override { return q_; }
  const G1Point& generator() const override { return g_; }
  const G2Elem& gt_generator() const override { return z_; }
  const mpz_class& field_prime() const { return p_; }

  G1Point g1_mul(const G1Point& p, const mpz_class& k) const override;
  G1Point g1_add(const G1Point& p, const G1Point& r) const override;
  G2Elem gt_one() const override { return {1, 0}; }
  G2Elem gt_mul(const G2Elem& u, const G2Elem& v) const override;
  G2Elem gt_inv(const G2Elem& u) const override;
  G2Elem gt_pow(const G2Elem& u, const mpz_class& k) const override;
  G2Elem pair(const G1Point& p, const G1Point& r) const override;
  bool in_g1(const G1Point& p) const override;
  bool in_gt(const G2Elem& u) const override;
  Bytes encode_g1(const G1Point& p) const override;
  Bytes encode_gt(const G2Elem& u) const override;
  G1Point decode_g1(std::span<const std::uint8_t> in) const override;
  G2Elem decode_gt(std::span<const std::uint8_t> in) const override;

  bool on_curve(const G1Point& p) const;

 private:
  mpz_class fmod(const mpz_class& v) const;
  mpz_class finv(const mpz_class& v) const;
  bool fsqrt(const mpz_class& v, mpz_class& root) const;
  G1Point g1_double(const G1Point& p) const;
  G1Point g1_neg(const G1Point& p) const;
  G2Elem miller(const G1Point& p, const G1Point& r) const;

  mpz_class p_;
  mpz_class q_;
  mpz_class cofactor_;
  mpz_class sqrt_exp_;
  std::size_t coord_bytes_;
  G1Point g_;
  G2Elem z_;
};

/// Backend by name: "test" or "pairing".
std::shared_ptr<const PairingGroup> make_group(std::string_view backend);

}  // namespace ppg::pre
