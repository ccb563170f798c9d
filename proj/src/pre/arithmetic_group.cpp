#include <string>

#include "ppgossip/pre/group.hpp"

namespace ppg::pre {

mpz_class PairingGroup::random_exponent(Rng& rng) const {
  const mpz_class bound = order() - 1;
  return rng.uniform_below(bound) + 1;
}

namespace {

mpz_class mersenne521() {
  mpz_class q = 1;
  q <<= 521;
  return q - 1;
}

}  // namespace

ArithmeticGroup::ArithmeticGroup() : ArithmeticGroup(mersenne521()) {}

ArithmeticGroup::ArithmeticGroup(mpz_class q)
    : q_(std::move(q)), width_(bytes_for_bits(mpz_sizeinbase(q_.get_mpz_t(), 2))), g_{1, 0, false}, z_{1, 0} {
  if (mpz_probab_prime_p(q_.get_mpz_t(), 30) == 0) throw std::invalid_argument("ArithmeticGroup: order must be prime");
}

mpz_class ArithmeticGroup::reduce(const mpz_class& v) const {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), v.get_mpz_t(), q_.get_mpz_t());
  return r;
}

G1Point ArithmeticGroup::g1_mul(const G1Point& p, const mpz_class& k) const { return {reduce(p.x * k), 0, false}; }
G1Point ArithmeticGroup::g1_add(const G1Point& p, const G1Point& r) const { return {reduce(p.x + r.x), 0, false}; }
G2Elem ArithmeticGroup::gt_mul(const G2Elem& u, const G2Elem& v) const { return {reduce(u.a + v.a), 0}; }
G2Elem ArithmeticGroup::gt_inv(const G2Elem& u) const { return {reduce(-u.a), 0}; }
G2Elem ArithmeticGroup::gt_pow(const G2Elem& u, const mpz_class& k) const { return {reduce(u.a * k), 0}; }
G2Elem ArithmeticGroup::pair(const G1Point& p, const G1Point& r) const { return {reduce(p.x * r.x), 0}; }

bool ArithmeticGroup::in_g1(const G1Point& p) const { return !p.infinity && p.y == 0 && p.x >= 0 && p.x < q_; }
bool ArithmeticGroup::in_gt(const G2Elem& u) const { return u.b == 0 && u.a >= 0 && u.a < q_; }

Bytes ArithmeticGroup::encode_g1(const G1Point& p) const { return encode_be(p.x, width_); }
Bytes ArithmeticGroup::encode_gt(const G2Elem& u) const { return encode_be(u.a, width_); }

G1Point ArithmeticGroup::decode_g1(std::span<const std::uint8_t> in) const {
  if (in.size() != width_) throw GroupMembershipError("G1 encoding has wrong width");
  G1Point p{decode_be(in), 0, false};
  if (!in_g1(p)) throw GroupMembershipError("G1 element out of range");
  return p;
}

G2Elem ArithmeticGroup::decode_gt(std::span<const std::uint8_t> in) const {
  if (in.size() != width_) throw GroupMembershipError("G2 encoding has wrong width");
  G2Elem u{decode_be(in), 0};
  if (!in_gt(u)) throw GroupMembershipError("G2 element out of range");
  return u;
}

std::shared_ptr<const PairingGroup> make_group(std::string_view backend) {
  if (backend == "test") return std::make_shared<ArithmeticGroup>();
  if (backend == "pairing") return std::make_shared<SupersingularGroup>();
  throw std::invalid_argument("unknown backend '" + std::string(backend) + "' (expected test or pairing)");
}

}  // namespace ppg::pre
