#include "ppgossip/pre/group.hpp"

namespace ppg::pre {

namespace {

constexpr const char* kOrderHex =
    "12cfa46b01f623e69ef04fd193790b7a9bab87d44e6ab3bb2a5f0aa0639ae91a"
    "8c04ce2a083b29b563b544a95382bb39005a41b3bfb76420a632fe330467878b";
constexpr unsigned long kCofactor = 12;

// Arithmetic in F_{p^2} = F_p[i] / (i^2 + 1).
struct Fp2Ops {
  const mpz_class& p;

  void reduce(mpz_class& v) const { mpz_mod(v.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t()); }

  G2Elem mul(const G2Elem& u, const G2Elem& v) const {
    mpz_class t1 = u.a * v.a;
    mpz_class t2 = u.b * v.b;
    mpz_class t3 = (u.a + u.b) * (v.a + v.b);
    G2Elem r{t1 - t2, t3 - t1 - t2};
    reduce(r.a);
    reduce(r.b);
    return r;
  }

  G2Elem sqr(const G2Elem& u) const {
    G2Elem r{(u.a + u.b) * (u.a - u.b), 2 * u.a * u.b};
    reduce(r.a);
    reduce(r.b);
    return r;
  }

  G2Elem conj(const G2Elem& u) const {
    G2Elem r{u.a, -u.b};
    reduce(r.b);
    return r;
  }

  G2Elem inv(const G2Elem& u) const {
    mpz_class norm = u.a * u.a + u.b * u.b;
    reduce(norm);
    mpz_class ni;
    if (mpz_invert(ni.get_mpz_t(), norm.get_mpz_t(), p.get_mpz_t()) == 0)
      throw std::domain_error("F_p^2 inverse of zero");
    G2Elem r{u.a * ni, -u.b * ni};
    reduce(r.a);
    reduce(r.b);
    return r;
  }

  G2Elem pow(const G2Elem& u, const mpz_class& k) const {
    G2Elem acc{1, 0};
    const std::size_t bits = k == 0 ? 0 : mpz_sizeinbase(k.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
      acc = sqr(acc);
      if (mpz_tstbit(k.get_mpz_t(), i)) acc = mul(acc, u);
    }
    return acc;
  }
};

}  // namespace

SupersingularGroup::SupersingularGroup() : q_(kOrderHex, 16), cofactor_(kCofactor) {
  p_ = cofactor_ * q_ - 1;
  sqrt_exp_ = (p_ + 1) / 4;
  coord_bytes_ = bytes_for_bits(mpz_sizeinbase(p_.get_mpz_t(), 2));

  // Deterministic generator: first x = 1, 2, ... whose lift has order q after
  // cofactor clearing and pairs non-trivially with itself.
  for (mpz_class x = 1;; ++x) {
    mpz_class rhs = fmod(x * x * x + x);
    mpz_class y;
    if (!fsqrt(rhs, y)) continue;
    G1Point cand = g1_mul(G1Point{x, y, false}, cofactor_);
    if (cand.infinity) continue;
    G2Elem z = pair(cand, cand);
    if (z == gt_one()) continue;
    g_ = cand;
    z_ = z;
    break;
  }
}

mpz_class SupersingularGroup::fmod(const mpz_class& v) const {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), v.get_mpz_t(), p_.get_mpz_t());
  return r;
}

mpz_class SupersingularGroup::finv(const mpz_class& v) const {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), v.get_mpz_t(), p_.get_mpz_t()) == 0) throw std::domain_error("F_p inverse of zero");
  return r;
}

bool SupersingularGroup::fsqrt(const mpz_class& v, mpz_class& root) const {
  mpz_powm(root.get_mpz_t(), v.get_mpz_t(), sqrt_exp_.get_mpz_t(), p_.get_mpz_t());
  return fmod(root * root) == fmod(v);
}

bool SupersingularGroup::on_curve(const G1Point& p) const {
  if (p.infinity) return true;
  if (p.x < 0 || p.x >= p_ || p.y < 0 || p.y >= p_) return false;
  return fmod(p.y * p.y) == fmod(p.x * p.x * p.x + p.x);
}

G1Point SupersingularGroup::g1_neg(const G1Point& p) const {
  if (p.infinity) return p;
  return {p.x, fmod(-p.y), false};
}

G1Point SupersingularGroup::g1_double(const G1Point& p) const {
  if (p.infinity || p.y == 0) return {0, 0, true};
  const mpz_class lambda = fmod((3 * p.x * p.x + 1) * finv(2 * p.y));
  const mpz_class x3 = fmod(lambda * lambda - 2 * p.x);
  const mpz_class y3 = fmod(lambda * (p.x - x3) - p.y);
  return {x3, y3, false};
}

G1Point SupersingularGroup::g1_add(const G1Point& p, const G1Point& r) const {
  if (p.infinity) return r;
  if (r.infinity) return p;
  if (p.x == r.x) {
    if (p.y == r.y) return g1_double(p);
    return {0, 0, true};
  }
  const mpz_class lambda = fmod((r.y - p.y) * finv(r.x - p.x));
  const mpz_class x3 = fmod(lambda * lambda - p.x - r.x);
  const mpz_class y3 = fmod(lambda * (p.x - x3) - p.y);
  return {x3, y3, false};
}

G1Point SupersingularGroup::g1_mul(const G1Point& p, const mpz_class& k) const {
  mpz_class e = k;
  G1Point base = p;
  if (e < 0) {
    e = -e;
    base = g1_neg(p);
  }
  G1Point acc{0, 0, true};
  const std::size_t bits = e == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    acc = g1_double(acc);
    if (mpz_tstbit(e.get_mpz_t(), i)) acc = g1_add(acc, base);
  }
  return acc;
}

G2Elem SupersingularGroup::gt_mul(const G2Elem& u, const G2Elem& v) const { return Fp2Ops{p_}.mul(u, v); }
G2Elem SupersingularGroup::gt_inv(const G2Elem& u) const { return Fp2Ops{p_}.inv(u); }

G2Elem SupersingularGroup::gt_pow(const G2Elem& u, const mpz_class& k) const {
  const Fp2Ops ops{p_};
  if (k < 0) return ops.pow(ops.inv(u), -k);
  return ops.pow(u, k);
}

// Miller loop for f_{q,P} evaluated at the distorted point (-x_R, i*y_R).
// Vertical lines take values in F_p and vanish under the final exponentiation,
// so they are omitted.
G2Elem SupersingularGroup::miller(const G1Point& p, const G1Point& r) const {
  const Fp2Ops ops{p_};
  G2Elem f{1, 0};
  G1Point t = p;
  auto line = [&](const mpz_class& lambda, const G1Point& at) {
    return G2Elem{fmod(lambda * (r.x + at.x) - at.y), r.y};
  };
  const std::size_t bits = mpz_sizeinbase(q_.get_mpz_t(), 2);
  for (std::size_t i = bits - 1; i-- > 0;) {
    if (t.infinity) throw std::logic_error("miller: reached infinity early");
    const mpz_class lambda = fmod((3 * t.x * t.x + 1) * finv(2 * t.y));
    f = ops.mul(ops.sqr(f), line(lambda, t));
    t = g1_double(t);
    if (mpz_tstbit(q_.get_mpz_t(), i)) {
      if (t.x == p.x) {
        // t == -p: vertical line, only possible on the final bit
        t = g1_add(t, p);
        continue;
      }
      const mpz_class lambda_add = fmod((p.y - t.y) * finv(p.x - t.x));
      f = ops.mul(f, line(lambda_add, t));
      t = g1_add(t, p);
    }
  }
  return f;
}

G2Elem SupersingularGroup::pair(const G1Point& p, const G1Point& r) const {
  if (p.infinity || r.infinity) return gt_one();
  const Fp2Ops ops{p_};
  G2Elem f = miller(p, r);
  // f^(p-1) = conj(f) / f, then raise to (p+1)/q.
  f = ops.mul(ops.conj(f), ops.inv(f));
  return ops.pow(f, cofactor_);
}

bool SupersingularGroup::in_g1(const G1Point& p) const {
  if (!on_curve(p)) return false;
  return g1_mul(p, q_).infinity;
}

bool SupersingularGroup::in_gt(const G2Elem& u) const {
  if (u.a < 0 || u.a >= p_ || u.b < 0 || u.b >= p_) return false;
  if (fmod(u.a * u.a + u.b * u.b) != 1) return false;
  return Fp2Ops{p_}.pow(u, q_) == gt_one();
}

// Compressed encodings: a tag byte followed by one coordinate.
// G1: tag 0 = infinity, 2 | parity(y); payload x.
// G2: elements are unitary (a^2 + b^2 = 1); tag 2 | parity(b); payload a.
Bytes SupersingularGroup::encode_g1(const G1Point& p) const {
  Bytes out;
  out.reserve(1 + coord_bytes_);
  if (p.infinity) {
    out.assign(1 + coord_bytes_, 0);
    return out;
  }
  out.push_back(static_cast<std::uint8_t>(2 | mpz_tstbit(p.y.get_mpz_t(), 0)));
  const Bytes x = encode_be(p.x, coord_bytes_);
  out.insert(out.end(), x.begin(), x.end());
  return out;
}

Bytes SupersingularGroup::encode_gt(const G2Elem& u) const {
  Bytes out;
  out.reserve(1 + coord_bytes_);
  out.push_back(static_cast<std::uint8_t>(2 | mpz_tstbit(u.b.get_mpz_t(), 0)));
  const Bytes a = encode_be(u.a, coord_bytes_);
  out.insert(out.end(), a.begin(), a.end());
  return out;
}

G1Point SupersingularGroup::decode_g1(std::span<const std::uint8_t> in) const {
  if (in.size() != 1 + coord_bytes_) throw GroupMembershipError("G1 encoding has wrong width");
  const std::uint8_t tag = in[0];
  const mpz_class x = decode_be(in.subspan(1));
  if (tag == 0) {
    if (x != 0) throw GroupMembershipError("malformed G1 infinity encoding");
    return {0, 0, true};
  }
  if ((tag & ~1u) != 2 || x >= p_) throw GroupMembershipError("malformed G1 encoding");
  mpz_class y;
  if (!fsqrt(fmod(x * x * x + x), y)) throw GroupMembershipError("G1 x-coordinate not on curve");
  if (static_cast<unsigned>(mpz_tstbit(y.get_mpz_t(), 0)) != (tag & 1u)) y = fmod(-y);
  G1Point p{x, y, false};
  if (!g1_mul(p, q_).infinity) throw GroupMembershipError("G1 point not in the order-q subgroup");
  return p;
}

G2Elem SupersingularGroup::decode_gt(std::span<const std::uint8_t> in) const {
  if (in.size() != 1 + coord_bytes_) throw GroupMembershipError("G2 encoding has wrong width");
  const std::uint8_t tag = in[0];
  const mpz_class a = decode_be(in.subspan(1));
  if ((tag & ~1u) != 2 || a >= p_) throw GroupMembershipError("malformed G2 encoding");
  mpz_class b;
  if (!fsqrt(fmod(1 - a * a), b)) throw GroupMembershipError("G2 element not unitary");
  if (static_cast<unsigned>(mpz_tstbit(b.get_mpz_t(), 0)) != (tag & 1u)) b = fmod(-b);
  G2Elem u{a, b};
  if (Fp2Ops{p_}.pow(u, q_) != gt_one()) throw GroupMembershipError("G2 element not in the order-q subgroup");
  return u;
}

}  // namespace ppg::pre
