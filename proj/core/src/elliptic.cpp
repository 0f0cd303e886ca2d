#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "parallel.hpp"
#include "satotate/error.hpp"
#include "satotate/frobenius.hpp"

namespace satotate {

namespace {

constexpr i64 kCoefficientLimit = i64{1} << 40;
constexpr u64 kBsgsThreshold = 1000;

u64 disc_residue(i64 a, i64 b, u64 p) {
  const u64 ar = reduce(a, p), br = reduce(b, p);
  const u64 a3 = mul_mod(mul_mod(ar, ar, p), ar, p);
  const u64 b2 = mul_mod(br, br, p);
  return add_mod(mul_mod(4 % p, a3, p), mul_mod(27 % p, b2, p), p);
}

// splitmix64; deterministic per (curve, p).
struct SplitMix {
  u64 state;
  u64 next() {
    u64 z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27U)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31U);
  }
};

struct Point {
  u64 x = 0;
  u64 y = 0;
  bool inf = true;
};

class CurveModP {
 public:
  CurveModP(u64 a, u64 b, u64 p) : a_(a), b_(b), p_(p) {}

  u64 rhs(u64 x) const {
    return add_mod(mul_mod(add_mod(mul_mod(x, x, p_), a_, p_), x, p_), b_, p_);
  }

  Point add(const Point& P, const Point& Q) const {
    if (P.inf) return Q;
    if (Q.inf) return P;
    u64 lambda;
    if (P.x == Q.x) {
      if (add_mod(P.y, Q.y, p_) == 0) return {};
      const u64 num = add_mod(mul_mod(3, mul_mod(P.x, P.x, p_), p_), a_, p_);
      lambda = mul_mod(num, inv_mod(add_mod(P.y, P.y, p_), p_), p_);
    } else {
      lambda = mul_mod(sub_mod(Q.y, P.y, p_), inv_mod(sub_mod(Q.x, P.x, p_), p_), p_);
    }
    const u64 x3 = sub_mod(sub_mod(mul_mod(lambda, lambda, p_), P.x, p_), Q.x, p_);
    const u64 y3 = sub_mod(mul_mod(lambda, sub_mod(P.x, x3, p_), p_), P.y, p_);
    return {x3, y3, false};
  }

  Point mul(u64 k, Point P) const {
    Point acc;
    while (k != 0) {
      if (k & 1U) acc = add(acc, P);
      k >>= 1U;
      if (k != 0) P = add(P, P);
    }
    return acc;
  }

  Point random_point(SplitMix& rng) const {
    for (;;) {
      const u64 x = rng.next() % p_;
      const u64 r = rhs(x);
      const int chi = legendre(r, p_);
      if (chi == 0) return {x, 0, false};
      if (chi == 1) return {x, sqrt_mod(r, p_), false};
    }
  }

 private:
  u64 a_, b_, p_;
};

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

u64 exact_order(const CurveModP& E, const Point& P, u64 multiple) {
  for (u64 q : prime_factors(multiple)) {
    while (multiple % q == 0 && E.mul(multiple / q, P).inf) multiple /= q;
  }
  return multiple;
}

// Some positive M with M*P = O, searched in [lo, hi] by baby-step giant-step.
u64 find_multiple(const CurveModP& E, const Point& P, u64 lo, u64 hi) {
  const u64 m = isqrt((hi - lo) / 2) + 1;
  std::unordered_map<u64, std::pair<u64, u64>> baby;  // x -> (j, y)
  baby.reserve(2 * m);
  Point jP;
  for (u64 j = 1; j <= m; ++j) {
    jP = E.add(jP, P);
    if (jP.inf) return j;
    auto [it, inserted] = baby.try_emplace(jP.x, j, jP.y);
    if (!inserted) {
      // jP = +-kP with k < j
      const u64 k = it->second.first;
      return it->second.second == jP.y ? j - k : j + k;
    }
  }
  const Point step = E.mul(2 * m + 1, P);
  u64 c = lo + m;
  Point Q = E.mul(c, P);
  while (c <= hi + m) {
    if (Q.inf) return c;
    if (auto it = baby.find(Q.x); it != baby.end()) {
      const auto [j, y] = it->second;
      return y == Q.y ? c - j : c + j;
    }
    Q = E.add(Q, step);
    c += 2 * m + 1;
  }
  throw Error(ErrorKind::Internal, "baby-step giant-step found no group order in the Hasse interval");
}

// Unique multiple of L in [lo, hi], or 0.
u64 unique_multiple(u64 L, u64 lo, u64 hi) {
  const u64 first = (lo + L - 1) / L * L;
  if (first > hi) return 0;
  return first + L > hi ? first : 0;
}

}  // namespace

EllipticCurveQ::EllipticCurveQ(i64 a, i64 b) : a_(a), b_(b) {
  if (a > kCoefficientLimit || a < -kCoefficientLimit || b > kCoefficientLimit ||
      b < -kCoefficientLimit) {
    throw Error(ErrorKind::InvalidArgument, "curve coefficients exceed 2^40");
  }
  const i128 disc = 4 * static_cast<i128>(a) * a * a + 27 * static_cast<i128>(b) * b;
  if (disc == 0) throw Error(ErrorKind::InvalidArgument, "singular curve: 4a^3 + 27b^2 = 0");
}

bool EllipticCurveQ::has_good_reduction(u64 p) const {
  if (p == 2) return false;
  return disc_residue(a_, b_, p) != 0;
}

std::string EllipticCurveQ::to_string() const {
  IntPoly f({b_, a_, 0, 1});
  return "y^2=" + f.to_string();
}

i64 ec_trace_charsum(const EllipticCurveQ& curve, Prime prime) {
  const u64 p = prime.value();
  if (!curve.has_good_reduction(p)) {
    throw Error(ErrorKind::BadReduction, "bad reduction at p = " + std::to_string(p));
  }
  const QuadraticTable chi(p);
  const CurveModP E(reduce(curve.a(), p), reduce(curve.b(), p), p);
  i64 sum = 0;
  for (u64 x = 0; x < p; ++x) sum += chi(E.rhs(x));
  return -sum;
}

i64 ec_trace_bsgs(const EllipticCurveQ& curve, Prime prime) {
  const u64 p = prime.value();
  if (!curve.has_good_reduction(p)) {
    throw Error(ErrorKind::BadReduction, "bad reduction at p = " + std::to_string(p));
  }
  if (p < kBsgsThreshold) return ec_trace_charsum(curve, prime);

  const u64 a = reduce(curve.a(), p), b = reduce(curve.b(), p);
  u64 d = 2;
  while (legendre(d, p) != -1) ++d;
  const u64 d2 = mul_mod(d, d, p);
  const CurveModP E(a, b, p);
  const CurveModP twist(mul_mod(a, d2, p), mul_mod(b, mul_mod(d2, d, p), p), p);

  const u64 width = isqrt(4 * p);  // floor(2 sqrt p)
  const u64 lo = p + 1 - width, hi = p + 1 + width;
  SplitMix rng{p ^ (static_cast<u64>(curve.a()) * 0x9e3779b97f4a7c15ULL) ^
               (static_cast<u64>(curve.b()) << 17U)};

  u64 lcm_e = 1, lcm_t = 1;
  for (int iter = 0; iter < 64; ++iter) {
    const Point P = E.random_point(rng);
    lcm_e = std::lcm(lcm_e, exact_order(E, P, find_multiple(E, P, lo, hi)));
    if (u64 n = unique_multiple(lcm_e, lo, hi); n != 0) return static_cast<i64>(p + 1) - static_cast<i64>(n);

    const Point Q = twist.random_point(rng);
    lcm_t = std::lcm(lcm_t, exact_order(twist, Q, find_multiple(twist, Q, lo, hi)));
    if (u64 n = unique_multiple(lcm_t, lo, hi); n != 0) {
      // #E = 2p + 2 - #E'
      return static_cast<i64>(n) - static_cast<i64>(p + 1);
    }
  }
  return ec_trace_charsum(curve, prime);
}

i64 ec_trace(const EllipticCurveQ& curve, Prime p) {
  return p.value() < kBsgsThreshold ? ec_trace_charsum(curve, p) : ec_trace_bsgs(curve, p);
}

EcScan ec_scan(const EllipticCurveQ& curve, u64 bound, ScanOptions options) {
  if (bound < 3) throw Error(ErrorKind::InvalidArgument, "ec_scan needs bound >= 3");
  EcScan scan;
  std::vector<Prime> good;
  for (Prime p : primes_up_to(bound)) {
    if (curve.has_good_reduction(p)) good.push_back(p);
    else scan.bad_primes.push_back(p);
  }
  scan.data = detail::ordered_map<TraceDatum>(good.size(), options.threads, [&](std::size_t i) {
    const Prime p = good[i];
    const i64 ap = ec_trace(curve, p);
    return TraceDatum{p.value(), ap, static_cast<double>(ap) / std::sqrt(static_cast<double>(p.value()))};
  });
  return scan;
}

ClassPoint to_class_point(const TraceDatum& datum) {
  const double half = std::clamp(datum.normalized / 2.0, -1.0, 1.0);
  return {0, std::acos(half), 0.0};
}

std::vector<ClassPoint> to_class_points(std::span<const TraceDatum> data) {
  std::vector<ClassPoint> out;
  out.reserve(data.size());
  for (const auto& d : data) out.push_back(to_class_point(d));
  return out;
}

}  // namespace satotate
