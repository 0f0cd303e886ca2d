#include <algorithm>
#include <cmath>
#include <string>

#include "parallel.hpp"
#include "satotate/error.hpp"
#include "satotate/frobenius.hpp"

namespace satotate {

namespace {

constexpr double kRootTolerance = 1e-9;

// f squarefree over Q iff f mod p is squarefree for some p not dividing lc.
// Any nonzero discriminant has finitely many prime divisors, so a short
// search is conclusive for every polynomial the CLI can accept.
bool squarefree_over_q(const IntPoly& f) {
  for (Prime p : primes_up_to(20000)) {
    if (p.value() == 2) continue;
    if (is_unramified(f, p)) return true;
  }
  return false;
}

}  // namespace

HyperCurveQ::HyperCurveQ(IntPoly f) : f_(std::move(f)) {
  if (f_.degree() != 5 && f_.degree() != 6) {
    throw Error(ErrorKind::InvalidArgument, "genus-2 model needs deg f in {5, 6}, got " + f_.to_string());
  }
  for (i64 c : f_.coefficients()) {
    if (c > (i64{1} << 40) || c < -(i64{1} << 40)) {
      throw Error(ErrorKind::InvalidArgument, "coefficients exceed 2^40");
    }
  }
  if (!squarefree_over_q(f_)) {
    throw Error(ErrorKind::InvalidArgument, "disc(f) = 0 for " + f_.to_string());
  }
}

bool HyperCurveQ::has_good_reduction(u64 p) const { return p != 2 && is_unramified(f_, p); }

std::string HyperCurveQ::to_string() const { return "y^2=" + f_.to_string(); }

PointCountsG2 g2_point_counts(const HyperCurveQ& curve, Prime prime) {
  const u64 p = prime.value();
  if (!curve.has_good_reduction(p)) {
    throw Error(ErrorKind::BadReduction, "bad reduction at p = " + std::to_string(p));
  }
  if (p >= (u64{1} << 31)) throw Error(ErrorKind::InvalidArgument, "p too large for O(p^2) counting");

  const QuadraticTable chi(p);
  const std::vector<u64> f = curve.f().reduce_mod(p);
  const int deg = curve.f().degree();
  const u64 lc = f.back();

  // F_p: affine points sum (1 + chi(f(x))).
  i64 sum1 = 0;
  for (u64 x = 0; x < p; ++x) {
    u64 acc = 0;
    for (int i = deg; i >= 0; --i) acc = (acc * x + f[static_cast<std::size_t>(i)]) % p;
    sum1 += chi(acc);
  }
  const i64 inf1 = deg == 5 ? 1 : 1 + chi(lc);

  // F_{p^2}: chi2(z) = chi(N(z)). f(conj x) = conj f(x), so rows b and p-b agree.
  const Fq fq = Fq::quadratic(prime);
  const u64 r = fq.nonresidue();
  i64 sum2 = 0;
  for (u64 a = 0; a < p; ++a) {
    u64 acc = 0;
    for (int i = deg; i >= 0; --i) acc = (acc * a + f[static_cast<std::size_t>(i)]) % p;
    sum2 += acc == 0 ? 0 : 1;  // F_p elements are squares in F_{p^2}
  }
  i64 half = 0;
  for (u64 b = 1; b <= (p - 1) / 2; ++b) {
    for (u64 a = 0; a < p; ++a) {
      u64 ua = 0, ub = 0;
      for (int i = deg; i >= 0; --i) {
        // (ua + ub w)(a + b w) + f_i
        const u64 na = (ua * a + (ub * b % p) * r + f[static_cast<std::size_t>(i)]) % p;
        const u64 nb = (ua * b + ub * a) % p;
        ua = na;
        ub = nb;
      }
      const u64 norm = (ua * ua + (p - (ub * ub % p)) * r) % p;
      half += chi(norm);
    }
  }
  sum2 += 2 * half;
  const i64 inf2 = deg == 5 ? 1 : 2;

  const i64 pp = static_cast<i64>(p);
  return {pp + sum1 + inf1, pp * pp + sum2 + inf2};
}

LocalFactorG2 g2_local_factor_from_counts(u64 p, PointCountsG2 counts) {
  const i64 pp = static_cast<i64>(p);
  const i64 s1 = pp + 1 - counts.n1;
  const i64 s2 = pp * pp + 1 - counts.n2;
  if (((s1 * s1 - s2) & 1) != 0) {
    throw Error(ErrorKind::Internal, "power sums inconsistent with integral L-polynomial");
  }
  LocalFactorG2 out;
  out.p = p;
  out.e1 = s1;
  out.e2 = (s1 * s1 - s2) / 2;

  // c = 2cos(theta) solves c^2 - (e1/sqrt p) c + (e2/p - 2) = 0.
  const double sp = std::sqrt(static_cast<double>(p));
  const double sum = static_cast<double>(out.e1) / sp;
  const double prod = static_cast<double>(out.e2) / static_cast<double>(p) - 2.0;
  double disc = sum * sum - 4.0 * prod;
  if (disc < 0.0) {
    if (disc < -kRootTolerance * std::max(1.0, sum * sum)) {
      throw Error(ErrorKind::Internal, "complex c-roots at p = " + std::to_string(p) + " violate Weil bounds");
    }
    disc = 0.0;
  }
  const double root = std::sqrt(disc);
  double c[2] = {(sum - root) / 2.0, (sum + root) / 2.0};
  double theta[2];
  for (int i = 0; i < 2; ++i) {
    if (std::abs(c[i]) > 2.0 + kRootTolerance * 4.0) {
      throw Error(ErrorKind::Internal, "|2cos(theta)| > 2 at p = " + std::to_string(p));
    }
    theta[i] = std::acos(std::clamp(c[i] / 2.0, -1.0, 1.0));
  }
  out.theta1 = std::min(theta[0], theta[1]);
  out.theta2 = std::max(theta[0], theta[1]);
  return out;
}

LocalFactorG2 g2_local_factor(const HyperCurveQ& curve, Prime p) {
  return g2_local_factor_from_counts(p.value(), g2_point_counts(curve, p));
}

std::vector<i64> LocalFactorG2::lpoly() const {
  const i64 pp = static_cast<i64>(p);
  return {1, -e1, e2, -pp * e1, pp * pp};
}

double LocalFactorG2::a1() const { return static_cast<double>(e1) / std::sqrt(static_cast<double>(p)); }

double LocalFactorG2::a2() const { return static_cast<double>(e2) / static_cast<double>(p); }

G2Scan g2_scan(const HyperCurveQ& curve, u64 bound, ScanOptions options) {
  if (bound < 3) throw Error(ErrorKind::InvalidArgument, "g2_scan needs bound >= 3");
  G2Scan scan;
  std::vector<Prime> good;
  for (Prime p : primes_up_to(bound)) {
    if (curve.has_good_reduction(p)) good.push_back(p);
    else scan.bad_primes.push_back(p);
  }
  scan.data = detail::ordered_map<LocalFactorG2>(
      good.size(), options.threads, [&](std::size_t i) { return g2_local_factor(curve, good[i]); });
  return scan;
}

ClassPoint to_class_point(const LocalFactorG2& factor) { return {0, factor.theta1, factor.theta2}; }

std::vector<ClassPoint> to_class_points(std::span<const LocalFactorG2> data) {
  std::vector<ClassPoint> out;
  out.reserve(data.size());
  for (const auto& d : data) out.push_back(to_class_point(d));
  return out;
}

}  // namespace satotate
