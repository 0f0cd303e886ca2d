#pragma once

#include <complex>
#include <span>
#include <vector>

#include "satotate/conjugacy.hpp"
#include "satotate/finite_field.hpp"

namespace satotate {

// ---------------------------------------------------------------------------
// Elliptic curves y^2 = x^3 + a x + b over Q

class EllipticCurveQ {
 public:
  /// Throws InvalidArgument when 4a^3 + 27b^2 = 0.
  EllipticCurveQ(i64 a, i64 b);

  i64 a() const noexcept { return a_; }
  i64 b() const noexcept { return b_; }

  /// p odd and p does not divide 4a^3 + 27b^2.
  bool has_good_reduction(u64 p) const;
  std::string to_string() const;

 private:
  i64 a_;
  i64 b_;
};

struct TraceDatum {
  u64 p = 0;
  i64 a_p = 0;
  double normalized = 0.0;  // a_p / sqrt(p), in [-2, 2]
};

/// a_p = p + 1 - #E(F_p). Uses the character-sum count for small p and a
/// baby-step giant-step group-order search otherwise; both give the same
/// integer. Throws BadReduction for p = 2 or p | disc.
i64 ec_trace(const EllipticCurveQ& curve, Prime p);

/// Reference count: a_p = -sum_x chi(x^3 + a x + b).
i64 ec_trace_charsum(const EllipticCurveQ& curve, Prime p);

/// Mestre-style baby-step giant-step on E and its quadratic twist. Falls back
/// to the character sum below p = 1000 where Hasse-interval ambiguity is
/// possible.
i64 ec_trace_bsgs(const EllipticCurveQ& curve, Prime p);

struct ScanOptions {
  unsigned threads = 1;
};

struct EcScan {
  std::vector<TraceDatum> data;   // ascending p
  std::vector<u64> bad_primes;    // skipped primes (including 2)
};

EcScan ec_scan(const EllipticCurveQ& curve, u64 bound, ScanOptions options = {});

/// Eigenangle of a normalized trace: theta = acos(t/2) in [0, pi].
ClassPoint to_class_point(const TraceDatum& datum);
std::vector<ClassPoint> to_class_points(std::span<const TraceDatum> data);

// ---------------------------------------------------------------------------
// Genus-2 curves y^2 = f(x), deg f in {5, 6}

class HyperCurveQ {
 public:
  /// Throws InvalidArgument unless deg f is 5 or 6 and f is squarefree.
  explicit HyperCurveQ(IntPoly f);

  const IntPoly& f() const noexcept { return f_; }
  /// p odd, f mod p squarefree and of full degree.
  bool has_good_reduction(u64 p) const;
  std::string to_string() const;

 private:
  IntPoly f_;
};

struct PointCountsG2 {
  i64 n1 = 0;  // #C(F_p)
  i64 n2 = 0;  // #C(F_{p^2})
};

/// Smooth-model point counts by quadratic-character sums. Costs O(p^2).
PointCountsG2 g2_point_counts(const HyperCurveQ& curve, Prime p);

/// Local factor L_p(T) = 1 - e1 T + e2 T^2 - p e1 T^3 + p^2 T^4 and its
/// normalized eigenangles, canonically ordered theta1 <= theta2.
struct LocalFactorG2 {
  u64 p = 0;
  i64 e1 = 0;
  i64 e2 = 0;
  double theta1 = 0.0;
  double theta2 = 0.0;

  /// Coefficients of L_p(T), ascending.
  std::vector<i64> lpoly() const;
  /// Normalized a1 = e1 / sqrt(p) = 2cos(theta1) + 2cos(theta2).
  double a1() const;
  /// Normalized a2 = e2 / p = 2 + 4cos(theta1)cos(theta2).
  double a2() const;
};

LocalFactorG2 g2_local_factor(const HyperCurveQ& curve, Prime p);
/// Builds the local factor from counts; exposed for tests.
LocalFactorG2 g2_local_factor_from_counts(u64 p, PointCountsG2 counts);

struct G2Scan {
  std::vector<LocalFactorG2> data;
  std::vector<u64> bad_primes;
};

G2Scan g2_scan(const HyperCurveQ& curve, u64 bound, ScanOptions options = {});

ClassPoint to_class_point(const LocalFactorG2& factor);
std::vector<ClassPoint> to_class_points(std::span<const LocalFactorG2> data);

// ---------------------------------------------------------------------------
// Powers of a fixed Frobenius over F_q

struct PowerSeq {
  u64 q = 0;
  i64 a_q = 0;
  std::complex<double> alpha;
  std::vector<double> terms;   // terms[n-1] = normalized a_{q^n}, n = 1..N
  std::vector<double> angles;  // n * arg(alpha) reduced to [0, 2pi)
};

/// Throws NotWeil when a_q^2 > 4q, InvalidArgument when q is not a prime
/// power or N < 1. Terms are computed from the accumulated angle, so the
/// error grows like n * ulp(arg alpha) instead of overflowing.
PowerSeq power_sequence(u64 q, i64 a_q, u64 count);

/// True iff p does not divide a_q, where q = p^m.
bool is_ordinary(u64 q, i64 a_q);

/// U(1) class points {0, angle_n, 0} for the sequence.
std::vector<ClassPoint> to_class_points(const PowerSeq& seq);

}  // namespace satotate
