#include <cmath>
#include <numbers>

#include "satotate/error.hpp"
#include "satotate/frobenius.hpp"

namespace satotate {

bool is_ordinary(u64 q, i64 a_q) {
  const PrimePower pp = prime_power_decompose(q);
  if (pp.p == 0) throw Error(ErrorKind::InvalidArgument, std::to_string(q) + " is not a prime power");
  return reduce(a_q, pp.p) != 0;
}

PowerSeq power_sequence(u64 q, i64 a_q, u64 count) {
  if (prime_power_decompose(q).p == 0) {
    throw Error(ErrorKind::InvalidArgument, std::to_string(q) + " is not a prime power");
  }
  if (count < 1) throw Error(ErrorKind::InvalidArgument, "power_sequence needs N >= 1");
  const i128 disc = 4 * static_cast<i128>(q) - static_cast<i128>(a_q) * a_q;
  if (disc < 0) throw Error(ErrorKind::NotWeil, "a_q^2 > 4q");

  PowerSeq seq;
  seq.q = q;
  seq.a_q = a_q;
  seq.alpha = {static_cast<double>(a_q) / 2.0, std::sqrt(static_cast<double>(disc)) / 2.0};
  const double arg = std::arg(seq.alpha);
  constexpr double two_pi = 2.0 * std::numbers::pi;

  seq.terms.reserve(count);
  seq.angles.reserve(count);
  for (u64 n = 1; n <= count; ++n) {
    // n * arg in one multiplication: error n * ulp(arg), no accumulated drift.
    double angle = std::fmod(static_cast<double>(n) * arg, two_pi);
    if (angle < 0.0) angle += two_pi;
    seq.angles.push_back(angle);
    seq.terms.push_back(2.0 * std::cos(angle));
  }
  return seq;
}

std::vector<ClassPoint> to_class_points(const PowerSeq& seq) {
  std::vector<ClassPoint> out;
  out.reserve(seq.angles.size());
  for (double a : seq.angles) out.push_back({0, a, 0.0});
  return out;
}

}  // namespace satotate
