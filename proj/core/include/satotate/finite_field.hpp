#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace satotate {

using u64 = std::uint64_t;
using i64 = std::int64_t;
__extension__ using u128 = unsigned __int128;
__extension__ using i128 = __int128;

// ---------------------------------------------------------------------------
// Word-size modular arithmetic. Moduli are < 2^63; products go through
// unsigned __int128.

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

inline u64 add_mod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  return s >= m ? s - m : s;
}

inline u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

/// Canonical residue of a signed integer.
inline u64 reduce(i64 a, u64 m) {
  i64 r = a % static_cast<i64>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

u64 pow_mod(u64 base, u64 exp, u64 m);
/// Inverse of a modulo m; a must be a unit.
u64 inv_mod(u64 a, u64 m);
u64 isqrt(u64 n);

/// Deterministic Miller-Rabin; exact for every 64-bit input.
bool is_prime(u64 n);

/// A rational prime. Construction checks primality.
class Prime {
 public:
  explicit Prime(u64 value);
  u64 value() const noexcept { return value_; }
  operator u64() const noexcept { return value_; }
  friend bool operator==(Prime, Prime) = default;
  friend auto operator<=>(Prime, Prime) = default;

 private:
  struct Unchecked {};
  Prime(u64 value, Unchecked) : value_(value) {}
  friend std::vector<Prime> primes_up_to(u64 bound);
  friend std::vector<Prime> primes_in_range(u64 lo, u64 hi);
  u64 value_;
};

/// All primes <= bound in ascending order (segmented sieve).
std::vector<Prime> primes_up_to(u64 bound);
/// All primes in [lo, hi].
std::vector<Prime> primes_in_range(u64 lo, u64 hi);

/// Decomposes q = p^m; returns {p, m}, or {0, 0} if q is not a prime power.
struct PrimePower {
  u64 p = 0;
  unsigned exponent = 0;
};
PrimePower prime_power_decompose(u64 q);

/// Legendre symbol (a/p) for odd prime p, via the binary Jacobi algorithm.
int legendre(u64 a, u64 p);

/// Square root modulo an odd prime (Tonelli-Shanks); a must be a square.
u64 sqrt_mod(u64 a, u64 p);

// ---------------------------------------------------------------------------
// F_p and F_{p^2}

/// Element a + b*w of F_{p^2}, w^2 = nonresidue.
struct Fp2Elem {
  u64 a = 0;
  u64 b = 0;
  friend bool operator==(const Fp2Elem&, const Fp2Elem&) = default;
};

/// The field F_q with q = p (degree 1) or q = p^2 (degree 2).
class Fq {
 public:
  static Fq prime_field(Prime p);
  /// F_{p^2} = F_p[w]/(w^2 - r) with r the smallest positive non-residue.
  static Fq quadratic(Prime p);

  Prime p() const noexcept { return p_; }
  int degree() const noexcept { return degree_; }
  u64 nonresidue() const noexcept { return nonresidue_; }
  u64 order() const noexcept { return degree_ == 1 ? p_.value() : p_.value() * p_.value(); }

  Fp2Elem add(Fp2Elem x, Fp2Elem y) const;
  Fp2Elem sub(Fp2Elem x, Fp2Elem y) const;
  Fp2Elem mul(Fp2Elem x, Fp2Elem y) const;
  Fp2Elem pow(Fp2Elem x, u64 e) const;
  Fp2Elem embed(i64 a) const { return {reduce(a, p_.value()), 0}; }
  /// Norm to F_p: x * x^p = a^2 - r b^2.
  u64 norm(Fp2Elem x) const;

 private:
  Fq(Prime p, int degree, u64 nonresidue) : p_(p), degree_(degree), nonresidue_(nonresidue) {}
  Prime p_;
  int degree_;
  u64 nonresidue_;
};

/// Quadratic character of an integer in F_q (degree 1 or 2). Rejects p = 2.
int quadratic_character(i64 a, const Fq& q);
/// Quadratic character of an F_{p^2} element (q must have degree 2).
int quadratic_character(Fp2Elem a, const Fq& q);

/// Precomputed quadratic character table for one odd prime; O(p) memory.
class QuadraticTable {
 public:
  explicit QuadraticTable(u64 p);
  int operator()(u64 residue) const { return table_[residue]; }
  u64 p() const noexcept { return p_; }

 private:
  u64 p_;
  std::vector<std::int8_t> table_;
};

// ---------------------------------------------------------------------------
// Integer polynomials

/// Dense integer polynomial, coefficients in ascending degree. The zero
/// polynomial has no coefficients.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<i64> coefficients);

  /// Parses expressions like "x^3 - 2", "2*x^6+x+1", "x5 + x + 1".
  static IntPoly parse(std::string_view text);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const i64> coefficients() const noexcept { return coeffs_; }
  i64 operator[](int i) const { return i <= degree() ? coeffs_[static_cast<std::size_t>(i)] : 0; }
  i64 leading() const { return coeffs_.back(); }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// f(x) mod p by Horner.
  u64 eval_mod(u64 x, u64 p) const;
  /// Reduction mod p as a vector of residues (may have trailing zeros).
  std::vector<u64> reduce_mod(u64 p) const;

  std::string to_string() const;
  friend bool operator==(const IntPoly&, const IntPoly&) = default;

 private:
  std::vector<i64> coeffs_;
};

/// True when p divides neither the leading coefficient nor disc(f), i.e.
/// f mod p keeps its degree and is squarefree.
bool is_unramified(const IntPoly& f, u64 p);

/// Degrees of the irreducible factors of f mod p, ascending. Throws
/// Error(RamifiedOrDegenerate) when p divides lc(f) or disc(f).
std::vector<int> ddf_pattern(const IntPoly& f, Prime p);

}  // namespace satotate
