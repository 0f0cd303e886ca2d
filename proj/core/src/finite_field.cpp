#include "satotate/finite_field.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "satotate/error.hpp"

namespace satotate {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::BadReduction: return "bad-reduction";
    case ErrorKind::RamifiedOrDegenerate: return "ramified-or-degenerate";
    case ErrorKind::NotWeil: return "not-weil";
    case ErrorKind::DivergenceGuard: return "divergence-guard";
    case ErrorKind::InvalidCmType: return "invalid-cm-type";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Internal: return "internal-error";
  }
  return "unknown";
}

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

u64 inv_mod(u64 a, u64 m) {
  i64 t = 0, new_t = 1;
  i64 r = static_cast<i64>(m), new_r = static_cast<i64>(a % m);
  while (new_r != 0) {
    i64 q = r / new_r;
    i64 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw Error(ErrorKind::InvalidArgument, "inv_mod: argument is not a unit");
  return reduce(t, m);
}

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr std::array<u64, 12> small{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 q : small) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // These twelve bases are a deterministic witness set below 3.3e24.
  for (u64 a : small) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Prime::Prime(u64 value) : value_(value) {
  if (!is_prime(value)) {
    throw Error(ErrorKind::InvalidArgument, std::to_string(value) + " is not prime");
  }
}

std::vector<Prime> primes_in_range(u64 lo, u64 hi) {
  std::vector<Prime> out;
  if (hi < 2 || lo > hi) return out;
  lo = std::max<u64>(lo, 2);

  const u64 root = isqrt(hi);
  std::vector<u64> base;
  {
    std::vector<bool> composite(root + 1, false);
    for (u64 i = 2; i <= root; ++i) {
      if (composite[i]) continue;
      base.push_back(i);
      for (u64 j = i * i; j <= root; j += i) composite[j] = true;
    }
  }

  constexpr u64 kSegment = u64{1} << 18;
  std::vector<char> marked(kSegment);
  for (u64 start = lo; start <= hi; start += kSegment) {
    const u64 end = std::min(hi, start + kSegment - 1);
    std::fill(marked.begin(), marked.end(), 0);
    for (u64 q : base) {
      if (q * q > end) break;
      u64 first = std::max(q * q, (start + q - 1) / q * q);
      for (u64 j = first; j <= end; j += q) marked[j - start] = 1;
    }
    for (u64 n = start; n <= end; ++n) {
      if (!marked[n - start]) out.push_back(Prime(n, Prime::Unchecked{}));
    }
    if (end == hi) break;
  }
  return out;
}

std::vector<Prime> primes_up_to(u64 bound) { return primes_in_range(2, bound); }

PrimePower prime_power_decompose(u64 q) {
  if (q < 2) return {};
  u64 p = 0;
  for (u64 d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return {q, 1};
  unsigned m = 0;
  while (q % p == 0) {
    q /= p;
    ++m;
  }
  if (q != 1) return {};
  return {p, m};
}

int legendre(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  int result = 1;
  u64 n = p;
  while (a != 0) {
    int twos = std::countr_zero(a);
    a >>= twos;
    if ((twos & 1) && ((n & 7U) == 3 || (n & 7U) == 5)) result = -result;
    if ((a & 3U) == 3 && (n & 3U) == 3) result = -result;
    std::swap(a, n);
    a %= n;
  }
  return n == 1 ? result : 0;
}

u64 sqrt_mod(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  if (p % 4 == 3) return pow_mod(a, (p + 1) / 4, p);
  u64 q = p - 1;
  int s = 0;
  while ((q & 1U) == 0) {
    q >>= 1U;
    ++s;
  }
  u64 z = 2;
  while (legendre(z, p) != -1) ++z;
  u64 m = static_cast<u64>(s);
  u64 c = pow_mod(z, q, p);
  u64 t = pow_mod(a, q, p);
  u64 r = pow_mod(a, (q + 1) / 2, p);
  while (t != 1) {
    u64 i = 0;
    u64 t2 = t;
    while (t2 != 1) {
      t2 = mul_mod(t2, t2, p);
      ++i;
      if (i == m) throw Error(ErrorKind::InvalidArgument, "sqrt_mod: argument is not a square");
    }
    u64 b = c;
    for (u64 j = 0; j + i + 1 < m; ++j) b = mul_mod(b, b, p);
    m = i;
    c = mul_mod(b, b, p);
    t = mul_mod(t, c, p);
    r = mul_mod(r, b, p);
  }
  return r;
}

// ---------------------------------------------------------------------------

Fq Fq::prime_field(Prime p) { return Fq(p, 1, 0); }

Fq Fq::quadratic(Prime p) {
  if (p.value() == 2) throw Error(ErrorKind::InvalidArgument, "F_{p^2} requires odd p");
  u64 r = 2;
  while (legendre(r, p) != -1) ++r;
  return Fq(p, 2, r);
}

Fp2Elem Fq::add(Fp2Elem x, Fp2Elem y) const {
  const u64 p = p_.value();
  return {add_mod(x.a, y.a, p), add_mod(x.b, y.b, p)};
}

Fp2Elem Fq::sub(Fp2Elem x, Fp2Elem y) const {
  const u64 p = p_.value();
  return {sub_mod(x.a, y.a, p), sub_mod(x.b, y.b, p)};
}

Fp2Elem Fq::mul(Fp2Elem x, Fp2Elem y) const {
  const u64 p = p_.value();
  // p < 2^31 keeps every partial product inside 64 bits; fall back otherwise.
  if (p < (u64{1} << 31)) {
    u64 aa = x.a * y.a % p;
    u64 bb = x.b * y.b % p;
    u64 ab = (x.a * y.b + x.b * y.a) % p;
    return {(aa + nonresidue_ * bb) % p, ab};
  }
  u64 aa = mul_mod(x.a, y.a, p);
  u64 bb = mul_mod(mul_mod(x.b, y.b, p), nonresidue_, p);
  u64 ab = add_mod(mul_mod(x.a, y.b, p), mul_mod(x.b, y.a, p), p);
  return {add_mod(aa, bb, p), ab};
}

Fp2Elem Fq::pow(Fp2Elem x, u64 e) const {
  Fp2Elem result{1 % p_.value(), 0};
  while (e != 0) {
    if (e & 1U) result = mul(result, x);
    x = mul(x, x);
    e >>= 1U;
  }
  return result;
}

u64 Fq::norm(Fp2Elem x) const {
  const u64 p = p_.value();
  return sub_mod(mul_mod(x.a, x.a, p), mul_mod(nonresidue_, mul_mod(x.b, x.b, p), p), p);
}

int quadratic_character(i64 a, const Fq& q) {
  const u64 p = q.p().value();
  if (p == 2) throw Error(ErrorKind::InvalidArgument, "quadratic character needs odd p");
  const u64 r = reduce(a, p);
  if (r == 0) return 0;
  // Every element of F_p is a square in F_{p^2}.
  if (q.degree() == 2) return 1;
  return legendre(r, p);
}

int quadratic_character(Fp2Elem a, const Fq& q) {
  const u64 p = q.p().value();
  if (p == 2) throw Error(ErrorKind::InvalidArgument, "quadratic character needs odd p");
  if (q.degree() != 2) {
    if (a.b != 0) throw Error(ErrorKind::InvalidArgument, "element not in F_p");
    return quadratic_character(static_cast<i64>(a.a), q);
  }
  // a^((p^2-1)/2) = N(a)^((p-1)/2).
  return legendre(q.norm(a), p);
}

QuadraticTable::QuadraticTable(u64 p) : p_(p), table_(p, -1) {
  if (p == 2) throw Error(ErrorKind::InvalidArgument, "quadratic table needs odd p");
  table_[0] = 0;
  u64 sq = 0;
  // (x+1)^2 = x^2 + 2x + 1
  for (u64 x = 0; x <= (p - 1) / 2; ++x) {
    if (x != 0) table_[sq] = 1;
    sq += 2 * x + 1;
    if (sq >= p) sq %= p;
  }
}

// ---------------------------------------------------------------------------

IntPoly::IntPoly(std::vector<i64> coefficients) : coeffs_(std::move(coefficients)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

namespace {

[[noreturn]] void parse_fail(std::string_view text, const std::string& why) {
  throw Error(ErrorKind::InvalidArgument,
              "cannot parse polynomial '" + std::string(text) + "': " + why);
}

}  // namespace

IntPoly IntPoly::parse(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) parse_fail(text, "empty");

  std::vector<i64> coeffs;
  std::size_t i = 0;
  bool first = true;
  while (i < s.size()) {
    i64 sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      parse_fail(text, "expected '+' or '-'");
    }
    first = false;

    bool has_number = false;
    i64 coef = 1;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + s.size(), coef);
      if (ec != std::errc{}) parse_fail(text, "bad coefficient");
      i = static_cast<std::size_t>(ptr - s.data());
      has_number = true;
    }
    int power = 0;
    if (i < s.size() && s[i] == '*') {
      if (!has_number) parse_fail(text, "dangling '*'");
      ++i;
    }
    if (i < s.size() && (s[i] == 'x' || s[i] == 'X')) {
      ++i;
      power = 1;
      if (i < s.size() && (s[i] == '^' || std::isdigit(static_cast<unsigned char>(s[i])))) {
        if (s[i] == '^') ++i;
        auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + s.size(), power);
        if (ec != std::errc{} || power < 0) parse_fail(text, "bad exponent");
        i = static_cast<std::size_t>(ptr - s.data());
      }
    } else if (!has_number) {
      parse_fail(text, "expected a term");
    }
    if (power > 64) parse_fail(text, "degree too large");
    if (coeffs.size() <= static_cast<std::size_t>(power)) coeffs.resize(static_cast<std::size_t>(power) + 1, 0);
    coeffs[static_cast<std::size_t>(power)] += sign * coef;
  }
  IntPoly f(std::move(coeffs));
  if (f.is_zero()) parse_fail(text, "zero polynomial");
  return f;
}

u64 IntPoly::eval_mod(u64 x, u64 p) const {
  u64 acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = add_mod(mul_mod(acc, x, p), reduce(*it, p), p);
  }
  return acc;
}

std::vector<u64> IntPoly::reduce_mod(u64 p) const {
  std::vector<u64> out(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] = reduce(coeffs_[i], p);
  return out;
}

std::string IntPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int d = degree(); d >= 0; --d) {
    i64 c = coeffs_[static_cast<std::size_t>(d)];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? "-" : "+");
    else if (c < 0) os << "-";
    i64 mag = c < 0 ? -c : c;
    if (mag != 1 || d == 0) os << mag;
    if (d >= 1) os << "x";
    if (d >= 2) os << "^" << d;
    first = false;
  }
  return os.str();
}

}  // namespace satotate
