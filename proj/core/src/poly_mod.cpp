#include "poly_mod.hpp"

#include <algorithm>

#include "satotate/error.hpp"

namespace satotate::detail {

void trim(PolyP& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const PolyP& f) { return static_cast<int>(f.size()) - 1; }

PolyP sub(const PolyP& f, const PolyP& g, u64 p) {
  PolyP out(std::max(f.size(), g.size()), 0);
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i];
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = sub_mod(out[i], g[i], p);
  trim(out);
  return out;
}

PolyP derivative(const PolyP& f, u64 p) {
  if (f.size() <= 1) return {};
  PolyP out(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) out[i - 1] = mul_mod(f[i], i % p, p);
  trim(out);
  return out;
}

namespace {

// In-place division; leaves the remainder in f and returns the quotient.
PolyP divide(PolyP& f, const PolyP& g, u64 p) {
  if (g.empty()) throw Error(ErrorKind::Internal, "polynomial division by zero");
  trim(f);
  const int dg = degree(g);
  if (degree(f) < dg) return {};
  const u64 lead_inv = inv_mod(g.back(), p);
  PolyP q(static_cast<std::size_t>(degree(f) - dg + 1), 0);
  for (int i = degree(f); i >= dg; --i) {
    const u64 c = mul_mod(f[static_cast<std::size_t>(i)], lead_inv, p);
    q[static_cast<std::size_t>(i - dg)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= dg; ++j) {
      auto& slot = f[static_cast<std::size_t>(i - dg + j)];
      slot = sub_mod(slot, mul_mod(c, g[static_cast<std::size_t>(j)], p), p);
    }
  }
  trim(f);
  return q;
}

}  // namespace

PolyP rem(PolyP f, const PolyP& g, u64 p) {
  divide(f, g, p);
  return f;
}

PolyP quot(const PolyP& f, const PolyP& g, u64 p) {
  PolyP r = f;
  PolyP q = divide(r, g, p);
  trim(q);
  return q;
}

PolyP mul_rem(const PolyP& f, const PolyP& g, const PolyP& modulus, u64 p) {
  if (f.empty() || g.empty()) return {};
  PolyP prod(f.size() + g.size() - 1, 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    for (std::size_t j = 0; j < g.size(); ++j) {
      prod[i + j] = add_mod(prod[i + j], mul_mod(f[i], g[j], p), p);
    }
  }
  return rem(std::move(prod), modulus, p);
}

PolyP pow_rem(PolyP base, u64 exp, const PolyP& modulus, u64 p) {
  PolyP result{1};
  result = rem(result, modulus, p);
  base = rem(std::move(base), modulus, p);
  while (exp != 0) {
    if (exp & 1U) result = mul_rem(result, base, modulus, p);
    exp >>= 1U;
    if (exp != 0) base = mul_rem(base, base, modulus, p);
  }
  return result;
}

PolyP gcd(PolyP f, PolyP g, u64 p) {
  trim(f);
  trim(g);
  while (!g.empty()) {
    PolyP r = rem(f, g, p);
    f = std::move(g);
    g = std::move(r);
  }
  if (!f.empty()) {
    const u64 inv = inv_mod(f.back(), p);
    for (auto& c : f) c = mul_mod(c, inv, p);
  }
  return f;
}

}  // namespace satotate::detail

namespace satotate {

bool is_unramified(const IntPoly& f, u64 p) {
  if (f.degree() < 1) return false;
  if (reduce(f.leading(), p) == 0) return false;
  detail::PolyP fp = f.reduce_mod(p);
  detail::trim(fp);
  detail::PolyP g = detail::gcd(fp, detail::derivative(fp, p), p);
  return detail::degree(g) == 0;
}

std::vector<int> ddf_pattern(const IntPoly& f, Prime prime) {
  const u64 p = prime.value();
  if (!is_unramified(f, p)) {
    throw Error(ErrorKind::RamifiedOrDegenerate,
                "p = " + std::to_string(p) + " divides lc or disc of " + f.to_string());
  }
  detail::PolyP rest = f.reduce_mod(p);
  detail::trim(rest);
  const detail::PolyP x{0, 1};

  std::vector<int> pattern;
  detail::PolyP h = detail::rem(x, rest, p);  // x^(p^d) mod rest
  for (int d = 1; 2 * d <= detail::degree(rest); ++d) {
    h = detail::pow_rem(h, p, rest, p);
    detail::PolyP g = detail::gcd(rest, detail::sub(h, x, p), p);
    const int dg = detail::degree(g);
    if (dg > 0) {
      for (int k = 0; k < dg / d; ++k) pattern.push_back(d);
      rest = detail::quot(rest, g, p);
      h = detail::rem(h, rest, p);
    }
  }
  if (detail::degree(rest) > 0) pattern.push_back(detail::degree(rest));
  std::sort(pattern.begin(), pattern.end());
  return pattern;
}

}  // namespace satotate
