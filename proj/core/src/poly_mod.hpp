#pragma once

#include <vector>

#include "satotate/finite_field.hpp"

// Dense polynomials over F_p, ascending coefficients, normalized so the
// zero polynomial is empty. Internal to the library.
namespace satotate::detail {

using PolyP = std::vector<u64>;

void trim(PolyP& f);
int degree(const PolyP& f);
PolyP sub(const PolyP& f, const PolyP& g, u64 p);
PolyP derivative(const PolyP& f, u64 p);
/// Remainder of f modulo monic-or-not g (g nonzero).
PolyP rem(PolyP f, const PolyP& g, u64 p);
/// Quotient f / g; g must divide f exactly or the remainder is discarded.
PolyP quot(const PolyP& f, const PolyP& g, u64 p);
PolyP mul_rem(const PolyP& f, const PolyP& g, const PolyP& modulus, u64 p);
PolyP pow_rem(PolyP base, u64 exp, const PolyP& modulus, u64 p);
/// Monic gcd.
PolyP gcd(PolyP f, PolyP g, u64 p);

}  // namespace satotate::detail
