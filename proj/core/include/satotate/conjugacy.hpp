#pragma once

#include <cstdint>

namespace satotate {

/// A point of Conj(G) for one of the catalog groups.
///
/// `component` selects the connected component (or, for finite groups, the
/// element). For genus-1 groups `theta1` is the eigenangle of the 2x2 unitary
/// representative (eigenvalues e^{+-i theta1}); for genus-2 groups the pair
/// (theta1, theta2) gives the eigenvalues e^{+-i theta1}, e^{+-i theta2}.
/// Angles of U(1) factors live in [0, 2pi); all others in [0, pi].
struct ClassPoint {
  std::uint32_t component = 0;
  double theta1 = 0.0;
  double theta2 = 0.0;
};

}  // namespace satotate
