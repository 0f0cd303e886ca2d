#pragma once

#include <complex>
#include <span>
#include <vector>

#include "satotate/frobenius.hpp"
#include "satotate/st_groups.hpp"

namespace satotate {

/// A Frobenius class tagged with the prime it belongs to.
struct LabeledClass {
  u64 p = 0;
  ClassPoint x;
};

std::vector<LabeledClass> label_classes(std::span<const TraceDatum> data);
std::vector<LabeledClass> label_classes(std::span<const LocalFactorG2> data);
/// The identity class at every prime <= bound (the Riemann zeta data).
std::vector<LabeledClass> identity_classes(u64 bound);

struct EulerEval {
  double s = 0.0;
  u64 bound = 0;
  std::complex<double> log_value;  // log of the partial product
  std::size_t terms_used = 0;
};

/// Smallest |det(1 - rho(x_p) p^{-s})| accepted before DivergenceGuard.
inline constexpr double kDeterminantFloor = 1e-12;

/// log prod_{p <= bound} det(1 - rho(x_p) p^{-s})^{-1}, summed in ascending p.
/// Requires s > 1 (InvalidArgument otherwise).
EulerEval partial_euler(std::span<const LabeledClass> samples, const IrrepSpec& irrep, double s, u64 bound);

/// Same for the direct sum of several representations.
EulerEval partial_euler(std::span<const LabeledClass> samples, std::span<const IrrepSpec> irreps, double s, u64 bound);

/// F(s) = -sum_{p <= bound} chi(x_p) log(p) / p^s.
std::complex<double> dirichlet_F(std::span<const LabeledClass> samples, const IrrepSpec& irrep, double s, u64 bound);

/// The grid s = 1 + 2^{-j}, j = 1..8, used to approach s = 1.
std::vector<double> approach_grid();

struct ChiProfile {
  std::vector<std::pair<u64, double>> points;  // (n, Re S(n) log n / n)
  /// Least-squares slope of log|profile| against log n. Heuristic only.
  double trend_slope = 0.0;
};

/// S(n) = sum_{p <= n} chi(x_p) at checkpoints n = 10^{j/4}, plus the last p.
ChiProfile chi_sum_profile(std::span<const LabeledClass> samples, const IrrepSpec& irrep);

}  // namespace satotate
