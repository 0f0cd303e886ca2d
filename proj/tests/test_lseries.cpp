#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "satotate/equidist.hpp"
#include "satotate/error.hpp"
#include "satotate/lseries.hpp"

using namespace satotate;

namespace {

// log of prod_p prod_j (1 - e^{i(m-2j)theta_p} p^{-s})^{-1}, product formed
// prime by prime in complex arithmetic.
std::complex<double> naive_sym_log(const std::vector<TraceDatum>& data, int m, double s) {
  std::complex<double> total = 0.0;
  for (const auto& d : data) {
    const double theta = std::acos(std::clamp(d.normalized / 2, -1.0, 1.0));
    const double ps = std::pow(static_cast<double>(d.p), -s);
    std::complex<double> det = 1.0;
    for (int j = 0; j <= m; ++j) det *= 1.0 - std::polar(1.0, (m - 2 * j) * theta) * ps;
    total -= std::log(det);
  }
  return total;
}

}  // namespace

TEST(PartialEuler, MatchesNaiveProduct) {
  const auto scan = ec_scan(EllipticCurveQ(1, 1), 1000);
  const auto classes = label_classes(scan.data);
  for (int m : {1, 2, 3, 5}) {
    for (double s : {1.1, 1.5, 2.0, 3.0}) {
      const auto ev = partial_euler(classes, IrrepSpec::sym(m), s, 1000);
      const auto ref = naive_sym_log(scan.data, m, s);
      EXPECT_NEAR(ev.log_value.real(), ref.real(), 1e-9) << m << " " << s;
      EXPECT_NEAR(ev.log_value.imag(), 0.0, 1e-9);
      EXPECT_EQ(ev.terms_used, scan.data.size());
    }
  }
}

TEST(PartialEuler, BoundTruncates) {
  const auto classes = identity_classes(1000);
  const auto full = partial_euler(classes, IrrepSpec::sym(0), 2.0, 1000);
  const auto part = partial_euler(classes, IrrepSpec::sym(0), 2.0, 100);
  EXPECT_EQ(part.terms_used, 25u);
  EXPECT_LT(part.log_value.real(), full.log_value.real());
}

TEST(PartialEuler, ZetaConvergesFromBelow) {
  const double log_zeta2 = std::log(std::numbers::pi * std::numbers::pi / 6);
  const auto classes = identity_classes(100000);
  const auto ev = partial_euler(classes, IrrepSpec::sym(0), 2.0, 100000);
  const double gap = log_zeta2 - ev.log_value.real();
  EXPECT_GE(gap, 0.0);
  EXPECT_LE(gap, std::log1p(1e-5));
}

TEST(PartialEuler, DirectSumIsAdditive) {
  const auto scan = ec_scan(EllipticCurveQ(-2, 3), 5000);
  const auto classes = label_classes(scan.data);
  const std::vector<IrrepSpec> sum = {IrrepSpec::sym(1), IrrepSpec::sym(2), IrrepSpec::sym(4)};
  for (double s : {1.25, 2.0}) {
    std::complex<double> separate = 0.0;
    for (const auto& r : sum) separate += partial_euler(classes, r, s, 5000).log_value;
    EXPECT_NEAR(std::abs(partial_euler(classes, sum, s, 5000).log_value - separate), 0.0, 1e-10);
  }
}

TEST(PartialEuler, RejectsHalfPlaneBoundary) {
  const auto classes = identity_classes(100);
  EXPECT_THROW(partial_euler(classes, IrrepSpec::sym(0), 1.0, 100), Error);
  EXPECT_THROW(partial_euler(classes, IrrepSpec::sym(0), 0.5, 100), Error);
  const auto empty = partial_euler(std::span<const LabeledClass>{}, IrrepSpec::sym(0), 2.0, 100);
  EXPECT_EQ(empty.log_value, 0.0);
  EXPECT_EQ(empty.terms_used, 0u);
}

TEST(PartialEuler, DivergenceGuard) {
  // a huge power of the identity pushes det(1 - rho p^{-s}) toward zero
  const std::vector<LabeledClass> classes = {{2, ClassPoint{0, 0.0, 0.0}}, {3, ClassPoint{0, 0.0, 0.0}}};
  try {
    partial_euler(classes, IrrepSpec::sym(60), 1.0001, 3);
    FAIL() << "expected a divergence guard";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DivergenceGuard);
    EXPECT_FALSE(e.is_validation());
  }
}

TEST(DirichletF, TrivialGrowsNearOne) {
  const auto classes = identity_classes(1000000);
  double previous = 0.0;
  for (double s : approach_grid()) {
    const double f = dirichlet_F(classes, IrrepSpec::sym(0), s, 1000000).real();
    EXPECT_LT(f, previous);
    previous = f;
  }
  // -sum log p / p^s behaves like -1/(s-1)
  const double f = dirichlet_F(classes, IrrepSpec::sym(0), 1.25, 1000000).real();
  EXPECT_NEAR(f * 0.25, -1.0, 0.35);
}

TEST(DirichletF, NontrivialStaysBounded) {
  const auto scan = ec_scan(EllipticCurveQ(1, 1), 100000);
  const auto classes = label_classes(scan.data);
  const auto grid = approach_grid();
  ASSERT_EQ(grid.size(), 8u);
  EXPECT_DOUBLE_EQ(grid.front(), 1.5);
  EXPECT_DOUBLE_EQ(grid.back(), 1 + 1.0 / 256);
  for (double s : grid) {
    EXPECT_LT(std::abs(dirichlet_F(classes, IrrepSpec::sym(1), s, 100000)), 5.0) << s;
    EXPECT_LT(std::abs(dirichlet_F(classes, IrrepSpec::sym(2), s, 100000)), 5.0) << s;
  }
}

TEST(ChiProfile, TrivialTendsToOne) {
  const auto classes = identity_classes(1000000);
  const auto profile = chi_sum_profile(classes, IrrepSpec::sym(0));
  ASSERT_FALSE(profile.points.empty());
  EXPECT_NEAR(profile.points.back().second, 1.0, 0.1);
  EXPECT_EQ(profile.points.back().first, 999983u);
  for (std::size_t i = 1; i < profile.points.size(); ++i) EXPECT_LT(profile.points[i - 1].first, profile.points[i].first);
}

TEST(ChiProfile, ZeroCharacterGivesZeroProfile) {
  const auto scan = ec_scan(EllipticCurveQ(-1, 0), 100000);
  const auto supersingular = hybrid_filter(scan.data, 4, 3);
  const auto classes = label_classes(supersingular);
  for (const auto& [n, v] : chi_sum_profile(classes, IrrepSpec::sym(1)).points) EXPECT_NEAR(v, 0.0, 1e-9) << n;
}

TEST(ChiProfile, NontrivialDecays) {
  const auto classes = label_classes(ec_scan(EllipticCurveQ(1, 1), 1000000).data);
  const auto profile = chi_sum_profile(classes, IrrepSpec::sym(1));
  EXPECT_LT(std::abs(profile.points.back().second), 0.05);
  EXPECT_LT(profile.trend_slope, 0.0);
}
