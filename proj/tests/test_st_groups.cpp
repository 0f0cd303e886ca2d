#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "satotate/error.hpp"
#include "satotate/st_groups.hpp"

using namespace satotate;
using std::numbers::pi;

namespace {

GroupSpec G(GroupId id) { return GroupSpec::catalog(id); }

double binom(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Weyl density of USp(4) on [0, pi]^2.
double usp4_density(double t1, double t2) {
  const double d = std::cos(t1) - std::cos(t2);
  const double s1 = std::sin(t1), s2 = std::sin(t2);
  return 8.0 / (pi * pi) * d * d * s1 * s1 * s2 * s2;
}

double usp4_simpson(const std::function<double(double, double)>& f) {
  return oracle::simpson([&](double t1) { return oracle::simpson([&](double t2) { return f(t1, t2); }, 0, pi, 400); },
                         0, pi, 400);
}

// Midpoint rule; tolerates step discontinuities and never touches the endpoints.
double midpoint(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = 0;
  for (int i = 0; i < n; ++i) s += f(a + (i + 0.5) * h);
  return s * h;
}

}  // namespace

TEST(Catalog, NamesAndBounds) {
  const auto all = GroupSpec::catalog_all();
  ASSERT_EQ(all.size(), 7u);
  for (const auto& g : all) {
    EXPECT_EQ(GroupSpec::parse(g.name()).id(), g.id());
    EXPECT_DOUBLE_EQ(g.trace_bound(), g.genus() == 1 ? 2.0 : 4.0);
  }
  EXPECT_THROW(GroupSpec::parse("U2"), Error);
}

TEST(Catalog, ComponentDensitiesIntegrateToTheirMass) {
  for (const auto& g : GroupSpec::catalog_all()) {
    double total = 0.0;
    for (std::size_t c = 0; c < g.components().size(); ++c) {
      EXPECT_NEAR(g.component_density_integral(c), g.components()[c].mass, 1e-8) << g.name() << " component " << c;
      total += g.components()[c].mass;
    }
    EXPECT_NEAR(total, 1.0, 1e-15);
  }
}

TEST(Catalog, TracesRespectMatrixSize) {
  for (const auto& g : GroupSpec::catalog_all()) {
    for (std::size_t c = 0; c < g.components().size(); ++c) {
      for (const auto& node : g.nodes(c)) ASSERT_LE(std::abs(g.trace(node.point)), g.trace_bound() + 1e-12);
    }
  }
}

TEST(TraceDensity, ValuesAtZero) {
  EXPECT_NEAR(trace_density(G(GroupId::SU2)).density(0.0), 1 / pi, 1e-15);
  EXPECT_NEAR(trace_density(G(GroupId::U1)).density(0.0), 1 / (2 * pi), 1e-15);
  // NU1: half of the U(1) law plus an atom at 0
  const auto nu1 = trace_density(G(GroupId::NU1));
  EXPECT_NEAR(nu1.density(0.0), 1 / (4 * pi), 1e-15);
  ASSERT_EQ(nu1.atoms().size(), 1u);
  EXPECT_EQ(nu1.atoms()[0].first, 0.0);
  EXPECT_EQ(nu1.atoms()[0].second, 0.5);
  EXPECT_NEAR(nu1.cdf(0.0) - nu1.cdf_left(0.0), 0.5, 1e-15);
}

TEST(TraceDensity, IntegratesToOne) {
  // z = 2 sin(u) removes the endpoint singularities of the arcsine law
  for (GroupId id : {GroupId::U1, GroupId::SU2, GroupId::NU1}) {
    const auto law = trace_density(G(id));
    const double continuous =
        midpoint([&](double u) { return law.density(2 * std::sin(u)) * 2 * std::cos(u); }, -pi / 2, pi / 2, 20000);
    double atoms = 0.0;
    for (auto [z, m] : law.atoms()) atoms += m;
    EXPECT_NEAR(continuous + atoms, 1.0, 1e-6) << to_string(id);
  }
  for (GroupId id : {GroupId::U1xU1, GroupId::U1xSU2, GroupId::SU2xSU2, GroupId::USp4}) {
    const auto law = trace_density(G(id));
    EXPECT_TRUE(law.tabulated());
    EXPECT_NEAR(law.continuous_mass(-4, 4), 1.0, 1e-9);
    EXPECT_NEAR(law.cdf(4.0), 1.0, 1e-9);
    EXPECT_NEAR(law.cdf(-4.0), 0.0, 1e-9);
  }
}

TEST(TraceDensity, CdfMatchesClosedForms) {
  const auto su2 = trace_density(G(GroupId::SU2));
  const auto u1 = trace_density(G(GroupId::U1));
  for (double z = -2; z <= 2; z += 0.125) {
    // with x = 2 sin(u) the semicircle integrand becomes (2/pi) cos^2(u)
    const double su2_ref = oracle::simpson([](double u) { return 2 / pi * std::cos(u) * std::cos(u); }, -pi / 2,
                                           std::asin(std::clamp(z / 2, -1.0, 1.0)), 2000);
    EXPECT_NEAR(su2.cdf(z), su2_ref, 1e-6);
    const double u1_ref = (std::asin(std::clamp(z / 2, -1.0, 1.0)) + pi / 2) / pi;  // antiderivative of 1/(pi sqrt(4-z^2))
    EXPECT_NEAR(u1.cdf(z), u1_ref, 1e-12);
  }
}

TEST(TraceDensity, Usp4TableAgreesWithAngleQuadrature) {
  const auto law = trace_density(G(GroupId::USp4));
  for (double z : {-2.5, -1.0, 0.0, 0.5, 3.0}) {
    const double ref = midpoint(
        [&](double t1) {
          return midpoint([&](double t2) { return 2 * std::cos(t1) + 2 * std::cos(t2) <= z ? usp4_density(t1, t2) : 0.0; },
                          0, pi, 2000);
        },
        0, pi, 2000);
    EXPECT_NEAR(law.cdf(z), ref, 2e-3) << z;
  }
}

TEST(TraceMoment, Examples) {
  EXPECT_DOUBLE_EQ(trace_moment(G(GroupId::SU2), 2).value, 1);
  EXPECT_DOUBLE_EQ(trace_moment(G(GroupId::SU2), 4).value, 2);
  EXPECT_DOUBLE_EQ(trace_moment(G(GroupId::SU2), 6).value, 5);
  EXPECT_DOUBLE_EQ(trace_moment(G(GroupId::U1), 2).value, 2);
  EXPECT_DOUBLE_EQ(trace_moment(G(GroupId::U1), 4).value, 6);
  EXPECT_DOUBLE_EQ(trace_moment(G(GroupId::NU1), 4).value, 3);
  EXPECT_DOUBLE_EQ(trace_moment(G(GroupId::NU1), 0).value, 1);
  EXPECT_DOUBLE_EQ(trace_moment(G(GroupId::U1), 5).value, 0);

  const auto usp2 = trace_moment(G(GroupId::USp4), 2);
  EXPECT_EQ(usp2.method, MomentMethod::Quadrature);
  EXPECT_NEAR(usp2.value, 1.0, 1e-6);
  EXPECT_NEAR(trace_moment(G(GroupId::USp4), 4).value, 3.0, 1e-6);
  EXPECT_THROW(trace_moment(G(GroupId::SU2), 25), Error);
  EXPECT_THROW(trace_moment(G(GroupId::SU2), -1), Error);
}

TEST(TraceMoment, Usp4AgainstIndependentQuadrature) {
  for (int k : {2, 4, 6}) {
    const double ref = usp4_simpson(
        [&](double t1, double t2) { return std::pow(2 * std::cos(t1) + 2 * std::cos(t2), k) * usp4_density(t1, t2); });
    EXPECT_NEAR(trace_moment(G(GroupId::USp4), k).value, ref, 1e-6) << k;
  }
}

TEST(TraceMoment, ClosedFormsAgreeWithQuadrature) {
  for (GroupId id : {GroupId::U1, GroupId::SU2, GroupId::NU1}) {
    const auto g = G(id);
    for (int k = 0; k <= 12; ++k) {
      const auto m = trace_moment(g, k);
      EXPECT_EQ(m.method, MomentMethod::ClosedForm);
      EXPECT_NEAR(m.value, trace_moment_quadrature(g, k), 1e-8) << to_string(id) << " k=" << k;
    }
  }
}

TEST(TraceMoment, ProductsAreBinomialConvolutions) {
  const auto u1 = G(GroupId::U1), su2 = G(GroupId::SU2);
  auto conv = [&](const GroupSpec& a, const GroupSpec& b, int k) {
    double s = 0;
    for (int j = 0; j <= k; ++j) s += binom(k, j) * trace_moment(a, j).value * trace_moment(b, k - j).value;
    return s;
  };
  for (int k = 0; k <= 8; ++k) {
    EXPECT_NEAR(trace_moment(G(GroupId::U1xU1), k).value, conv(u1, u1, k), 1e-9);
    EXPECT_NEAR(trace_moment(G(GroupId::U1xU1), k).value, trace_moment_quadrature(G(GroupId::U1xU1), k), 1e-8);
    EXPECT_NEAR(trace_moment(G(GroupId::U1xSU2), k).value, conv(u1, su2, k), 1e-9);
    EXPECT_NEAR(trace_moment(G(GroupId::SU2xSU2), k).value, trace_moment_quadrature(G(GroupId::SU2xSU2), k), 1e-8);
  }
}

TEST(Characters, SymExamples) {
  EXPECT_DOUBLE_EQ(sym_char(0, 0.7), 1.0);
  EXPECT_DOUBLE_EQ(sym_char(1, 0.7), 0.7);
  EXPECT_DOUBLE_EQ(sym_char(2, 2.0), 3.0);
  for (int m = 0; m <= 10; ++m) {
    for (double t = 0.05; t < pi; t += 0.3) {
      std::complex<double> ref = 0.0;
      for (int j = 0; j <= m; ++j) ref += std::polar(1.0, (m - 2 * j) * t);
      ASSERT_NEAR(sym_char(m, 2 * std::cos(t)), ref.real(), 1e-10);
    }
  }
}

TEST(Characters, CompleteSymmetricRecurrenceMatchesBruteForce) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> angle(0, pi);
  for (int t = 0; t < 20; ++t) {
    const double t1 = angle(rng), t2 = angle(rng);
    const std::complex<double> z[4] = {std::polar(1.0, t1), std::polar(1.0, -t1), std::polar(1.0, t2),
                                       std::polar(1.0, -t2)};
    const auto j = complete_symmetric_series(10, t1, t2);
    for (int d = 0; d <= 10; ++d) {
      const auto ref = oracle::complete_h(d, z);
      ASSERT_NEAR(j[static_cast<std::size_t>(d)], ref.real(), 1e-9);
      ASSERT_NEAR(ref.imag(), 0.0, 1e-9);
    }
  }
}

TEST(Characters, Usp4Examples) {
  EXPECT_DOUBLE_EQ(usp4_char(0, 0, 0.3, 1.1), 1.0);
  EXPECT_NEAR(usp4_char(1, 0, 0.3, 1.1), 2 * std::cos(0.3) + 2 * std::cos(1.1), 1e-12);
  EXPECT_NEAR(usp4_char(1, 1, 0, 0), 5.0, 1e-12);
  EXPECT_THROW(usp4_char(1, 2, 0, 0), Error);
}

TEST(Characters, WeylDimensionFormula) {
  for (int a = 0; a <= 8; ++a) {
    for (int b = 0; b <= a; ++b) {
      const double dim = (a - b + 1.0) * (b + 1) * (a + 2) * (a + b + 3) / 6.0;
      EXPECT_NEAR(usp4_char(a, b, 0, 0), dim, 1e-6) << a << "," << b;
      EXPECT_EQ(IrrepSpec::gamma(a, b).dimension(), static_cast<int>(dim));
      long count = 0;
      for (const auto& [w, m] : usp4_weights(a, b)) count += m;
      EXPECT_EQ(count, static_cast<long>(dim));
    }
  }
}

TEST(Characters, EigenvaluesSumToCharacter) {
  const ClassPoint x{0, 0.4, 2.3};
  for (const auto& r : {IrrepSpec::sym(0), IrrepSpec::sym(3), IrrepSpec::gamma(2, 1), IrrepSpec::gamma(3, 3),
                        IrrepSpec::phi(-2)}) {
    std::complex<double> s = 0.0;
    const auto ev = eigenvalues(r, x);
    for (auto l : ev) s += l;
    EXPECT_NEAR(std::abs(s - character(r, x)), 0.0, 1e-9) << r.label();
    EXPECT_EQ(static_cast<int>(ev.size()), r.dimension());
  }
}

TEST(Characters, IrrepParsing) {
  const auto su2 = G(GroupId::SU2), usp = G(GroupId::USp4), u1 = G(GroupId::U1);
  EXPECT_EQ(IrrepSpec::parse("sym:3", su2).label(), "sym:3");
  EXPECT_EQ(IrrepSpec::parse("gamma:2,1", usp).dimension(), 16);
  EXPECT_TRUE(IrrepSpec::parse("trivial", usp).is_trivial());
  EXPECT_EQ(IrrepSpec::parse("phi:-3", u1).a(), -3);
  EXPECT_THROW(IrrepSpec::parse("phi:0", u1), Error);
  EXPECT_THROW(IrrepSpec::parse("gamma:1,0", su2), Error);
  EXPECT_THROW(IrrepSpec::parse("sym:x", su2), Error);
  EXPECT_THROW(IrrepSpec::parse("phi:1", su2), Error);
}

TEST(InnerProduct, Examples) {
  const auto su2 = G(GroupId::SU2), usp = G(GroupId::USp4);
  EXPECT_NEAR(std::abs(char_inner_product(su2, IrrepSpec::sym(3), IrrepSpec::sym(3)) - 1.0), 0.0, 1e-6);
  EXPECT_NEAR(std::abs(char_inner_product(su2, IrrepSpec::sym(2), IrrepSpec::sym(4))), 0.0, 1e-6);
  EXPECT_NEAR(std::abs(char_inner_product(usp, IrrepSpec::gamma(1, 0), IrrepSpec::gamma(0, 0))), 0.0, 1e-6);
  const auto u1 = G(GroupId::U1);
  EXPECT_NEAR(std::abs(char_inner_product(u1, IrrepSpec::phi(2), IrrepSpec::phi(2)) - 1.0), 0.0, 1e-6);
  EXPECT_NEAR(std::abs(char_inner_product(u1, IrrepSpec::phi(2), IrrepSpec::phi(-2))), 0.0, 1e-6);
}

TEST(InnerProduct, Usp4Orthonormality) {
  std::vector<IrrepSpec> reps;
  for (int a = 0; a <= 3; ++a) {
    for (int b = 0; b <= a; ++b) reps.push_back(IrrepSpec::gamma(a, b));
  }
  const auto usp = G(GroupId::USp4);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = 0; j < reps.size(); ++j) {
      const auto v = char_inner_product(usp, reps[i], reps[j]);
      ASSERT_NEAR(std::abs(v - std::complex<double>(i == j ? 1.0 : 0.0)), 0.0, 1e-6)
          << reps[i].label() << " vs " << reps[j].label();
    }
  }
}

TEST(St3, Examples) {
  EXPECT_NEAR(st3_check(G(GroupId::SU2), St3Selector::abs_trace_squared(), 0).value, 1.0, 1e-6);
  const auto nu1 = G(GroupId::NU1);
  const auto off = st3_check(nu1, St3Selector::abs_trace_squared(), 1);
  EXPECT_EQ(off.value, 0.0);
  EXPECT_TRUE(off.is_integer);
  EXPECT_NEAR(st3_check(nu1, St3Selector::abs_trace_squared(), 0).value, 2.0, 1e-6);
  EXPECT_TRUE(st3_check(G(GroupId::U1), St3Selector::trace_power(1), 0).is_integer);
}

TEST(St3, FullAuditPasses) {
  for (const auto& g : GroupSpec::catalog_all()) {
    const auto rows = st3_audit(g);
    EXPECT_FALSE(rows.empty());
    for (const auto& row : rows) {
      EXPECT_TRUE(row.result.is_integer) << row.group << " " << row.component << " " << row.selector << " = "
                                         << row.result.value;
    }
  }
}

TEST(St3, NonIntegerIsDetected) {
  // a finite "group" with a class function that is not a character
  const auto g = GroupSpec::finite(FiniteGroup::cyclic(3), {1.0, 0.5, 0.5});
  const auto r = st3_check(g, St3Selector::abs_trace_squared(), 1);
  EXPECT_NEAR(r.value, 0.25, 1e-12);
  EXPECT_FALSE(r.is_integer);
}

TEST(HaarSample, MomentsAndDeterminism) {
  const std::size_t n = 200000;
  for (auto [id, m2, width] : {std::tuple{GroupId::U1, 2.0, 3.0}, std::tuple{GroupId::USp4, 1.0, 5.0},
                               std::tuple{GroupId::SU2, 1.0, 3.0}, std::tuple{GroupId::NU1, 1.0, 3.0}}) {
    const auto g = G(id);
    const auto xs = haar_sample(g, n, 42);
    double s = 0;
    for (const auto& x : xs) s += std::pow(g.trace(x), 2);
    EXPECT_NEAR(s / n, m2, width / std::sqrt(static_cast<double>(n))) << to_string(id);
  }
  const auto a = haar_sample(G(GroupId::USp4), 1000, 7), b = haar_sample(G(GroupId::USp4), 1000, 7);
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a[i].theta1, b[i].theta1);
    ASSERT_EQ(a[i].theta2, b[i].theta2);
  }
  const auto c = haar_sample(G(GroupId::USp4), 1000, 8);
  EXPECT_NE(a[0].theta1, c[0].theta1);
  EXPECT_THROW(haar_sample(G(GroupId::SU2), 0, 1), Error);
}

TEST(HaarSample, AnglesAreCanonical) {
  for (const auto& g : GroupSpec::catalog_all()) {
    for (const auto& x : haar_sample(g, 2000, 1)) {
      ASSERT_GE(x.theta1, 0.0);
      ASSERT_GE(x.theta2, 0.0);
      ASSERT_LT(x.theta1, 2 * pi);
      ASSERT_LT(x.theta2, 2 * pi);
      ASSERT_LT(x.component, g.components().size());
    }
  }
}

TEST(FiniteGroups, CatalogTraceIsTheClassFunction) {
  // C4 acting on C^2 by i -> diag(i, -i): trace 2, 0, -2, 0
  const auto g = GroupSpec::finite(FiniteGroup::cyclic(4), {2, 0, -2, 0}, "C4");
  EXPECT_EQ(g.genus(), 0);
  EXPECT_NEAR(trace_moment(g, 2).value, 2.0, 1e-12);
  const auto law = trace_density(g);
  EXPECT_EQ(law.atoms().size(), 3u);
  EXPECT_THROW(GroupSpec::finite(FiniteGroup::cyclic(4), {1, 1}), Error);
}
