// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "satotate/equidist.hpp"
#include "satotate/galois_cm.hpp"
#include "satotate/lseries.hpp"

using namespace satotate;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::vector<double> traces(const EcScan& scan) {
  std::vector<double> out;
  for (const auto& d : scan.data) out.push_back(d.normalized);
  return out;
}

Outcome point_counts() {
  Outcome o;
  const std::vector<std::pair<i64, i64>> curves = {{1, 1}, {-1, 0}, {0, 1}, {-2, 3}, {5, -7}};
  for (auto [a, b] : curves) {
    const EllipticCurveQ e(a, b);
    for (Prime p : primes_in_range(3, 200)) {
      if (!e.has_good_reduction(p)) continue;
      const auto pv = static_cast<oracle::i64>(p.value());
      if (ec_trace(e, p) != pv + 1 - oracle::ec_count(a, b, pv)) o.require(false, e.to_string() + " p=" + std::to_string(pv));
    }
  }
  for (const char* text : {"x^5+x+1", "x^6+3x^5-x^2+2x+5"}) {
    const HyperCurveQ c(IntPoly::parse(text));
    const std::vector<oracle::i64> f(c.f().coefficients().begin(), c.f().coefficients().end());
    for (Prime p : primes_in_range(3, 50)) {
      if (!c.has_good_reduction(p)) continue;
      const auto counts = g2_point_counts(c, p);
      const auto pv = static_cast<oracle::i64>(p.value());
      if (counts.n1 != oracle::hyper_count(f, pv, 1) || counts.n2 != oracle::hyper_count(f, pv, 2)) {
        o.require(false, std::string(text) + " p=" + std::to_string(pv));
      }
    }
  }
  o.detail = o.ok ? "5 elliptic curves p<=200, 2 genus-2 curves p<=50 match enumeration" : o.detail;
  return o;
}

Outcome sato_tate_generic() {
  Outcome o;
  const auto t = traces(ec_scan(EllipticCurveQ(1, 1), 100000));
  const auto c = classify_g1(t);
  o.require(c.result == G1Class::SU2, std::string("classified as ") + to_string(c.result));
  double worst = 0;
  for (const auto& r : c.rows.at("SU2")) {
    if (r.k == 2 || r.k == 4 || r.k == 6) worst = std::max(worst, std::abs(r.z));
  }
  o.require(worst <= 4.0, "max |z| = " + fmt(worst));
  const double d = cdf_discrepancy(t, GroupSpec::catalog(GroupId::SU2));
  o.require(d < 0.03, "discrepancy " + fmt(d));
  if (o.ok) o.detail = "n=" + std::to_string(t.size()) + " SU2, max|z|=" + fmt(worst) + ", D=" + fmt(d);
  return o;
}

Outcome sato_tate_cm() {
  Outcome o;
  const auto scan = ec_scan(EllipticCurveQ(-1, 0), 100000);
  const auto t = traces(scan);
  const auto c = classify_g1(t);
  o.require(c.result == G1Class::NU1, std::string("classified as ") + to_string(c.result));
  std::size_t zeros = 0;
  for (const auto& d : scan.data) zeros += d.a_p == 0 ? 1 : 0;
  const double frac = static_cast<double>(zeros) / static_cast<double>(scan.data.size());
  o.require(std::abs(frac - 0.5) <= 0.02, "zero fraction " + fmt(frac));
  const auto kept = hybrid_filter(scan.data, 4, 3);
  bool all_zero = !kept.empty();
  for (const auto& d : kept) all_zero = all_zero && d.a_p == 0;
  o.require(all_zero, "p = 3 mod 4 has a nonzero a_p");
  if (o.ok) o.detail = "NU1, zero fraction " + fmt(frac) + ", " + std::to_string(kept.size()) + " primes 3 mod 4 all a_p=0";
  return o;
}

Outcome power_sequences() {
  Outcome o;
  const auto seq = power_sequence(5, 2, 100000);
  double m2 = 0, m4 = 0;
  for (double x : seq.terms) {
    m2 += x * x;
    m4 += x * x * x * x;
  }
  m2 /= static_cast<double>(seq.terms.size());
  m4 /= static_cast<double>(seq.terms.size());
  o.require(std::abs(m2 - 2) <= 0.05, "M2 = " + fmt(m2));
  o.require(std::abs(m4 - 6) <= 0.2, "M4 = " + fmt(m4));
  const auto flat = power_sequence(4, 4, 100000);
  const auto rows = compare_moments(flat.terms, GroupSpec::catalog(GroupId::U1), 6);
  o.require(moment_verdict(rows, flat.terms.size()) == Verdict::Inconsistent, "q=4, a_q=4 not flagged");
  if (o.ok) o.detail = "M2=" + fmt(m2) + " M4=" + fmt(m4) + ", (4,4) inconsistent";
  return o;
}

Outcome weyl() {
  Outcome o;
  for (int a = 0; a <= 8; ++a) {
    for (int b = 0; b <= a; ++b) {
      const double dim = (a - b + 1.0) * (b + 1) * (a + 2) * (a + b + 3) / 6.0;
      if (std::abs(usp4_char(a, b, 0, 0) - dim) > 1e-6) o.require(false, "dim " + std::to_string(a) + "," + std::to_string(b));
    }
  }
  const auto usp = GroupSpec::catalog(GroupId::USp4);
  std::vector<IrrepSpec> reps;
  for (int a = 0; a <= 3; ++a) {
    for (int b = 0; b <= a; ++b) reps.push_back(IrrepSpec::gamma(a, b));
  }
  double worst = 0;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = 0; j < reps.size(); ++j) {
      worst = std::max(worst, std::abs(char_inner_product(usp, reps[i], reps[j]) - (i == j ? 1.0 : 0.0)));
    }
  }
  o.require(worst <= 1e-6, "orthonormality error " + fmt(worst));
  const double m2 = trace_moment(usp, 2).value, m4 = trace_moment(usp, 4).value;
  o.require(std::abs(m2 - 1) <= 1e-6 && std::abs(m4 - 3) <= 1e-6, "moments " + fmt(m2) + ", " + fmt(m4));
  if (o.ok) o.detail = "dimensions exact, orthonormality err " + fmt(worst) + ", moments (" + fmt(m2) + ", " + fmt(m4) + ")";
  return o;
}

Outcome st3() {
  Outcome o;
  std::size_t rows = 0;
  for (const auto& g : GroupSpec::catalog_all()) {
    for (const auto& r : st3_audit(g)) {
      ++rows;
      if (!r.result.is_integer) o.require(false, r.group + "/" + r.component + "/" + r.selector + " = " + fmt(r.result.value));
    }
  }
  if (o.ok) o.detail = std::to_string(rows) + " component moments integral";
  return o;
}

Outcome cebotarev() {
  Outcome o;
  const auto cyc = cyclotomic_densities(5, 1000000);
  o.require(cyc.classes.size() == 4 && cyc.max_deviation() <= 0.005, "mod 5 deviation " + fmt(cyc.max_deviation()));
  const std::map<std::vector<int>, double> expected = {{{1, 1, 1}, 1.0 / 6}, {{1, 2}, 0.5}, {{3}, 1.0 / 3}};
  const auto pat = pattern_densities(IntPoly::parse("x^3-2"), 100000, expected);
  o.require(pat.classes.size() == 3 && pat.max_deviation() <= 0.01, "x^3-2 deviation " + fmt(pat.max_deviation()));
  if (o.ok) o.detail = "mod 5 dev " + fmt(cyc.max_deviation()) + ", x^3-2 dev " + fmt(pat.max_deviation());
  return o;
}

Outcome cm_ranks() {
  Outcome o;
  std::size_t count = 0;
  for (const auto& g : small_groups_up_to_8()) {
    for (const auto& spec : all_cm_types(g)) {
      ++count;
      if (cm_rank(spec).cm_rank != cm_rank_oracle(spec)) o.require(false, "mismatch on " + g.name());
    }
  }
  const int c2 = cm_rank({FiniteGroup::cyclic(2), {0}, 1, {0}}).cm_rank;
  const int c4 = cm_rank({FiniteGroup::cyclic(4), {0}, 2, {0, 1}}).cm_rank;
  o.require(c2 == 2, "C2 rank " + std::to_string(c2));
  o.require(c4 == 3, "C4 rank " + std::to_string(c4));
  if (o.ok) o.detail = std::to_string(count) + " CM types agree; C2 -> 2, C4 -> 3";
  return o;
}

Outcome euler_products() {
  Outcome o;
  const u64 bound = 100000;
  const auto zeta = partial_euler(identity_classes(bound), IrrepSpec::sym(0), 2.0, bound);
  const double gap = std::log(std::numbers::pi * std::numbers::pi / 6) - zeta.log_value.real();
  o.require(gap >= 0 && gap <= std::log1p(1.0 / static_cast<double>(bound)), "zeta(2) gap " + fmt(gap));

  const auto classes = label_classes(ec_scan(EllipticCurveQ(1, 1), 100000).data);
  std::vector<double> values;
  for (u64 b : {1000, 10000, 100000}) values.push_back(partial_euler(classes, IrrepSpec::sym(1), 1.5, b).log_value.real());
  const double d1 = std::abs(values[1] - values[0]), d2 = std::abs(values[2] - values[1]);
  o.require(d2 < d1, "sym1 increments " + fmt(d1) + " then " + fmt(d2));

  const auto big = label_classes(ec_scan(EllipticCurveQ(1, 1), 1000000).data);
  const auto profile = chi_sum_profile(big, IrrepSpec::sym(1));
  const double last = profile.points.back().second;
  o.require(std::abs(last) < 0.2, "profile ends at " + fmt(last));
  o.require(profile.trend_slope < 0, "trend slope " + fmt(profile.trend_slope));
  if (o.ok) {
    o.detail = "zeta gap " + fmt(gap) + ", increments " + fmt(d1) + " > " + fmt(d2) + ", profile " + fmt(last) +
               " slope " + fmt(profile.trend_slope);
  }
  return o;
}

Outcome determinism() {
  Outcome o;
  const std::vector<std::vector<std::string>> commands = {
      {"ec-scan", "--curve", "x^3+x+1", "--bound", "100000", "--classify"},
      {"ec-scan", "--ab", "-1,0", "--bound", "100000", "--classify", "--hybrid", "4,3"},
      {"power-seq", "--q", "5", "--aq", "2", "--n", "100000", "--group", "U1"},
      {"moments", "--group", "USp4", "--k", "4"},
      {"st3-audit"},
      {"cebotarev", "--n", "5", "--bound", "1000000"},
      {"pattern", "--poly", "x^3-2", "--bound", "100000", "--expected", "1,1,1=1/6;1,2=1/2;3=1/3"},
      {"cm-rank", "--group", "cyclic:4", "--H", "trivial", "--c", "g2", "--S", "0,1"},
      {"cm-rank", "--group", "dihedral:4", "--all"},
      {"euler", "--zeta", "--bound", "100000", "--s", "2"},
      {"char-sums", "--haar", "20000", "--group", "USp4", "--irrep", "gamma:1,0", "--seed", "7"},
      {"histogram", "--ab", "1,1", "--bound", "100000", "--group", "SU2", "--format", "csv"},
  };
  for (const auto& args : commands) {
    std::ostringstream out1, err1, out2, err2;
    const int c1 = cli::run(args, out1, err1);
    const int c2 = cli::run(args, out2, err2);
    if (c1 != 0 || c2 != 0) o.require(false, args.front() + " exited " + std::to_string(c1));
    if (out1.str() != out2.str()) o.require(false, args.front() + " output differs");
  }
  if (o.ok) o.detail = std::to_string(commands.size()) + " commands byte-identical on rerun";
  return o;
}

struct Criterion {
  int number;
  const char* name;
  double limit_seconds;  // 0 for none
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "oracle point counts", 10, point_counts},
      {2, "Sato-Tate for a non-CM curve", 30, sato_tate_generic},
      {3, "CM curve and the normalizer of U(1)", 0, sato_tate_cm},
      {4, "powers of one Frobenius", 5, power_sequences},
      {5, "Weyl character machinery", 20, weyl},
      {6, "integer moment audit", 0, st3},
      {7, "Cebotarev densities", 60, cebotarev},
      {8, "CM-type rank from the reflex matrix", 5, cm_ranks},
      {9, "partial Euler products", 0, euler_products},
      {10, "determinism", 0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds) o.require(false, "took " + fmt(secs) + " s");
    failures += o.ok ? 0 : 1;
    std::printf("[%s] criterion %d: %s (%.2f s) %s\n", o.ok ? "PASS" : "FAIL", c.number, c.name, secs, o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
