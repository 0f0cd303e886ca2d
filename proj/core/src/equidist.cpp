#include "satotate/equidist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "satotate/error.hpp"

namespace satotate {

namespace {

constexpr double kSaturatedZ = 1e12;
constexpr std::size_t kMinSamplesForClassification = 1000;

}  // namespace

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Consistent: return "consistent";
    case Verdict::Inconsistent: return "inconsistent";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(G1Class c) noexcept {
  switch (c) {
    case G1Class::U1: return "U1";
    case G1Class::NU1: return "NU1";
    case G1Class::SU2: return "SU2";
    case G1Class::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::vector<CharSumPoint> char_sum_series(std::span<const ClassPoint> samples, const IrrepSpec& irrep,
                                          const GroupSpec& group) {
  if (samples.empty()) throw Error(ErrorKind::InvalidArgument, "char_sum_series needs samples");
  if (!irrep.evaluable_on(group)) {
    throw Error(ErrorKind::InvalidArgument, "irrep " + irrep.label() + " is not defined on " + group.name());
  }
  std::vector<CharSumPoint> out;
  std::complex<double> sum = 0.0;
  std::size_t next = 10;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    sum += character(irrep, samples[i]);
    const std::size_t n = i + 1;
    if (n == next) {
      out.push_back({n, sum / static_cast<double>(n)});
      next *= 10;
    }
  }
  if (out.empty() || out.back().n != samples.size()) {
    out.push_back({samples.size(), sum / static_cast<double>(samples.size())});
  }
  return out;
}

std::vector<MomentRow> compare_moments(std::span<const double> values, const GroupSpec& group, int k_max,
                                       Statistic stat) {
  if (k_max < 1 || k_max > kMaxDiagnosticMoment) {
    throw Error(ErrorKind::InvalidArgument, "moment cap must be in [1, 12]");
  }
  if (values.empty()) throw Error(ErrorKind::InvalidArgument, "compare_moments needs samples");
  // Summing in sorted order makes every statistic a symmetric function of the sample.
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());

  std::vector<double> sum(static_cast<std::size_t>(2 * k_max) + 1, 0.0);
  for (double v : sorted) {
    double pw = 1.0;
    for (int k = 1; k <= 2 * k_max; ++k) {
      pw *= v;
      sum[static_cast<std::size_t>(k)] += pw;
    }
  }
  std::vector<MomentRow> rows;
  for (int k = 1; k <= k_max; ++k) {
    const double mean = sum[static_cast<std::size_t>(k)] / n;
    const double second = sum[static_cast<std::size_t>(2 * k)] / n;
    double var = sorted.size() > 1 ? (second - mean * mean) * n / (n - 1.0) : 0.0;
    MomentRow row{stat, k, mean, statistic_moment(group, stat, k), 0.0};
    if (!(var > 1e-12 * std::max(1.0, second))) {
      // constant sample: fall back to the Haar standard deviation of stat^k
      var = statistic_moment(group, stat, 2 * k) - row.theoretical * row.theoretical;
    }
    const double diff = row.empirical - row.theoretical;
    if (var > 1e-12) {
      row.z = diff * std::sqrt(n) / std::sqrt(var);
    } else {
      row.z = std::abs(diff) <= 1e-9 ? 0.0 : std::copysign(kSaturatedZ, diff);
    }
    rows.push_back(row);
  }
  return rows;
}

double cdf_discrepancy(std::span<const double> values, const GroupSpec& group) {
  if (values.empty()) throw Error(ErrorKind::InvalidArgument, "cdf_discrepancy needs samples");
  const TraceLaw law = trace_density(group);
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double worst = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double left_emp = static_cast<double>(i) / n;
    const double right_emp = static_cast<double>(j) / n;
    worst = std::max(worst, std::abs(left_emp - law.cdf_left(sorted[i])));
    worst = std::max(worst, std::abs(right_emp - law.cdf(sorted[i])));
    i = j;
  }
  return std::clamp(worst, 0.0, 1.0);
}

std::vector<HistogramRow> histogram(std::span<const double> values, int bins, double lo, double hi,
                                    const GroupSpec* group) {
  if (bins < 1) throw Error(ErrorKind::InvalidArgument, "histogram needs bins >= 1");
  if (!(lo < hi)) throw Error(ErrorKind::InvalidArgument, "histogram needs lo < hi");
  const double width = (hi - lo) / bins;
  std::vector<HistogramRow> rows(static_cast<std::size_t>(bins));
  for (int b = 0; b < bins; ++b) {
    rows[static_cast<std::size_t>(b)].left = lo + b * width;
    rows[static_cast<std::size_t>(b)].right = b + 1 == bins ? hi : lo + (b + 1) * width;
  }
  for (double v : values) {
    if (v < lo || v > hi) continue;
    const int b = std::min(static_cast<int>((v - lo) / width), bins - 1);
    ++rows[static_cast<std::size_t>(b)].count;
  }
  const double total = values.empty() ? 1.0 : static_cast<double>(values.size());
  std::optional<TraceLaw> law;
  if (group != nullptr) law = trace_density(*group);
  for (auto& row : rows) {
    const double w = row.right - row.left;
    row.empirical_density = static_cast<double>(row.count) / (total * w);
    if (law) row.theoretical_density = law->continuous_mass(row.left, row.right) / w;
  }
  return rows;
}

std::vector<TraceDatum> hybrid_filter(std::span<const TraceDatum> traces, u64 n, u64 residue) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "hybrid_filter needs n >= 1");
  if (std::gcd(residue, n) != 1) throw Error(ErrorKind::InvalidArgument, "hybrid_filter needs gcd(residue, n) = 1");
  std::vector<TraceDatum> out;
  for (const auto& d : traces) {
    if (d.p % n == residue % n) out.push_back(d);
  }
  return out;
}

Verdict moment_verdict(std::span<const MomentRow> rows, std::size_t n, double z_threshold) {
  if (n < kMinSamplesForVerdict || rows.empty()) return Verdict::Inconclusive;
  for (const auto& r : rows) {
    if (!(std::abs(r.z) <= z_threshold)) return Verdict::Inconsistent;
  }
  return Verdict::Consistent;
}

DiagnosticReport diagnose(std::span<const ClassPoint> samples, std::span<const double> traces, const GroupSpec& group,
                          const DiagnoseOptions& options) {
  DiagnosticReport report;
  report.group = group.name();
  report.n = traces.size();
  if (traces.empty()) return report;
  report.moments = compare_moments(traces, group, options.k_max, Statistic::A1);
  if (group.genus() == 2 && !samples.empty()) {
    std::vector<double> a2;
    a2.reserve(samples.size());
    for (const auto& x : samples) a2.push_back(group.statistic(x, Statistic::A2));
    auto rows = compare_moments(a2, group, options.k_max, Statistic::A2);
    report.moments.insert(report.moments.end(), rows.begin(), rows.end());
  }
  report.discrepancy = cdf_discrepancy(traces, group);
  for (const auto& irrep : options.irreps) {
    if (samples.empty()) break;
    report.char_sums[irrep.label()] = char_sum_series(samples, irrep, group).back().mean;
  }
  report.verdict = moment_verdict(report.moments, report.n, options.z_threshold);
  return report;
}

DiagnosticReport diagnose_traces(std::span<const double> traces, const GroupSpec& group,
                                 const DiagnoseOptions& options) {
  return diagnose({}, traces, group, options);
}

std::map<std::string, std::vector<MomentRow>> g1_moment_rows(std::span<const double> traces) {
  std::map<std::string, std::vector<MomentRow>> out;
  for (GroupId id : {GroupId::U1, GroupId::NU1, GroupId::SU2}) {
    const GroupSpec g = GroupSpec::catalog(id);
    std::vector<MomentRow> rows;
    for (const auto& r : compare_moments(traces, g, 6)) {
      if (r.k % 2 == 0) rows.push_back(r);
    }
    out[g.name()] = std::move(rows);
  }
  return out;
}

G1Class classify_g1(const std::map<std::string, std::vector<MomentRow>>& rows, std::size_t n, double z_threshold) {
  if (n < kMinSamplesForClassification) return G1Class::Inconclusive;
  std::vector<G1Class> passing;
  for (auto [name, cls] : {std::pair{"U1", G1Class::U1}, std::pair{"NU1", G1Class::NU1}, std::pair{"SU2", G1Class::SU2}}) {
    auto it = rows.find(name);
    if (it == rows.end()) continue;
    if (moment_verdict(it->second, n, z_threshold) == Verdict::Consistent) passing.push_back(cls);
  }
  return passing.size() == 1 ? passing.front() : G1Class::Inconclusive;
}

G1Classification classify_g1(std::span<const double> traces, double z_threshold) {
  G1Classification out;
  if (traces.empty()) return out;
  out.rows = g1_moment_rows(traces);
  out.result = classify_g1(out.rows, traces.size(), z_threshold);
  return out;
}

}  // namespace satotate
