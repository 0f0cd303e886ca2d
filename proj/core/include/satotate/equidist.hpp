#pragma once

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "satotate/frobenius.hpp"
#include "satotate/st_groups.hpp"

namespace satotate {

enum class Verdict { Consistent, Inconsistent, Inconclusive };
const char* to_string(Verdict v) noexcept;

/// Default |z| cut-off for moment consistency.
inline constexpr double kDefaultZThreshold = 4.0;
/// Largest moment order compared against theory.
inline constexpr int kMaxDiagnosticMoment = 12;
/// Below this many samples a verdict is always inconclusive.
inline constexpr std::size_t kMinSamplesForVerdict = 30;

struct CharSumPoint {
  std::size_t n = 0;
  std::complex<double> mean;
};

/// Prefix means (1/n) sum_{i<=n} chi(x_i) at n = 10, 100, ..., and at the
/// final sample count.
std::vector<CharSumPoint> char_sum_series(std::span<const ClassPoint> samples, const IrrepSpec& irrep,
                                          const GroupSpec& group);

struct MomentRow {
  Statistic stat = Statistic::A1;
  int k = 0;
  double empirical = 0.0;
  double theoretical = 0.0;
  double z = 0.0;
};

/// Empirical moments k = 1..k_max of `values` against the group's moments of
/// `stat`. z = (empirical - theoretical) sqrt(n) / sd(value^k), sd taken from
/// the sample; when the sample is constant the Haar standard deviation is used.
std::vector<MomentRow> compare_moments(std::span<const double> values, const GroupSpec& group, int k_max,
                                       Statistic stat = Statistic::A1);

/// Sup distance between the empirical CDF of `values` and the group's trace
/// CDF, evaluated at both one-sided limits of every sample point.
double cdf_discrepancy(std::span<const double> values, const GroupSpec& group);

struct HistogramRow {
  double left = 0.0;
  double right = 0.0;
  std::size_t count = 0;
  double empirical_density = 0.0;
  std::optional<double> theoretical_density;  // bin-averaged continuous part
};

std::vector<HistogramRow> histogram(std::span<const double> values, int bins, double lo, double hi,
                                    const GroupSpec* group = nullptr);

/// Keeps data with p = residue (mod n). n = 1 is the identity.
std::vector<TraceDatum> hybrid_filter(std::span<const TraceDatum> traces, u64 n, u64 residue);

struct DiagnosticReport {
  std::string group;
  std::size_t n = 0;
  std::map<std::string, std::complex<double>> char_sums;  // final partial means
  std::vector<MomentRow> moments;
  double discrepancy = 0.0;
  Verdict verdict = Verdict::Inconclusive;
};

/// Consistent iff every |z| <= threshold (and n large enough).
Verdict moment_verdict(std::span<const MomentRow> rows, std::size_t n, double z_threshold = kDefaultZThreshold);

struct DiagnoseOptions {
  int k_max = 6;
  double z_threshold = kDefaultZThreshold;
  std::vector<IrrepSpec> irreps;  // characters to sum; empty for none
};

/// Full diagnostic of class points against a group: a1 moments (plus a2 for
/// genus-2 groups), trace CDF discrepancy and the requested character sums.
DiagnosticReport diagnose(std::span<const ClassPoint> samples, std::span<const double> traces, const GroupSpec& group,
                          const DiagnoseOptions& options);

/// Convenience for trace-only data (genus 1): no class points needed.
DiagnosticReport diagnose_traces(std::span<const double> traces, const GroupSpec& group, const DiagnoseOptions& options);

enum class G1Class { U1, NU1, SU2, Inconclusive };
const char* to_string(G1Class c) noexcept;

struct G1Classification {
  G1Class result = G1Class::Inconclusive;
  std::map<std::string, std::vector<MomentRow>> rows;  // by group name, k in {2,4,6}
};

/// Moment rows of k = 2, 4, 6 against U1, NU1 and SU2.
std::map<std::string, std::vector<MomentRow>> g1_moment_rows(std::span<const double> traces);

/// The unique weight-1 group whose rows all have |z| <= threshold.
G1Class classify_g1(const std::map<std::string, std::vector<MomentRow>>& rows, std::size_t n,
                    double z_threshold = kDefaultZThreshold);

G1Classification classify_g1(std::span<const double> traces, double z_threshold = kDefaultZThreshold);

}  // namespace satotate
