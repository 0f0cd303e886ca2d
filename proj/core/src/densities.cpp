#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "parallel.hpp"
#include "satotate/error.hpp"
#include "satotate/galois_cm.hpp"

namespace satotate {

double DensityReport::max_deviation() const {
  double worst = 0.0;
  for (const auto& c : classes) {
    if (c.theoretical) worst = std::max(worst, std::abs(c.empirical - *c.theoretical));
  }
  return worst;
}

std::string pattern_label(const std::vector<int>& pattern) {
  std::string out;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(pattern[i]);
  }
  return out;
}

DensityReport cyclotomic_densities(u64 n, u64 bound, unsigned threads) {
  if (n < 3) throw Error(ErrorKind::InvalidArgument, "cyclotomic_densities needs n >= 3");
  if (bound < n) throw Error(ErrorKind::InvalidArgument, "cyclotomic_densities needs bound >= n");
  (void)threads;  // a single sieve pass is already linear

  std::vector<std::size_t> counts(n, 0);
  DensityReport report;
  report.descriptor = "mod " + std::to_string(n);
  report.bound = bound;
  for (Prime p : primes_up_to(bound)) {
    if (n % p.value() == 0) continue;
    ++counts[p.value() % n];
    ++report.total;
  }
  std::size_t phi = 0;
  for (u64 r = 1; r < n; ++r) phi += std::gcd(r, n) == 1 ? 1 : 0;
  for (u64 r = 1; r < n; ++r) {
    if (std::gcd(r, n) != 1) continue;
    DensityClass c;
    c.label = std::to_string(r);
    c.count = counts[r];
    c.empirical = report.total ? static_cast<double>(c.count) / static_cast<double>(report.total) : 0.0;
    c.theoretical = 1.0 / static_cast<double>(phi);
    report.classes.push_back(std::move(c));
  }
  return report;
}

DensityReport pattern_densities(const IntPoly& f, u64 bound,
                                const std::optional<std::map<std::vector<int>, double>>& expected,
                                unsigned threads) {
  if (f.degree() < 1) throw Error(ErrorKind::InvalidArgument, "pattern_densities needs a non-constant polynomial");
  if (bound < 3) throw Error(ErrorKind::InvalidArgument, "pattern_densities needs bound >= 3");
  const auto primes = primes_up_to(bound);
  const auto patterns = detail::ordered_map<std::vector<int>>(primes.size(), threads, [&](std::size_t i) {
    if (!is_unramified(f, primes[i].value())) return std::vector<int>{};
    return ddf_pattern(f, primes[i]);
  });

  std::map<std::vector<int>, std::size_t> counts;
  DensityReport report;
  report.descriptor = f.to_string();
  report.bound = bound;
  for (const auto& pat : patterns) {
    if (pat.empty()) continue;
    ++counts[pat];
    ++report.total;
  }
  if (expected) {
    for (const auto& [pat, _] : *expected) counts.try_emplace(pat, 0);
  }
  for (const auto& [pat, count] : counts) {
    DensityClass c;
    c.label = pattern_label(pat);
    c.count = count;
    c.empirical = report.total ? static_cast<double>(count) / static_cast<double>(report.total) : 0.0;
    if (expected) {
      auto it = expected->find(pat);
      c.theoretical = it == expected->end() ? 0.0 : it->second;
    }
    report.classes.push_back(std::move(c));
  }
  return report;
}

}  // namespace satotate
