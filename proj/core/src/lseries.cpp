#include "satotate/lseries.hpp"

#include <cmath>
#include <string>

#include "satotate/error.hpp"

namespace satotate {

std::vector<LabeledClass> label_classes(std::span<const TraceDatum> data) {
  std::vector<LabeledClass> out;
  out.reserve(data.size());
  for (const auto& d : data) out.push_back({d.p, to_class_point(d)});
  return out;
}

std::vector<LabeledClass> label_classes(std::span<const LocalFactorG2> data) {
  std::vector<LabeledClass> out;
  out.reserve(data.size());
  for (const auto& d : data) out.push_back({d.p, to_class_point(d)});
  return out;
}

std::vector<LabeledClass> identity_classes(u64 bound) {
  std::vector<LabeledClass> out;
  for (Prime p : primes_up_to(bound)) out.push_back({p.value(), ClassPoint{}});
  return out;
}

EulerEval partial_euler(std::span<const LabeledClass> samples, std::span<const IrrepSpec> irreps, double s,
                        u64 bound) {
  if (!(s > 1.0)) throw Error(ErrorKind::InvalidArgument, "partial_euler needs s > 1");
  EulerEval out;
  out.s = s;
  out.bound = bound;
  for (const auto& sample : samples) {
    if (sample.p > bound) continue;
    const double scale = std::pow(static_cast<double>(sample.p), -s);
    std::complex<double> local_log = 0.0;
    double magnitude = 1.0;
    for (const auto& irrep : irreps) {
      for (const auto& lambda : eigenvalues(irrep, sample.x)) {
        const std::complex<double> factor = 1.0 - lambda * scale;
        magnitude *= std::abs(factor);
        local_log += std::log(factor);
      }
    }
    if (magnitude < kDeterminantFloor) {
      throw Error(ErrorKind::DivergenceGuard, "local determinant vanishes at p = " + std::to_string(sample.p));
    }
    out.log_value -= local_log;
    ++out.terms_used;
  }
  return out;
}

EulerEval partial_euler(std::span<const LabeledClass> samples, const IrrepSpec& irrep, double s, u64 bound) {
  return partial_euler(samples, std::span<const IrrepSpec>(&irrep, 1), s, bound);
}

std::complex<double> dirichlet_F(std::span<const LabeledClass> samples, const IrrepSpec& irrep, double s, u64 bound) {
  if (!(s > 1.0)) throw Error(ErrorKind::InvalidArgument, "dirichlet_F needs s > 1");
  std::complex<double> sum = 0.0;
  for (const auto& sample : samples) {
    if (sample.p > bound) continue;
    const double p = static_cast<double>(sample.p);
    sum -= character(irrep, sample.x) * std::log(p) * std::pow(p, -s);
  }
  return sum;
}

std::vector<double> approach_grid() {
  std::vector<double> grid;
  for (int j = 1; j <= 8; ++j) grid.push_back(1.0 + std::ldexp(1.0, -j));
  return grid;
}

ChiProfile chi_sum_profile(std::span<const LabeledClass> samples, const IrrepSpec& irrep) {
  ChiProfile out;
  if (samples.empty()) return out;
  const u64 last = samples.back().p;

  std::vector<u64> checkpoints;
  for (int j = 4;; ++j) {
    const auto n = static_cast<u64>(std::llround(std::pow(10.0, j / 4.0)));
    if (n >= last) break;
    checkpoints.push_back(n);
  }
  checkpoints.push_back(last);

  double sum = 0.0;
  std::size_t i = 0;
  for (u64 n : checkpoints) {
    while (i < samples.size() && samples[i].p <= n) {
      sum += character(irrep, samples[i].x).real();
      ++i;
    }
    const double nd = static_cast<double>(n);
    out.points.emplace_back(n, sum * std::log(nd) / nd);
  }

  // least-squares slope of log|profile| vs log n over nonzero points
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (const auto& [n, v] : out.points) {
    if (v == 0.0) continue;
    const double x = std::log(static_cast<double>(n)), y = std::log(std::abs(v));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count >= 2) {
    const double denom = count * sxx - sx * sx;
    if (denom != 0.0) out.trend_slope = (count * sxy - sx * sy) / denom;
  }
  return out;
}

}  // namespace satotate
