#include "satotate/st_groups.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>

#include "satotate/error.hpp"
#include "satotate/quadrature.hpp"

namespace satotate {

namespace {

constexpr double kPi = std::numbers::pi;

double usp4_density(double t1, double t2) {
  const double c1 = std::cos(t1), c2 = std::cos(t2);
  const double s1 = std::sin(t1), s2 = std::sin(t2);
  const double d = c1 - c2;
  return 8.0 / (kPi * kPi) * d * d * s1 * s1 * s2 * s2;
}

double su2_density(double t) {
  const double s = std::sin(t);
  return 2.0 / kPi * s * s;
}

struct AxisRule {
  std::vector<double> nodes;
  std::vector<double> weights;  // GL weight times density
};

AxisRule axis_rule(Axis axis) {
  AxisRule out;
  switch (axis) {
    case Axis::Circle: {
      auto gl = gauss_legendre(kQuadratureNodes, 0.0, 2.0 * kPi);
      out.nodes = gl.nodes;
      for (double w : gl.weights) out.weights.push_back(w / (2.0 * kPi));
      break;
    }
    case Axis::SU2: {
      auto gl = gauss_legendre(kQuadratureNodes, 0.0, kPi);
      out.nodes = gl.nodes;
      for (std::size_t i = 0; i < gl.nodes.size(); ++i) out.weights.push_back(gl.weights[i] * su2_density(gl.nodes[i]));
      break;
    }
    case Axis::QuarterTurn:
      out.nodes = {kPi / 2.0};
      out.weights = {1.0};
      break;
    case Axis::None:
      out.nodes = {0.0};
      out.weights = {1.0};
      break;
  }
  return out;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

// E[(2cos theta)^k] for one axis.
std::optional<double> axis_moment(Axis axis, int k) {
  if (axis == Axis::QuarterTurn) return k == 0 ? 1.0 : 0.0;
  if (k % 2 != 0) return 0.0;
  const int h = k / 2;
  switch (axis) {
    case Axis::Circle: return binomial(k, h);
    case Axis::SU2: return binomial(k, h) / (h + 1);
    default: return std::nullopt;
  }
}

std::optional<double> closed_form_moment(const GroupSpec& group, int k) {
  if (group.id() == GroupId::Finite) return std::nullopt;
  double total = 0.0;
  for (const auto& c : group.components()) {
    if (c.usp4) return std::nullopt;
    double m = 0.0;
    if (c.second == Axis::None) {
      auto v = axis_moment(c.first, k);
      if (!v) return std::nullopt;
      m = *v;
    } else {
      // trace = X + Y with X, Y independent: binomial convolution
      for (int j = 0; j <= k; ++j) {
        auto x = axis_moment(c.first, j);
        auto y = axis_moment(c.second, k - j);
        if (!x || !y) return std::nullopt;
        m += binomial(k, j) * *x * *y;
      }
    }
    total += c.mass * m;
  }
  return total;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11U) * 0x1.0p-53; }

// Inverse CDF of (2/pi) sin^2 on [0, pi]: G(t) = (t - sin t cos t) / pi.
double sample_su2_angle(double u) {
  double lo = 0.0, hi = kPi, t = kPi * u;
  for (int iter = 0; iter < 100; ++iter) {
    const double g = (t - std::sin(t) * std::cos(t)) / kPi - u;
    if (g > 0) hi = t;
    else lo = t;
    const double dg = su2_density(t);
    double next = dg > 1e-12 ? t - g / dg : 0.5 * (lo + hi);
    if (next <= lo || next >= hi) next = 0.5 * (lo + hi);
    if (std::abs(next - t) < 1e-15) return next;
    t = next;
  }
  return t;
}

double sample_axis(Axis axis, std::mt19937_64& rng) {
  switch (axis) {
    case Axis::Circle: return 2.0 * kPi * uniform01(rng);
    case Axis::SU2: return sample_su2_angle(uniform01(rng));
    case Axis::QuarterTurn: return kPi / 2.0;
    case Axis::None: return 0.0;
  }
  return 0.0;
}

double usp4_density_max() {
  static const double value = [] {
    // coarse grid, then a local refinement around the best cell
    double best = 0.0, b1 = 0.0, b2 = 0.0;
    constexpr int n = 400;
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) {
        const double t1 = kPi * i / n, t2 = kPi * j / n;
        const double d = usp4_density(t1, t2);
        if (d > best) {
          best = d;
          b1 = t1;
          b2 = t2;
        }
      }
    }
    const double h = kPi / n;
    for (int i = -200; i <= 200; ++i) {
      for (int j = -200; j <= 200; ++j) {
        const double t1 = b1 + h * i / 200.0, t2 = b2 + h * j / 200.0;
        best = std::max(best, usp4_density(t1, t2));
      }
    }
    return best * (1.0 + 1e-6);
  }();
  return value;
}

}  // namespace

const char* to_string(GroupId id) noexcept {
  switch (id) {
    case GroupId::U1: return "U1";
    case GroupId::NU1: return "NU1";
    case GroupId::SU2: return "SU2";
    case GroupId::U1xU1: return "U1xU1";
    case GroupId::U1xSU2: return "U1xSU2";
    case GroupId::SU2xSU2: return "SU2xSU2";
    case GroupId::USp4: return "USp4";
    case GroupId::Finite: return "Gal";
  }
  return "?";
}

const char* to_string(Statistic s) noexcept { return s == Statistic::A1 ? "a1" : "a2"; }

const char* to_string(MomentMethod m) noexcept {
  return m == MomentMethod::ClosedForm ? "closed-form" : "quadrature";
}

// ---------------------------------------------------------------------------
// GroupSpec

GroupSpec GroupSpec::catalog(GroupId id) {
  GroupSpec g;
  g.id_ = id;
  g.name_ = to_string(id);
  switch (id) {
    case GroupId::U1:
      g.components_ = {{"U(1)", 1.0, Axis::Circle, Axis::None, false, -1}};
      break;
    case GroupId::NU1:
      g.components_ = {{"U(1)", 0.5, Axis::Circle, Axis::None, false, -1},
                       {"J.U(1)", 0.5, Axis::QuarterTurn, Axis::None, false, -1}};
      break;
    case GroupId::SU2:
      g.components_ = {{"SU(2)", 1.0, Axis::SU2, Axis::None, false, -1}};
      break;
    case GroupId::U1xU1:
      g.components_ = {{"U(1)xU(1)", 1.0, Axis::Circle, Axis::Circle, false, -1}};
      break;
    case GroupId::U1xSU2:
      g.components_ = {{"U(1)xSU(2)", 1.0, Axis::Circle, Axis::SU2, false, -1}};
      break;
    case GroupId::SU2xSU2:
      g.components_ = {{"SU(2)xSU(2)", 1.0, Axis::SU2, Axis::SU2, false, -1}};
      break;
    case GroupId::USp4:
      g.components_ = {{"USp(4)", 1.0, Axis::None, Axis::None, true, -1}};
      break;
    case GroupId::Finite:
      throw Error(ErrorKind::InvalidArgument, "use GroupSpec::finite for finite groups");
  }
  g.build_nodes();
  return g;
}

GroupSpec GroupSpec::parse(std::string_view name) {
  for (GroupId id : {GroupId::U1, GroupId::NU1, GroupId::SU2, GroupId::U1xU1, GroupId::U1xSU2, GroupId::SU2xSU2,
                     GroupId::USp4}) {
    if (name == to_string(id)) return catalog(id);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown group '" + std::string(name) + "'");
}

GroupSpec GroupSpec::finite(FiniteGroup group, std::vector<double> trace, std::string name) {
  if (static_cast<int>(trace.size()) != group.order()) {
    throw Error(ErrorKind::InvalidArgument, "class function must have one value per element");
  }
  GroupSpec g;
  g.id_ = GroupId::Finite;
  g.name_ = std::move(name);
  const double mass = 1.0 / group.order();
  for (int e = 0; e < group.order(); ++e) {
    g.components_.push_back({"g" + std::to_string(e), mass, Axis::None, Axis::None, false, e});
  }
  g.finite_ = std::make_shared<const FiniteGroup>(std::move(group));
  g.finite_trace_ = std::move(trace);
  g.build_nodes();
  return g;
}

std::vector<GroupSpec> GroupSpec::catalog_all() {
  std::vector<GroupSpec> out;
  for (GroupId id : {GroupId::U1, GroupId::NU1, GroupId::SU2, GroupId::U1xU1, GroupId::U1xSU2, GroupId::SU2xSU2,
                     GroupId::USp4}) {
    out.push_back(catalog(id));
  }
  return out;
}

void GroupSpec::build_nodes() {
  // Connected catalog groups share node sets; build each once.
  static std::mutex mutex;
  static std::map<GroupId, std::pair<std::shared_ptr<const std::vector<std::vector<QuadNode>>>, std::vector<double>>>
      cache;
  if (id_ != GroupId::Finite) {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(id_); it != cache.end()) {
      nodes_ = it->second.first;
      raw_integrals_ = it->second.second;
      return;
    }
  }

  auto all = std::make_shared<std::vector<std::vector<QuadNode>>>();
  raw_integrals_.clear();
  for (std::size_t c = 0; c < components_.size(); ++c) {
    const auto& comp = components_[c];
    std::vector<QuadNode> nodes;
    const auto index = static_cast<std::uint32_t>(c);
    if (comp.element >= 0) {
      nodes.push_back({{index, 0.0, 0.0}, 1.0});
    } else if (comp.usp4) {
      const auto gl = gauss_legendre(kQuadratureNodes, 0.0, kPi);
      for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        for (std::size_t j = 0; j < gl.nodes.size(); ++j) {
          const double w = gl.weights[i] * gl.weights[j] * usp4_density(gl.nodes[i], gl.nodes[j]);
          nodes.push_back({{index, gl.nodes[i], gl.nodes[j]}, w});
        }
      }
    } else {
      const AxisRule r1 = axis_rule(comp.first);
      const AxisRule r2 = axis_rule(comp.second);
      for (std::size_t i = 0; i < r1.nodes.size(); ++i) {
        for (std::size_t j = 0; j < r2.nodes.size(); ++j) {
          nodes.push_back({{index, r1.nodes[i], r2.nodes[j]}, r1.weights[i] * r2.weights[j]});
        }
      }
    }
    double raw = 0.0;
    for (const auto& n : nodes) raw += n.weight;
    raw_integrals_.push_back(comp.mass * raw);
    all->push_back(std::move(nodes));
  }
  nodes_ = std::move(all);
  if (id_ != GroupId::Finite) {
    std::lock_guard lock(mutex);
    cache.emplace(id_, std::pair{nodes_, raw_integrals_});
  }
}

int GroupSpec::genus() const noexcept {
  switch (id_) {
    case GroupId::U1:
    case GroupId::NU1:
    case GroupId::SU2: return 1;
    case GroupId::Finite: return 0;
    default: return 2;
  }
}

double GroupSpec::trace_bound() const noexcept {
  if (id_ == GroupId::Finite) {
    double m = 0.0;
    for (double v : finite_trace_) m = std::max(m, std::abs(v));
    return m;
  }
  return genus() == 1 ? 2.0 : 4.0;
}

const std::vector<QuadNode>& GroupSpec::nodes(std::size_t component) const { return nodes_->at(component); }

double GroupSpec::component_density_integral(std::size_t component) const { return raw_integrals_.at(component); }

double GroupSpec::trace(const ClassPoint& x) const {
  if (x.component >= components_.size()) throw Error(ErrorKind::InvalidArgument, "component index out of range");
  const auto& comp = components_[x.component];
  if (id_ == GroupId::Finite) return finite_trace_[static_cast<std::size_t>(comp.element)];
  if (comp.first == Axis::QuarterTurn) return 0.0;
  if (genus() == 1) return 2.0 * std::cos(x.theta1);
  return 2.0 * std::cos(x.theta1) + 2.0 * std::cos(x.theta2);
}

double GroupSpec::statistic(const ClassPoint& x, Statistic s) const {
  if (s == Statistic::A1) return trace(x);
  if (genus() != 2) throw Error(ErrorKind::InvalidArgument, "a2 is defined for genus-2 groups only");
  return 2.0 + 4.0 * std::cos(x.theta1) * std::cos(x.theta2);
}

// ---------------------------------------------------------------------------
// Trace laws

namespace {

constexpr int kTableBins = 1600;
constexpr int kTableGrid = 2000;

std::shared_ptr<const std::vector<double>> tabulate_g2_cdf(const ComponentSpec& comp) {
  // Midpoint grid on [0, pi]^2. A circle axis contributes density 1/pi on
  // [0, pi] because the trace only sees cos(theta).
  std::vector<double> t(kTableGrid), c(kTableGrid), w1(kTableGrid), w2(kTableGrid);
  const double h = kPi / kTableGrid;
  for (int i = 0; i < kTableGrid; ++i) {
    t[static_cast<std::size_t>(i)] = (i + 0.5) * h;
    c[static_cast<std::size_t>(i)] = 2.0 * std::cos(t[static_cast<std::size_t>(i)]);
    auto axis_w = [&](Axis a) { return a == Axis::Circle ? h / kPi : h * su2_density(t[static_cast<std::size_t>(i)]); };
    if (!comp.usp4) {
      w1[static_cast<std::size_t>(i)] = axis_w(comp.first);
      w2[static_cast<std::size_t>(i)] = axis_w(comp.second);
    }
  }
  std::vector<double> bins(kTableBins, 0.0);
  const double width = 8.0 / kTableBins;
  double total = 0.0;
  for (int i = 0; i < kTableGrid; ++i) {
    for (int j = 0; j < kTableGrid; ++j) {
      const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
      const double w = comp.usp4 ? h * h * usp4_density(t[ui], t[uj]) : w1[ui] * w2[uj];
      const double z = c[ui] + c[uj];
      const int b = std::clamp(static_cast<int>((z + 4.0) / width), 0, kTableBins - 1);
      bins[static_cast<std::size_t>(b)] += w;
      total += w;
    }
  }
  auto cdf = std::make_shared<std::vector<double>>(kTableBins + 1, 0.0);
  for (int b = 0; b < kTableBins; ++b) {
    (*cdf)[static_cast<std::size_t>(b) + 1] = (*cdf)[static_cast<std::size_t>(b)] + bins[static_cast<std::size_t>(b)] / total;
  }
  cdf->back() = 1.0;
  return cdf;
}

}  // namespace

TraceLaw trace_density(const GroupSpec& group) {
  TraceLaw law;
  law.bound_ = group.trace_bound();
  switch (group.id()) {
    case GroupId::U1:
      law.form_ = TraceLaw::Form::Arcsine;
      break;
    case GroupId::SU2:
      law.form_ = TraceLaw::Form::Semicircle;
      break;
    case GroupId::NU1:
      law.form_ = TraceLaw::Form::Arcsine;
      law.continuous_weight_ = 0.5;
      law.atoms_ = {{0.0, 0.5}};
      break;
    case GroupId::Finite: {
      law.form_ = TraceLaw::Form::None;
      law.continuous_weight_ = 0.0;
      std::map<double, double> atoms;
      for (std::size_t c = 0; c < group.components().size(); ++c) {
        atoms[group.trace({static_cast<std::uint32_t>(c), 0.0, 0.0})] += group.components()[c].mass;
      }
      law.atoms_.assign(atoms.begin(), atoms.end());
      break;
    }
    default: {
      static std::mutex mutex;
      static std::map<GroupId, std::shared_ptr<const std::vector<double>>> cache;
      std::lock_guard lock(mutex);
      auto& slot = cache[group.id()];
      if (!slot) slot = tabulate_g2_cdf(group.components().front());
      law.form_ = TraceLaw::Form::Tabulated;
      law.table_cdf_ = slot;
      law.table_lo_ = -4.0;
      law.table_width_ = 8.0 / kTableBins;
      break;
    }
  }
  return law;
}

double TraceLaw::continuous_cdf(double z) const {
  switch (form_) {
    case Form::Arcsine: {
      if (z <= -2.0) return 0.0;
      if (z >= 2.0) return 1.0;
      return 1.0 - std::acos(z / 2.0) / kPi;
    }
    case Form::Semicircle: {
      if (z <= -2.0) return 0.0;
      if (z >= 2.0) return 1.0;
      const double t = std::acos(z / 2.0);
      return 1.0 - t / kPi + std::sin(2.0 * t) / (2.0 * kPi);
    }
    case Form::Tabulated: {
      const auto& cdf = *table_cdf_;
      const double pos = (z - table_lo_) / table_width_;
      if (pos <= 0.0) return 0.0;
      if (pos >= kTableBins) return 1.0;
      const auto b = static_cast<std::size_t>(pos);
      const double frac = pos - static_cast<double>(b);
      return cdf[b] + frac * (cdf[b + 1] - cdf[b]);
    }
    case Form::None: return 0.0;
  }
  return 0.0;
}

double TraceLaw::density(double z) const {
  switch (form_) {
    case Form::Arcsine:
      if (std::abs(z) >= 2.0) return 0.0;
      return continuous_weight_ / (kPi * std::sqrt(4.0 - z * z));
    case Form::Semicircle:
      if (std::abs(z) >= 2.0) return 0.0;
      return continuous_weight_ * std::sqrt(4.0 - z * z) / (2.0 * kPi);
    case Form::Tabulated: {
      const double pos = (z - table_lo_) / table_width_;
      if (pos < 0.0 || pos >= kTableBins) return 0.0;
      const auto b = static_cast<std::size_t>(pos);
      return ((*table_cdf_)[b + 1] - (*table_cdf_)[b]) / table_width_;
    }
    case Form::None: return 0.0;
  }
  return 0.0;
}

double TraceLaw::cdf(double z) const {
  double v = continuous_weight_ * continuous_cdf(z);
  for (const auto& [loc, mass] : atoms_) {
    if (loc <= z) v += mass;
  }
  return std::min(v, 1.0);
}

double TraceLaw::cdf_left(double z) const {
  double v = continuous_weight_ * continuous_cdf(z);
  for (const auto& [loc, mass] : atoms_) {
    if (loc < z) v += mass;
  }
  return std::min(v, 1.0);
}

double TraceLaw::continuous_mass(double lo, double hi) const {
  return continuous_weight_ * (continuous_cdf(hi) - continuous_cdf(lo));
}

// ---------------------------------------------------------------------------
// Moments

double trace_moment_quadrature(const GroupSpec& group, int k) {
  return haar_integral(group, [&](const ClassPoint& x) { return std::pow(group.trace(x), k); });
}

MomentSpec trace_moment(const GroupSpec& group, int k) {
  if (k < 0 || k > 24) throw Error(ErrorKind::Unsupported, "moment order must be in [0, 24]");
  MomentSpec out{group.name(), k, 0.0, MomentMethod::ClosedForm};
  if (auto v = closed_form_moment(group, k)) {
    out.value = *v;
  } else {
    out.value = trace_moment_quadrature(group, k);
    out.method = MomentMethod::Quadrature;
  }
  return out;
}

double statistic_moment(const GroupSpec& group, Statistic stat, int k) {
  if (stat == Statistic::A1) return trace_moment(group, k).value;
  if (k < 0 || k > 24) throw Error(ErrorKind::Unsupported, "moment order must be in [0, 24]");
  return haar_integral(group, [&](const ClassPoint& x) { return std::pow(group.statistic(x, stat), k); });
}

// ---------------------------------------------------------------------------
// (ST3), inner products, sampling

std::string St3Selector::label() const {
  switch (kind) {
    case Kind::AbsTraceSquared: return "|trace|^2";
    case Kind::TracePower: return "trace^" + std::to_string(power);
    case Kind::Character: return irrep ? irrep->label() : "character";
  }
  return "?";
}

St3Result st3_check(const GroupSpec& group, const St3Selector& selector, std::size_t component) {
  if (component >= group.components().size()) throw Error(ErrorKind::InvalidArgument, "component index out of range");
  std::complex<double> v = component_integral(group, component, [&](const ClassPoint& x) -> std::complex<double> {
    switch (selector.kind) {
      case St3Selector::Kind::AbsTraceSquared: {
        const double t = group.trace(x);
        return t * t;
      }
      case St3Selector::Kind::TracePower: return std::pow(group.trace(x), selector.power);
      case St3Selector::Kind::Character: return character(*selector.irrep, x);
    }
    return 0.0;
  });
  St3Result r;
  r.value = v.real();
  r.imag = v.imag();
  r.is_integer = std::abs(r.value - std::round(r.value)) <= kIntegerTolerance && std::abs(r.imag) <= kIntegerTolerance;
  return r;
}

std::vector<St3AuditRow> st3_audit(const GroupSpec& group) {
  std::vector<St3AuditRow> rows;
  std::vector<St3Selector> selectors{St3Selector::abs_trace_squared()};
  for (int k = 1; k <= 4; ++k) selectors.push_back(St3Selector::trace_power(k));
  for (std::size_t c = 0; c < group.components().size(); ++c) {
    for (const auto& sel : selectors) {
      rows.push_back({group.name(), group.components()[c].label, sel.label(), st3_check(group, sel, c)});
    }
  }
  return rows;
}

std::complex<double> char_inner_product(const GroupSpec& group, const IrrepSpec& r1, const IrrepSpec& r2) {
  if (!r1.evaluable_on(group) || !r2.evaluable_on(group)) {
    throw Error(ErrorKind::InvalidArgument, "irrep not defined on " + group.name());
  }
  return haar_integral(group, [&](const ClassPoint& x) { return character(r1, x) * std::conj(character(r2, x)); });
}

std::vector<ClassPoint> haar_sample(const GroupSpec& group, std::size_t count, std::uint64_t seed) {
  if (count < 1) throw Error(ErrorKind::InvalidArgument, "haar_sample needs count >= 1");
  std::mt19937_64 rng(seed);
  std::vector<double> cumulative;
  double acc = 0.0;
  for (const auto& c : group.components()) cumulative.push_back(acc += c.mass);

  std::vector<ClassPoint> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    std::size_t comp = 0;
    if (cumulative.size() > 1) {
      const double u = uniform01(rng) * acc;
      comp = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
      comp = std::min(comp, cumulative.size() - 1);
    }
    const auto& spec = group.components()[comp];
    ClassPoint x{static_cast<std::uint32_t>(comp), 0.0, 0.0};
    if (spec.usp4) {
      const double envelope = usp4_density_max();
      for (;;) {
        const double t1 = kPi * uniform01(rng), t2 = kPi * uniform01(rng);
        if (uniform01(rng) * envelope <= usp4_density(t1, t2)) {
          x.theta1 = t1;
          x.theta2 = t2;
          break;
        }
      }
    } else if (spec.element < 0) {
      x.theta1 = sample_axis(spec.first, rng);
      x.theta2 = sample_axis(spec.second, rng);
    }
    out.push_back(x);
  }
  return out;
}

}  // namespace satotate
