#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "satotate/conjugacy.hpp"
#include "satotate/finite_group.hpp"

namespace satotate {

enum class GroupId { U1, NU1, SU2, U1xU1, U1xSU2, SU2xSU2, USp4, Finite };

/// Statistics of a class point: a1 is the trace; a2 (genus 2 only) is the
/// middle normalized L-polynomial coefficient 2 + 4cos(theta1)cos(theta2).
enum class Statistic { A1, A2 };

const char* to_string(GroupId id) noexcept;
const char* to_string(Statistic s) noexcept;

/// One-dimensional parametrizations used by connected components.
enum class Axis {
  None,
  Circle,       // U(1): theta uniform on [0, 2pi)
  SU2,          // SU(2): theta on [0, pi] with density (2/pi) sin^2
  QuarterTurn,  // fixed eigenangle pi/2 (the non-identity component of N(U(1)))
};

struct ComponentSpec {
  std::string label;
  double mass = 0.0;
  Axis first = Axis::None;
  Axis second = Axis::None;
  bool usp4 = false;  // joint USp(4) Weyl density on [0, pi]^2
  int element = -1;   // finite groups: the element this component is
};

/// Quadrature node; weights within one component sum to 1.
struct QuadNode {
  ClassPoint point;
  double weight = 0.0;
};

/// Number of Gauss-Legendre nodes per parameter axis.
inline constexpr int kQuadratureNodes = 200;

class GroupSpec {
 public:
  static GroupSpec catalog(GroupId id);
  /// "U1", "NU1", "SU2", "U1xU1", "U1xSU2", "SU2xSU2", "USp4".
  static GroupSpec parse(std::string_view name);
  /// A finite group viewed as a compact group; `trace` is a class function
  /// (one value per element) used as its trace.
  static GroupSpec finite(FiniteGroup group, std::vector<double> trace, std::string name = "Gal");
  /// The seven connected-component catalog groups, in GroupId order.
  static std::vector<GroupSpec> catalog_all();

  GroupId id() const noexcept { return id_; }
  const std::string& name() const noexcept { return name_; }
  /// 1 for U1/NU1/SU2, 2 for the four-dimensional groups, 0 for finite groups.
  int genus() const noexcept;
  /// Largest |trace|.
  double trace_bound() const noexcept;

  std::span<const ComponentSpec> components() const noexcept { return components_; }
  const std::vector<QuadNode>& nodes(std::size_t component) const;
  /// Integral of the unnormalized density over a component; equals its mass.
  double component_density_integral(std::size_t component) const;

  double trace(const ClassPoint& x) const;
  double statistic(const ClassPoint& x, Statistic s) const;
  const FiniteGroup* finite_group() const noexcept { return finite_.get(); }

 private:
  GroupSpec() = default;
  void build_nodes();

  GroupId id_ = GroupId::U1;
  std::string name_;
  std::vector<ComponentSpec> components_;
  std::shared_ptr<const std::vector<std::vector<QuadNode>>> nodes_;
  std::vector<double> raw_integrals_;
  std::shared_ptr<const FiniteGroup> finite_;
  std::vector<double> finite_trace_;
};

// ---------------------------------------------------------------------------
// Irreducible characters

class IrrepSpec {
 public:
  enum class Kind { Phi, Sym, Gamma, Artin };

  /// phi_a(u) = u^a on U(1); a != 0.
  static IrrepSpec phi(int a);
  /// Sym^m of the standard representation of SU(2).
  static IrrepSpec sym(int m);
  /// Gamma_{a,b} of USp(4), a >= b >= 0.
  static IrrepSpec gamma(int a, int b);
  /// A character of a finite group given by its value on every element.
  static IrrepSpec artin(std::vector<std::complex<double>> values, std::string label = "artin");
  /// "phi:a", "sym:m", "gamma:a,b", "trivial" (resolved against `group`).
  static IrrepSpec parse(std::string_view text, const GroupSpec& group);
  static IrrepSpec trivial_for(const GroupSpec& group);

  Kind kind() const noexcept { return kind_; }
  int a() const noexcept { return a_; }
  int b() const noexcept { return b_; }
  int m() const noexcept { return a_; }
  std::span<const std::complex<double>> values() const noexcept { return values_; }
  std::string label() const;
  /// Value at the identity.
  int dimension() const;
  bool is_trivial() const;
  bool evaluable_on(const GroupSpec& group) const;

 private:
  Kind kind_ = Kind::Sym;
  int a_ = 0;
  int b_ = 0;
  std::vector<std::complex<double>> values_;
  std::string label_;
};

/// Character value at a class point.
std::complex<double> character(const IrrepSpec& irrep, const ClassPoint& x);

/// Eigenvalues of rho(x) with multiplicity (not available for Artin kinds).
std::vector<std::complex<double>> eigenvalues(const IrrepSpec& irrep, const ClassPoint& x);

/// sum_{j=0..m} e^{i(m-2j)theta} with z = 2cos(theta): U_m(z/2).
double sym_char(int m, double z);

/// Trace of Gamma_{a,b} at diag(e^{+-i theta1}, e^{+-i theta2}) via the
/// determinant of complete homogeneous symmetric polynomials J_d.
double usp4_char(int a, int b, double theta1, double theta2);

/// J_d = H_d(e^{i t1}, e^{-i t1}, e^{i t2}, e^{-i t2}) for d = 0..max_degree.
std::vector<double> complete_symmetric_series(int max_degree, double theta1, double theta2);

/// Weyl dimension formula for Gamma_{a,b}.
long usp4_dimension(int a, int b);

/// Weight multiset of Gamma_{a,b}: ((w1, w2), multiplicity), the eigenvalue
/// e^{i(w1 theta1 + w2 theta2)} occurring `multiplicity` times.
const std::vector<std::pair<std::pair<int, int>, long>>& usp4_weights(int a, int b);

// ---------------------------------------------------------------------------
// Trace laws and moments

/// Push-forward of Haar measure to the trace: a continuous part plus atoms.
class TraceLaw {
 public:
  /// Density of the continuous part.
  double density(double z) const;
  /// P(trace <= z).
  double cdf(double z) const;
  /// P(trace < z).
  double cdf_left(double z) const;
  /// Mass of the continuous part in [lo, hi).
  double continuous_mass(double lo, double hi) const;
  const std::vector<std::pair<double, double>>& atoms() const noexcept { return atoms_; }
  double support_bound() const noexcept { return bound_; }
  bool tabulated() const noexcept { return form_ == Form::Tabulated; }

 private:
  friend TraceLaw trace_density(const GroupSpec& group);
  enum class Form { Arcsine, Semicircle, Tabulated, None };
  double continuous_cdf(double z) const;

  Form form_ = Form::None;
  double continuous_weight_ = 1.0;
  double bound_ = 2.0;
  std::vector<std::pair<double, double>> atoms_;  // (location, mass), sorted
  std::shared_ptr<const std::vector<double>> table_cdf_;  // cumulative at bin edges
  double table_lo_ = 0.0;
  double table_width_ = 0.0;
};

/// Genus-1 groups get closed forms; genus-2 groups a binned push-forward of
/// the eigenangle density; finite groups are purely atomic.
TraceLaw trace_density(const GroupSpec& group);

enum class MomentMethod { ClosedForm, Quadrature };

struct MomentSpec {
  std::string group;
  int k = 0;
  double value = 0.0;
  MomentMethod method = MomentMethod::ClosedForm;
};

const char* to_string(MomentMethod m) noexcept;

/// E[trace^k], 0 <= k <= 24. Closed form where one exists, quadrature for USp4
/// and finite groups.
MomentSpec trace_moment(const GroupSpec& group, int k);
/// E[trace^k] by quadrature regardless of closed forms.
double trace_moment_quadrature(const GroupSpec& group, int k);
/// E[stat^k] for any statistic (quadrature; closed form for A1 when known).
double statistic_moment(const GroupSpec& group, Statistic stat, int k);

/// Haar integral of f over the whole group.
template <class F>
auto haar_integral(const GroupSpec& group, F&& f) {
  using R = decltype(f(ClassPoint{}));
  R total{};
  for (std::size_t c = 0; c < group.components().size(); ++c) {
    R part{};
    for (const auto& node : group.nodes(c)) part += node.weight * f(node.point);
    total += group.components()[c].mass * part;
  }
  return total;
}

/// Integral of f against the component-conditioned Haar measure.
template <class F>
auto component_integral(const GroupSpec& group, std::size_t component, F&& f) {
  using R = decltype(f(ClassPoint{}));
  R part{};
  for (const auto& node : group.nodes(component)) part += node.weight * f(node.point);
  return part;
}

// ---------------------------------------------------------------------------
// (ST3), orthogonality, sampling

struct St3Selector {
  enum class Kind { AbsTraceSquared, TracePower, Character };
  Kind kind = Kind::AbsTraceSquared;
  int power = 2;
  std::optional<IrrepSpec> irrep;

  static St3Selector abs_trace_squared() { return {}; }
  static St3Selector trace_power(int k) { return {Kind::TracePower, k, std::nullopt}; }
  static St3Selector of(IrrepSpec r) { return {Kind::Character, 0, std::move(r)}; }
  std::string label() const;
};

struct St3Result {
  double value = 0.0;
  double imag = 0.0;
  bool is_integer = false;
};

inline constexpr double kIntegerTolerance = 1e-6;

St3Result st3_check(const GroupSpec& group, const St3Selector& selector, std::size_t component);

struct St3AuditRow {
  std::string group;
  std::string component;
  std::string selector;
  St3Result result;
};

/// |trace|^2 and trace^k (k <= 4) over every component of `group`.
std::vector<St3AuditRow> st3_audit(const GroupSpec& group);

/// Haar inner product <chi1, chi2> = integral chi1 * conj(chi2).
std::complex<double> char_inner_product(const GroupSpec& group, const IrrepSpec& r1, const IrrepSpec& r2);

/// i.i.d. Haar samples of conjugacy classes; deterministic in `seed`.
std::vector<ClassPoint> haar_sample(const GroupSpec& group, std::size_t count, std::uint64_t seed);

}  // namespace satotate
