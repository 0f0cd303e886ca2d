#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "satotate/error.hpp"
#include "satotate/st_groups.hpp"

namespace satotate {

namespace {

using Laurent = std::map<std::pair<int, int>, long>;

Laurent laurent_mul(const Laurent& x, const Laurent& y) {
  Laurent out;
  for (const auto& [wx, cx] : x) {
    for (const auto& [wy, cy] : y) out[{wx.first + wy.first, wx.second + wy.second}] += cx * cy;
  }
  return out;
}

Laurent laurent_add(Laurent x, const Laurent& y, long sign = 1) {
  for (const auto& [w, c] : y) x[w] += sign * c;
  return x;
}

// J_d as a Laurent polynomial in (u1, u2): sum_{i+j=d} U_i(u1) U_j(u2) with
// U_i(u) = u^i + u^{i-2} + ... + u^{-i}.
Laurent complete_symmetric_laurent(int d) {
  Laurent out;
  if (d < 0) return out;
  for (int i = 0; i <= d; ++i) {
    const int j = d - i;
    for (int l = 0; l <= i; ++l) {
      for (int k = 0; k <= j; ++k) out[{i - 2 * l, j - 2 * k}] += 1;
    }
  }
  return out;
}

}  // namespace

double sym_char(int m, double z) {
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "sym_char needs m >= 0");
  double prev = 1.0, cur = z;
  if (m == 0) return prev;
  for (int n = 1; n < m; ++n) {
    const double next = z * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> complete_symmetric_series(int max_degree, double theta1, double theta2) {
  std::vector<double> j(static_cast<std::size_t>(std::max(max_degree, 0)) + 1, 0.0);
  const double c1 = std::cos(theta1), c2 = std::cos(theta2);
  const double e1 = 2.0 * c1 + 2.0 * c2;
  const double e2 = 2.0 + 4.0 * c1 * c2;
  auto at = [&](int d) { return d < 0 ? 0.0 : j[static_cast<std::size_t>(d)]; };
  j[0] = 1.0;
  // 1/((1 - 2c1 t + t^2)(1 - 2c2 t + t^2)) = sum_d J_d t^d
  for (int d = 1; d <= max_degree; ++d) {
    j[static_cast<std::size_t>(d)] = e1 * at(d - 1) - e2 * at(d - 2) + e1 * at(d - 3) - at(d - 4);
  }
  return j;
}

double usp4_char(int a, int b, double theta1, double theta2) {
  if (b < 0 || a < b) throw Error(ErrorKind::InvalidArgument, "Gamma_{a,b} needs a >= b >= 0");
  const auto j = complete_symmetric_series(a + 1, theta1, theta2);
  auto at = [&](int d) { return d < 0 ? 0.0 : j[static_cast<std::size_t>(d)]; };
  if (b == 0) return at(a);
  return at(a) * (at(b) + at(b - 2)) - (at(a + 1) + at(a - 1)) * at(b - 1);
}

long usp4_dimension(int a, int b) {
  return static_cast<long>(a - b + 1) * (b + 1) * (a + 2) * (a + b + 3) / 6;
}

const std::vector<std::pair<std::pair<int, int>, long>>& usp4_weights(int a, int b) {
  if (b < 0 || a < b) throw Error(ErrorKind::InvalidArgument, "Gamma_{a,b} needs a >= b >= 0");
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::vector<std::pair<std::pair<int, int>, long>>> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find({a, b}); it != cache.end()) return it->second;

  Laurent chi;
  if (b == 0) {
    chi = complete_symmetric_laurent(a);
  } else {
    const Laurent left = laurent_mul(complete_symmetric_laurent(a),
                                     laurent_add(complete_symmetric_laurent(b), complete_symmetric_laurent(b - 2)));
    const Laurent right = laurent_mul(laurent_add(complete_symmetric_laurent(a + 1), complete_symmetric_laurent(a - 1)),
                                      complete_symmetric_laurent(b - 1));
    chi = laurent_add(left, right, -1);
  }
  std::vector<std::pair<std::pair<int, int>, long>> weights;
  long total = 0;
  for (const auto& [w, c] : chi) {
    if (c < 0) throw Error(ErrorKind::Internal, "negative weight multiplicity");
    if (c > 0) {
      weights.emplace_back(w, c);
      total += c;
    }
  }
  if (total != usp4_dimension(a, b)) throw Error(ErrorKind::Internal, "weight count differs from Weyl dimension");
  return cache.emplace(std::pair{a, b}, std::move(weights)).first->second;
}

// ---------------------------------------------------------------------------

IrrepSpec IrrepSpec::phi(int a) {
  if (a == 0) throw Error(ErrorKind::InvalidArgument, "phi_a needs a != 0");
  IrrepSpec r;
  r.kind_ = Kind::Phi;
  r.a_ = a;
  return r;
}

IrrepSpec IrrepSpec::sym(int m) {
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "Sym^m needs m >= 0");
  IrrepSpec r;
  r.kind_ = Kind::Sym;
  r.a_ = m;
  return r;
}

IrrepSpec IrrepSpec::gamma(int a, int b) {
  if (b < 0 || a < b) throw Error(ErrorKind::InvalidArgument, "Gamma_{a,b} needs a >= b >= 0");
  IrrepSpec r;
  r.kind_ = Kind::Gamma;
  r.a_ = a;
  r.b_ = b;
  return r;
}

IrrepSpec IrrepSpec::artin(std::vector<std::complex<double>> values, std::string label) {
  if (values.empty()) throw Error(ErrorKind::InvalidArgument, "Artin character needs values");
  IrrepSpec r;
  r.kind_ = Kind::Artin;
  r.values_ = std::move(values);
  r.label_ = std::move(label);
  return r;
}

IrrepSpec IrrepSpec::trivial_for(const GroupSpec& group) {
  switch (group.genus()) {
    case 1: return sym(0);
    case 2: return gamma(0, 0);
    default: {
      const auto* g = group.finite_group();
      return artin(std::vector<std::complex<double>>(static_cast<std::size_t>(g->order()), 1.0), "trivial");
    }
  }
}

IrrepSpec IrrepSpec::parse(std::string_view text, const GroupSpec& group) {
  const std::string s(text);
  auto number = [&](const std::string& part) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      return v;
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::InvalidArgument, "bad irrep '" + s + "'");
    }
  };
  IrrepSpec out;
  if (s == "trivial") {
    out = trivial_for(group);
  } else if (s.rfind("phi:", 0) == 0) {
    out = phi(number(s.substr(4)));
  } else if (s.rfind("sym:", 0) == 0) {
    out = sym(number(s.substr(4)));
  } else if (s.rfind("gamma:", 0) == 0) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::InvalidArgument, "gamma needs 'gamma:a,b'");
    out = gamma(number(s.substr(6, comma - 6)), number(s.substr(comma + 1)));
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown irrep '" + s + "'");
  }
  if (!out.evaluable_on(group)) {
    throw Error(ErrorKind::InvalidArgument, "irrep " + out.label() + " is not defined on " + group.name());
  }
  return out;
}

std::string IrrepSpec::label() const {
  switch (kind_) {
    case Kind::Phi: return "phi:" + std::to_string(a_);
    case Kind::Sym: return "sym:" + std::to_string(a_);
    case Kind::Gamma: return "gamma:" + std::to_string(a_) + "," + std::to_string(b_);
    case Kind::Artin: return label_;
  }
  return "?";
}

int IrrepSpec::dimension() const {
  switch (kind_) {
    case Kind::Phi: return 1;
    case Kind::Sym: return a_ + 1;
    case Kind::Gamma: return static_cast<int>(usp4_dimension(a_, b_));
    case Kind::Artin: return static_cast<int>(std::lround(values_.front().real()));
  }
  return 0;
}

bool IrrepSpec::is_trivial() const {
  switch (kind_) {
    case Kind::Phi: return false;
    case Kind::Sym: return a_ == 0;
    case Kind::Gamma: return a_ == 0 && b_ == 0;
    case Kind::Artin:
      for (const auto& v : values_) {
        if (std::abs(v - std::complex<double>(1.0)) > 1e-12) return false;
      }
      return true;
  }
  return false;
}

bool IrrepSpec::evaluable_on(const GroupSpec& group) const {
  switch (kind_) {
    case Kind::Phi: return group.id() == GroupId::U1;
    case Kind::Sym: return group.genus() == 1;
    case Kind::Gamma: return group.genus() == 2;
    case Kind::Artin:
      return group.id() == GroupId::Finite &&
             static_cast<int>(values_.size()) == group.finite_group()->order();
  }
  return false;
}

std::complex<double> character(const IrrepSpec& irrep, const ClassPoint& x) {
  switch (irrep.kind()) {
    case IrrepSpec::Kind::Phi: return std::polar(1.0, irrep.a() * x.theta1);
    case IrrepSpec::Kind::Sym: return sym_char(irrep.m(), 2.0 * std::cos(x.theta1));
    case IrrepSpec::Kind::Gamma: return usp4_char(irrep.a(), irrep.b(), x.theta1, x.theta2);
    case IrrepSpec::Kind::Artin: {
      const auto values = irrep.values();
      if (x.component >= values.size()) throw Error(ErrorKind::InvalidArgument, "element outside Artin character");
      return values[x.component];
    }
  }
  return 0.0;
}

std::vector<std::complex<double>> eigenvalues(const IrrepSpec& irrep, const ClassPoint& x) {
  std::vector<std::complex<double>> out;
  switch (irrep.kind()) {
    case IrrepSpec::Kind::Phi:
      out.push_back(std::polar(1.0, irrep.a() * x.theta1));
      break;
    case IrrepSpec::Kind::Sym:
      for (int j = 0; j <= irrep.m(); ++j) out.push_back(std::polar(1.0, (irrep.m() - 2 * j) * x.theta1));
      break;
    case IrrepSpec::Kind::Gamma:
      for (const auto& [w, mult] : usp4_weights(irrep.a(), irrep.b())) {
        const auto z = std::polar(1.0, w.first * x.theta1 + w.second * x.theta2);
        for (long i = 0; i < mult; ++i) out.push_back(z);
      }
      break;
    case IrrepSpec::Kind::Artin:
      throw Error(ErrorKind::Unsupported, "eigenvalues of an Artin character are not determined by its values");
  }
  return out;
}

}  // namespace satotate
