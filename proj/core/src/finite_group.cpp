#include "satotate/finite_group.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "satotate/error.hpp"

namespace satotate {

namespace {

[[noreturn]] void invalid(const std::string& why) { throw Error(ErrorKind::InvalidArgument, why); }

int parse_int(const std::string& text, const std::string& context) {
  try {
    std::size_t used = 0;
    int v = std::stoi(text, &used);
    if (used != text.size()) invalid("bad integer '" + text + "' in " + context);
    return v;
  } catch (const std::logic_error&) {
    invalid("bad integer '" + text + "' in " + context);
  }
}

}  // namespace

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table, std::string name)
    : table_(std::move(table)), name_(std::move(name)) {
  const int n = order();
  if (n < 1) invalid("group table is empty");
  if (n > 64) invalid("group tables are limited to order 64");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) invalid("group table is not square");
    for (int v : row) {
      if (v < 0 || v >= n) invalid("group table entry out of range");
    }
  }
  identity_ = -1;
  for (int e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) invalid("group table has no identity");
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) invalid("group table is not associative");
      }
    }
  }
  inverse_.assign(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (mul(a, b) == identity_ && mul(b, a) == identity_) inverse_[static_cast<std::size_t>(a)] = b;
    }
    if (inverse_[static_cast<std::size_t>(a)] < 0) invalid("element without inverse in group table");
  }
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) invalid("cyclic group needs n >= 1");
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
  return FiniteGroup(std::move(t), "cyclic:" + std::to_string(n));
}

FiniteGroup FiniteGroup::dihedral(int n) {
  if (n < 1) invalid("dihedral group needs n >= 1");
  const int order = 2 * n;
  std::vector<std::vector<int>> t(static_cast<std::size_t>(order), std::vector<int>(static_cast<std::size_t>(order)));
  // r^i s^j * r^k s^l = r^(i + (-1)^j k) s^(j + l)
  for (int x = 0; x < order; ++x) {
    for (int y = 0; y < order; ++y) {
      const int i = x % n, j = x / n, k = y % n, l = y / n;
      const int rot = ((i + (j == 0 ? k : -k)) % n + n) % n;
      t[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = rot + n * ((j + l) % 2);
    }
  }
  return FiniteGroup(std::move(t), "dihedral:" + std::to_string(n));
}

FiniteGroup FiniteGroup::quaternion() {
  // Unit quaternions as (sign, axis) with axis 0 = 1, 1 = i, 2 = j, 3 = k.
  auto index = [](int sign, int axis) { return axis == 0 ? (sign > 0 ? 0 : 1) : 2 * axis + (sign > 0 ? 0 : 1); };
  auto decode = [](int idx, int& sign, int& axis) {
    if (idx < 2) {
      axis = 0;
      sign = idx == 0 ? 1 : -1;
    } else {
      axis = idx / 2;
      sign = idx % 2 == 0 ? 1 : -1;
    }
  };
  // axis products: i*j = k, j*k = i, k*i = j, squares = -1
  auto mul_axes = [](int a, int b, int& sign) {
    sign = 1;
    if (a == 0) return b;
    if (b == 0) return a;
    if (a == b) {
      sign = -1;
      return 0;
    }
    const int c = 6 - a - b;
    sign = ((a == 1 && b == 2) || (a == 2 && b == 3) || (a == 3 && b == 1)) ? 1 : -1;
    return c;
  };
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int x = 0; x < 8; ++x) {
    for (int y = 0; y < 8; ++y) {
      int sx, ax, sy, ay, s;
      decode(x, sx, ax);
      decode(y, sy, ay);
      const int az = mul_axes(ax, ay, s);
      t[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = index(sx * sy * s, az);
    }
  }
  return FiniteGroup(std::move(t), "quaternion");
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.order(), nb = b.order();
  const int n = na * nb;
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      t[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] =
          a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
    }
  }
  return FiniteGroup(std::move(t), "product:" + a.name() + "*" + b.name());
}

FiniteGroup FiniteGroup::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot open group table " + path.string());
  int n = 0;
  if (!(in >> n) || n < 1) invalid("group table file must start with the order");
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (auto& row : t) {
    for (auto& v : row) {
      if (!(in >> v)) invalid("group table file is truncated");
    }
  }
  std::string extra;
  if (in >> extra) invalid("group table file has trailing data");
  return FiniteGroup(std::move(t), "table:" + path.string());
}

FiniteGroup FiniteGroup::from_spec(const std::string& spec) {
  if (spec == "quaternion") return quaternion();
  if (spec.rfind("cyclic:", 0) == 0) return cyclic(parse_int(spec.substr(7), spec));
  if (spec.rfind("dihedral:", 0) == 0) return dihedral(parse_int(spec.substr(9), spec));
  if (spec.rfind("table:", 0) == 0) return load(spec.substr(6));
  if (spec.rfind("product:", 0) == 0) {
    const std::string rest = spec.substr(8);
    const auto star = rest.find('*');
    if (star == std::string::npos) invalid("product spec needs '*': " + spec);
    FiniteGroup g = from_spec(rest.substr(0, star));
    std::string tail = rest.substr(star + 1);
    // product:A*B*C folds left
    while (true) {
      const auto next = tail.find('*');
      g = direct_product(g, from_spec(tail.substr(0, next)));
      if (next == std::string::npos) break;
      tail = tail.substr(next + 1);
    }
    if (g.order() > 64) invalid("group order exceeds 64");
    return g;
  }
  invalid("unknown group spec '" + spec + "'");
}

int FiniteGroup::element_order(int a) const {
  int k = 1;
  for (int x = a; x != identity_; x = mul(x, a)) ++k;
  return k;
}

bool FiniteGroup::is_central(int a) const {
  for (int b = 0; b < order(); ++b) {
    if (mul(a, b) != mul(b, a)) return false;
  }
  return true;
}

bool FiniteGroup::is_subgroup(const std::vector<int>& elements) const {
  if (elements.empty()) return false;
  std::vector<char> in(static_cast<std::size_t>(order()), 0);
  for (int e : elements) {
    if (e < 0 || e >= order()) return false;
    in[static_cast<std::size_t>(e)] = 1;
  }
  for (int a : elements) {
    for (int b : elements) {
      if (!in[static_cast<std::size_t>(mul(a, inverse(b)))]) return false;
    }
  }
  return true;
}

std::vector<std::vector<int>> FiniteGroup::subgroups() const {
  if (order() > 16) invalid("subgroup enumeration is limited to order 16");
  std::vector<std::vector<int>> out;
  const unsigned n = static_cast<unsigned>(order());
  for (unsigned mask = 1; mask < (1U << n); ++mask) {
    if (!(mask & (1U << static_cast<unsigned>(identity_)))) continue;
    std::vector<int> h;
    for (unsigned i = 0; i < n; ++i) {
      if (mask & (1U << i)) h.push_back(static_cast<int>(i));
    }
    if (is_subgroup(h)) out.push_back(std::move(h));
  }
  return out;
}

std::vector<std::vector<int>> FiniteGroup::right_cosets(const std::vector<int>& subgroup) const {
  if (!is_subgroup(subgroup)) invalid("not a subgroup");
  std::vector<int> seen(static_cast<std::size_t>(order()), 0);
  std::vector<std::vector<int>> cosets;
  for (int g = 0; g < order(); ++g) {
    if (seen[static_cast<std::size_t>(g)]) continue;
    std::vector<int> coset;
    for (int h : subgroup) coset.push_back(mul(h, g));
    std::sort(coset.begin(), coset.end());
    for (int x : coset) seen[static_cast<std::size_t>(x)] = 1;
    cosets.push_back(std::move(coset));
  }
  return cosets;
}

int FiniteGroup::coset_of(const std::vector<std::vector<int>>& cosets, int g) const {
  for (std::size_t i = 0; i < cosets.size(); ++i) {
    if (std::binary_search(cosets[i].begin(), cosets[i].end(), g)) return static_cast<int>(i);
  }
  throw Error(ErrorKind::Internal, "element not covered by cosets");
}

std::vector<FiniteGroup> small_groups_up_to_8() {
  std::vector<FiniteGroup> out;
  for (int n = 1; n <= 8; ++n) out.push_back(FiniteGroup::cyclic(n));
  const auto c2 = FiniteGroup::cyclic(2);
  out.push_back(FiniteGroup::direct_product(c2, c2));                                       // order 4
  out.push_back(FiniteGroup::dihedral(3));                                                  // order 6
  out.push_back(FiniteGroup::direct_product(c2, FiniteGroup::cyclic(4)));                   // order 8
  out.push_back(FiniteGroup::direct_product(FiniteGroup::direct_product(c2, c2), c2));      // order 8
  out.push_back(FiniteGroup::dihedral(4));                                                  // order 8
  out.push_back(FiniteGroup::quaternion());                                                 // order 8
  return out;
}

}  // namespace satotate
