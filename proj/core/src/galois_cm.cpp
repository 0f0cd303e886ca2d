#include "satotate/galois_cm.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <string>

#include "satotate/error.hpp"

namespace satotate {

namespace {

struct CosetData {
  std::vector<std::vector<int>> cosets;  // H\G
  std::vector<int> coset_index;          // element -> coset
};

CosetData cosets_of(const FiniteGroup& g, const std::vector<int>& subgroup) {
  CosetData d;
  d.cosets = g.right_cosets(subgroup);
  d.coset_index.assign(static_cast<std::size_t>(g.order()), -1);
  for (std::size_t i = 0; i < d.cosets.size(); ++i) {
    for (int x : d.cosets[i]) d.coset_index[static_cast<std::size_t>(x)] = static_cast<int>(i);
  }
  return d;
}

// Index of the coset Hg * c.
int conjugate_coset(const FiniteGroup& g, const CosetData& d, int coset, int c) {
  return d.coset_index[static_cast<std::size_t>(g.mul(d.cosets[static_cast<std::size_t>(coset)].front(), c))];
}

struct Reflex {
  CosetData type;                 // H\G
  std::vector<char> in_R_tilde;   // membership in S~^{-1}
  std::vector<int> H_prime;
  CosetData reflex;               // H'\G
  std::vector<int> R;             // cosets of H' meeting R~
};

Reflex reflex_data(const CMTypeSpec& spec) {
  const FiniteGroup& g = spec.group;
  const auto n = static_cast<std::size_t>(g.order());
  Reflex r;
  std::vector<int> h = spec.H;
  std::sort(h.begin(), h.end());
  r.type = cosets_of(g, h);

  const std::set<int> chosen(spec.S.begin(), spec.S.end());
  r.in_R_tilde.assign(n, 0);
  for (int x = 0; x < g.order(); ++x) {
    if (chosen.count(r.type.coset_index[static_cast<std::size_t>(x)])) {
      r.in_R_tilde[static_cast<std::size_t>(g.inverse(x))] = 1;
    }
  }
  for (int x = 0; x < g.order(); ++x) {
    bool stabilizes = true;
    for (int y = 0; y < g.order() && stabilizes; ++y) {
      if (r.in_R_tilde[static_cast<std::size_t>(y)] && !r.in_R_tilde[static_cast<std::size_t>(g.mul(x, y))]) {
        stabilizes = false;
      }
    }
    if (stabilizes) r.H_prime.push_back(x);
  }
  r.reflex = cosets_of(g, r.H_prime);
  for (std::size_t i = 0; i < r.reflex.cosets.size(); ++i) {
    if (r.in_R_tilde[static_cast<std::size_t>(r.reflex.cosets[i].front())]) r.R.push_back(static_cast<int>(i));
  }
  return r;
}

// i(sigma, tau) with the given prolongations.
int incidence(const FiniteGroup& g, const Reflex& r, int sigma, int tau) {
  return r.in_R_tilde[static_cast<std::size_t>(g.mul(sigma, g.inverse(tau)))] ? 1 : 0;
}

// S g^{-1} for the smallest g in S~, so that the identity coset lies in S.
// Right translation does not change the rank.
std::pair<CMTypeSpec, int> normalized(const CMTypeSpec& spec) {
  const FiniteGroup& g = spec.group;
  std::vector<int> h = spec.H;
  std::sort(h.begin(), h.end());
  const CosetData d = cosets_of(g, h);
  const int home = d.coset_index[static_cast<std::size_t>(g.identity())];
  if (std::find(spec.S.begin(), spec.S.end(), home) != spec.S.end()) return {spec, g.identity()};
  int shift = g.order();
  for (int s : spec.S) shift = std::min(shift, d.cosets[static_cast<std::size_t>(s)].front());
  CMTypeSpec out = spec;
  out.S.clear();
  for (int s : spec.S) {
    const int x = d.cosets[static_cast<std::size_t>(s)].front();
    out.S.push_back(d.coset_index[static_cast<std::size_t>(g.mul(x, g.inverse(shift)))]);
  }
  std::sort(out.S.begin(), out.S.end());
  return {out, shift};
}

}  // namespace

void validate(const CMTypeSpec& spec) {
  const FiniteGroup& g = spec.group;
  std::vector<int> h = spec.H;
  std::sort(h.begin(), h.end());
  if (!g.is_subgroup(h)) throw Error(ErrorKind::InvalidArgument, "H is not a subgroup of " + g.name());
  if (spec.c < 0 || spec.c >= g.order()) throw Error(ErrorKind::InvalidArgument, "c is not an element of the group");
  if (spec.c == g.identity() || g.mul(spec.c, spec.c) != g.identity()) {
    throw Error(ErrorKind::InvalidCmType, "c must have order 2");
  }
  if (!g.is_central(spec.c)) {
    throw Error(ErrorKind::Unsupported, "complex conjugation must be central in G");
  }
  const CosetData d = cosets_of(g, h);
  const int count = static_cast<int>(d.cosets.size());
  std::vector<int> covered(static_cast<std::size_t>(count), 0);
  for (int s : spec.S) {
    if (s < 0 || s >= count) throw Error(ErrorKind::InvalidArgument, "S refers to a coset that does not exist");
    if (covered[static_cast<std::size_t>(s)]++) throw Error(ErrorKind::InvalidCmType, "S repeats a coset");
  }
  for (int s : spec.S) {
    const int t = conjugate_coset(g, d, s, spec.c);
    if (covered[static_cast<std::size_t>(t)]++) throw Error(ErrorKind::InvalidCmType, "S and Sc intersect");
  }
  if (std::find(covered.begin(), covered.end(), 0) != covered.end()) {
    throw Error(ErrorKind::InvalidCmType, "S and Sc do not cover H\\G");
  }
}

CMRankResult cm_rank(const CMTypeSpec& input) {
  validate(input);
  const auto [spec, shift] = normalized(input);
  const FiniteGroup& g = spec.group;
  const Reflex r = reflex_data(spec);

  auto build = [&](bool first) {
    auto pick = [first](const std::vector<int>& coset) { return first ? coset.front() : coset.back(); };
    std::vector<std::vector<int>> d;
    for (int row : r.R) {
      std::vector<int> line;
      for (int col : spec.S) {
        line.push_back(incidence(g, r, pick(r.reflex.cosets[static_cast<std::size_t>(row)]),
                                 pick(r.type.cosets[static_cast<std::size_t>(col)])));
      }
      d.push_back(std::move(line));
    }
    return d;
  };

  CMRankResult out;
  out.translate = shift;
  out.S = spec.S;
  out.reflex_stabilizer = r.H_prime;
  out.reflex_cosets = r.reflex.cosets;
  out.R = r.R;
  out.D = build(true);
  if (build(false) != out.D) throw Error(ErrorKind::Internal, "D depends on the choice of prolongations");

  std::vector<std::vector<long long>> m;
  for (const auto& row : out.D) m.emplace_back(row.begin(), row.end());
  out.nu = integer_rank(std::move(m));
  out.cm_rank = out.nu + 1;
  return out;
}

int cm_rank_oracle(const CMTypeSpec& spec) {
  validate(spec);
  const FiniteGroup& g = spec.group;
  const Reflex r = reflex_data(spec);

  std::vector<int> columns = spec.S;
  for (int s : spec.S) columns.push_back(conjugate_coset(g, r.type, s, spec.c));
  std::vector<int> rows = r.R;
  for (int s : r.R) rows.push_back(conjugate_coset(g, r.reflex, s, spec.c));
  std::vector<int> sorted_rows = rows;
  std::sort(sorted_rows.begin(), sorted_rows.end());
  if (std::adjacent_find(sorted_rows.begin(), sorted_rows.end()) != sorted_rows.end() ||
      sorted_rows.size() != r.reflex.cosets.size()) {
    throw Error(ErrorKind::Internal, "R and Rc do not partition the reflex cosets");
  }

  std::vector<std::vector<long long>> m;
  for (int row : rows) {
    std::vector<long long> line;
    for (int col : columns) {
      line.push_back(incidence(g, r, r.reflex.cosets[static_cast<std::size_t>(row)].front(),
                               r.type.cosets[static_cast<std::size_t>(col)].front()));
    }
    m.push_back(std::move(line));
  }
  return integer_rank(std::move(m));
}

int st_torus_dim(const CMTypeSpec& spec) { return cm_rank(spec).nu; }

std::vector<CMTypeSpec> all_cm_types(const FiniteGroup& group) {
  std::vector<CMTypeSpec> out;
  std::vector<int> involutions;
  for (int x = 0; x < group.order(); ++x) {
    if (x != group.identity() && group.mul(x, x) == group.identity() && group.is_central(x)) involutions.push_back(x);
  }
  for (const auto& h : group.subgroups()) {
    if ((group.order() / static_cast<int>(h.size())) % 2 != 0) continue;
    const CosetData d = cosets_of(group, h);
    for (int c : involutions) {
      // pair each coset with its conjugate; c in H makes them coincide
      std::vector<std::pair<int, int>> pairs;
      std::vector<char> used(d.cosets.size(), 0);
      bool ok = true;
      for (int i = 0; i < static_cast<int>(d.cosets.size()); ++i) {
        if (used[static_cast<std::size_t>(i)]) continue;
        const int j = conjugate_coset(group, d, i, c);
        if (j == i) {
          ok = false;
          break;
        }
        used[static_cast<std::size_t>(i)] = used[static_cast<std::size_t>(j)] = 1;
        pairs.emplace_back(i, j);
      }
      if (!ok) continue;
      for (unsigned mask = 0; mask < (1U << pairs.size()); ++mask) {
        CMTypeSpec spec{group, h, c, {}};
        for (std::size_t k = 0; k < pairs.size(); ++k) {
          spec.S.push_back(mask & (1U << k) ? pairs[k].second : pairs[k].first);
        }
        std::sort(spec.S.begin(), spec.S.end());
        out.push_back(std::move(spec));
      }
    }
  }
  return out;
}

int integer_rank(std::vector<std::vector<long long>> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m.front().size();
  std::size_t rank = 0;
  long long prev = 1;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        // Bareiss step; the division is exact
        m[i][j] = (m[rank][col] * m[i][j] - m[i][col] * m[rank][j]) / prev;
      }
      m[i][col] = 0;
    }
    prev = m[rank][col];
    ++rank;
  }
  return static_cast<int>(rank);
}

}  // namespace satotate
