#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "satotate/finite_field.hpp"
#include "satotate/finite_group.hpp"

namespace satotate {

// ---- Cebotarev densities ----------------------------------------------------

struct DensityClass {
  std::string label;
  std::size_t count = 0;
  double empirical = 0.0;
  std::optional<double> theoretical;
};

struct DensityReport {
  std::string descriptor;  // "mod n" or the polynomial
  u64 bound = 0;
  std::size_t total = 0;   // unramified primes <= bound
  std::vector<DensityClass> classes;

  /// max |empirical - theoretical| over classes that have a prediction.
  double max_deviation() const;
};

/// Primes p <= bound, p coprime to n, counted by p mod n. Each of the phi(n)
/// classes is predicted to have density 1/phi(n).
DensityReport cyclotomic_densities(u64 n, u64 bound, unsigned threads = 1);

/// Factorization patterns ("1,1,2") of f mod p over primes p <= bound not
/// dividing lc(f) disc(f). `expected` maps a pattern (ascending degrees) to its
/// predicted density; classes never observed but expected are listed too.
DensityReport pattern_densities(const IntPoly& f, u64 bound,
                                const std::optional<std::map<std::vector<int>, double>>& expected = std::nullopt,
                                unsigned threads = 1);

std::string pattern_label(const std::vector<int>& pattern);

// ---- CM types ---------------------------------------------------------------

/// A CM type S of E with Gal(F/Q) = G, Gal(F/E) = H and complex conjugation c.
/// S lists indices into G.right_cosets(H).
struct CMTypeSpec {
  FiniteGroup group;
  std::vector<int> H;
  int c = 0;
  std::vector<int> S;
};

/// Throws InvalidArgument for a non-subgroup H or bad indices, InvalidCmType
/// when c is not an involution or H\G is not S disjoint-union Sc, and
/// Unsupported when c is not central.
void validate(const CMTypeSpec& spec);

struct CMRankResult {
  int translate = 0;                              // g with S used = S g^{-1}
  std::vector<int> S;                             // the type used; contains H
  std::vector<int> reflex_stabilizer;             // H'
  std::vector<std::vector<int>> reflex_cosets;    // H'\G
  std::vector<int> R;                             // indices into reflex_cosets
  std::vector<std::vector<int>> D;                // rows R, columns S
  int nu = 0;
  int cm_rank = 0;
};

/// When the identity coset H is not in S, the type is first replaced by its
/// right translate S g^{-1} (g the smallest element of S~), which has the same
/// rank and contains H; R, D and nu refer to that translate.
CMRankResult cm_rank(const CMTypeSpec& spec);

/// Rank of the full matrix of Phi* in the bases S u Sc and R u Rc, built
/// directly from the membership test.
int cm_rank_oracle(const CMTypeSpec& spec);

/// Dimension of the Sato-Tate torus, nu = cm_rank - 1.
int st_torus_dim(const CMTypeSpec& spec);

/// Every valid CM type on G: all subgroups H of even index, all central
/// involutions c, all S choosing one coset from each {Hg, Hgc}.
std::vector<CMTypeSpec> all_cm_types(const FiniteGroup& group);

/// Rank over Q of an integer matrix by fraction-free elimination.
int integer_rank(std::vector<std::vector<long long>> m);

}  // namespace satotate
