#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace satotate {

/// A finite group given by its multiplication table on indices 0..order-1.
/// mul(a, b) is the product "a then b" written ab; the table is validated
/// exhaustively (closure, associativity, identity, inverses) on construction.
class FiniteGroup {
 public:
  /// Throws InvalidArgument when the table is not a group.
  explicit FiniteGroup(std::vector<std::vector<int>> table, std::string name = "table");

  /// C_n = <g>, element k is g^k.
  static FiniteGroup cyclic(int n);
  /// D_n of order 2n, element i + n*j is r^i s^j.
  static FiniteGroup dihedral(int n);
  /// Quaternion group Q8; 0 = 1, 1 = -1, 2..7 = i, -i, j, -j, k, -k.
  static FiniteGroup quaternion();
  /// A x B, element i * |B| + j is (a_i, b_j).
  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
  /// Raw table: first line the order n, then n lines of n 0-based indices.
  static FiniteGroup load(const std::filesystem::path& path);
  /// "cyclic:n", "dihedral:n", "quaternion", "product:<spec>*<spec>", "table:<path>".
  static FiniteGroup from_spec(const std::string& spec);

  int order() const noexcept { return static_cast<int>(table_.size()); }
  int identity() const noexcept { return identity_; }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  int inverse(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
  int element_order(int a) const;
  bool is_central(int a) const;
  const std::string& name() const noexcept { return name_; }

  /// Sorted element list is a subgroup.
  bool is_subgroup(const std::vector<int>& elements) const;
  /// All subgroups, each sorted; exhaustive over subsets (order <= 16).
  std::vector<std::vector<int>> subgroups() const;

  /// Right cosets Hg, each sorted, listed by smallest element.
  std::vector<std::vector<int>> right_cosets(const std::vector<int>& subgroup) const;
  /// Index of the right coset containing g.
  int coset_of(const std::vector<std::vector<int>>& cosets, int g) const;

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  int identity_ = 0;
  std::string name_;
};

/// The isomorphism classes of groups of order <= 8, for exhaustive checks.
std::vector<FiniteGroup> small_groups_up_to_8();

}  // namespace satotate
