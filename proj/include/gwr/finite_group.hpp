#pragma once

// Small finite groups as explicit multiplication tables, plus the
// brute-force oracles (conjugacy classes, normal subgroups, endomorphisms)
// used to cross-check the permutation-group machinery.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gwr/perm.hpp"

namespace gwr {

class FiniteGroup {
 public:
  using Index = std::uint32_t;

  /// Row-major size×size table. Element 0 must be the identity. Validates
  /// the Latin-square property, the identity, and associativity
  /// (exhaustively up to 200 elements, on a fixed sample above that).
  static FiniteGroup from_table(std::vector<Index> mul, std::size_t size, std::string label);
  /// Group formed by the given permutations, indexed in the given order;
  /// elements[0] must be the identity and the set must be closed.
  static FiniteGroup from_permutations(const std::vector<Permutation>& elements,
                                       std::string label);
  /// Trusted construction from a table already known to be a group.
  static FiniteGroup from_trusted_table(std::vector<Index> mul, std::size_t size,
                                        std::string label);

  std::size_t size() const noexcept { return size_; }
  Index mul(Index a, Index b) const noexcept { return mul_[std::size_t{a} * size_ + b]; }
  Index inv(Index a) const noexcept { return inv_[a]; }
  static constexpr Index identity() noexcept { return 0; }
  const std::string& label() const noexcept { return label_; }

  bool is_abelian() const;
  std::size_t element_order(Index a) const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.size_ == b.size_ && a.mul_ == b.mul_;
  }

 private:
  FiniteGroup(std::vector<Index> mul, std::size_t size, std::string label);
  std::size_t size_ = 0;
  std::vector<Index> mul_;
  std::vector<Index> inv_;
  std::string label_;
};

using Index = FiniteGroup::Index;

/// One of A5, Z2, Z3, Z4, S3, V4, D4. Permutation groups are indexed by the
/// lexicographic order of their image tuples.
FiniteGroup builtin_group(std::string_view name);
std::vector<std::string> builtin_group_names();

/// The permutations of A5 on 5 points, in index order.
std::vector<Permutation> a5_permutations();

struct SubgroupSet {
  std::vector<bool> members;

  std::size_t order() const;
  bool contains(Index a) const { return members[a]; }
  std::vector<Index> elements() const;
  friend bool operator==(const SubgroupSet&, const SubgroupSet&) = default;
};

/// Smallest subgroup containing `elements`.
SubgroupSet subgroup_closure(const FiniteGroup& g, std::span<const Index> elements);
/// Greedy generating set: repeatedly adds the least element not yet generated.
std::vector<Index> small_generating_set(const FiniteGroup& g);

inline constexpr std::size_t kMaxOracleGroupSize = 10'000;
inline constexpr std::size_t kMaxOracleClasses = 25;
inline constexpr double kMaxEndomorphismAssignments = 1e8;

/// Orbits of conjugation; each class sorted ascending, classes ordered by
/// their least element.
std::vector<std::vector<Index>> conjugacy_classes(const FiniteGroup& g);

/// All normal subgroups, sorted by order then membership flags.
std::vector<SubgroupSet> normal_subgroups_bruteforce(const FiniteGroup& g);

/// image[i] is the image of element i.
using Endomorphism = std::vector<Index>;

/// All homomorphisms g -> g, in lexicographic order of their image arrays.
std::vector<Endomorphism> endomorphisms(const FiniteGroup& g, std::span<const Index> gens);

struct HopfianCheck {
  bool hopfian = false;
  std::size_t endomorphism_count = 0;
  std::vector<Endomorphism> surjective;  // certificate
};

HopfianCheck hopfian_check_bruteforce(const FiniteGroup& g, std::span<const Index> gens);

}  // namespace gwr
