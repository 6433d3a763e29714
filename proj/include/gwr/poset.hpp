#pragma once

// Finite partial orders on {0, ..., n-1} and their lattices of
// downward-closed subsets.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace gwr {

/// Membership flags over 0..n-1.
using Subset = std::vector<bool>;

class Poset {
 public:
  /// Row-major n×n relation; validates reflexivity, antisymmetry and
  /// transitivity.
  static Poset from_relation(std::size_t n, std::vector<bool> leq);
  /// Reflexive-transitive closure of the strict relations a < b; rejects
  /// cycles.
  static Poset from_covers(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& covers);

  std::size_t size() const noexcept { return n_; }
  bool leq(std::size_t i, std::size_t j) const { return leq_[i * n_ + j]; }
  bool less(std::size_t i, std::size_t j) const { return i != j && leq(i, j); }

  /// Elements strictly above i, ascending.
  std::vector<std::size_t> strictly_above(std::size_t i) const;

  friend bool operator==(const Poset&, const Poset&) = default;

 private:
  Poset(std::size_t n, std::vector<bool> leq) : n_(n), leq_(std::move(leq)) {}
  std::size_t n_ = 0;
  std::vector<bool> leq_;
};

Poset make_chain(std::size_t n);
Poset make_antichain(std::size_t n);
/// The empty order (no elements); the index set of a trivial wreath product.
Poset make_empty_poset();
Poset opposite(const Poset& p);
bool is_linear(const Poset& p);
bool is_down_closed(const Poset& p, const Subset& s);
bool is_up_closed(const Poset& p, const Subset& s);
/// Induced order on the members of s, re-indexed in increasing index order.
Poset restrict(const Poset& p, const Subset& s);

class DownSet {
 public:
  /// Throws ValidationError when s is not downward closed in p.
  DownSet(const Poset& p, Subset s);

  const Subset& members() const noexcept { return members_; }
  std::size_t universe() const noexcept { return members_.size(); }
  bool contains(std::size_t i) const { return members_[i]; }
  std::size_t cardinality() const;
  /// Bit i set iff element i is a member (requires universe() <= 64).
  std::uint64_t mask() const;
  std::vector<std::size_t> elements() const;
  Subset complement() const;

  /// "{0,2}" style label.
  std::string label() const;

  friend bool operator==(const DownSet&, const DownSet&) = default;

 private:
  Subset members_;
};

/// Canonical order: by cardinality, then by mask value.
bool canonical_less(const DownSet& a, const DownSet& b);
bool is_subset(const Subset& a, const Subset& b);

inline constexpr std::size_t kMaxDownsetPosetSize = 20;

/// Every downward-closed subset, canonically ordered.
std::vector<DownSet> downsets(const Poset& p);

inline constexpr std::size_t kMaxIsomorphismPosetSize = 8;

/// Backtracking isomorphism test; both posets must have at most 8 elements.
bool is_isomorphic(const Poset& a, const Poset& b);

Subset subset_of(std::size_t n, const std::vector<std::size_t>& members);
Subset full_subset(std::size_t n);

}  // namespace gwr
