#pragma once

// Permutation groups given by generators, backed by a stabilizer chain
// (base and strong generating set) built with deterministic Schreier-Sims.
//
// Base points are chosen as the least point moved by the generator that
// forces a new level. Transversals are explicit permutation arrays, with
// their inverses, charged against EngineConfig::memory_budget.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "gwr/bigint.hpp"
#include "gwr/perm.hpp"

namespace gwr {

struct EngineConfig {
  std::size_t memory_budget = std::size_t{2} << 30;  // bytes of transversal storage
  unsigned threads = 1;
};

namespace detail {
class StabilizerChain;
}

struct ChainStats {
  std::size_t base_length = 0;
  std::size_t strong_generators = 0;
  std::size_t transversal_bytes = 0;
  std::uint64_t schreier_generators_sifted = 0;
};

/// Immutable once constructed; safe to query from several threads.
class GroupHandle {
 public:
  GroupHandle(std::size_t degree, std::vector<Permutation> generators, EngineConfig config = {});

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  /// The subsequence of generators() not already in the group generated by
  /// the earlier ones.
  const std::vector<Permutation>& irredundant_generators() const noexcept { return irredundant_; }

  const BigInt& order() const noexcept;
  bool contains(const Permutation& p) const;

  std::vector<Point> base() const;
  std::vector<std::size_t> transversal_sizes() const;
  const std::vector<Permutation>& strong_generators() const;
  ChainStats stats() const;

  /// Every element, as u_0 ∘ u_1 ∘ ... ∘ u_{m-1} with u_l running over the
  /// level-l transversal; the identity comes first. Throws CapError when
  /// order() > limit.
  std::vector<Permutation> elements(std::uint64_t limit) const;
  /// Position of a member in elements() order, computed from its base
  /// images alone. Returns nullopt for points outside every orbit; the
  /// answer is only meaningful for members.
  std::optional<std::uint64_t> element_index(const Permutation& member) const;
  /// As element_index, from the images of base() in order.
  std::optional<std::uint64_t> index_from_base_images(std::span<const Point> images) const;

 private:
  friend class ClosureBuilder;
  GroupHandle(std::size_t degree, std::vector<Permutation> generators,
              std::vector<Permutation> irredundant,
              std::shared_ptr<const detail::StabilizerChain> chain);

  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::vector<Permutation> irredundant_;
  std::shared_ptr<const detail::StabilizerChain> chain_;
  BigInt order_;
};

GroupHandle build_group(std::vector<Permutation> generators, std::size_t degree,
                        EngineConfig config = {});
inline const BigInt& order(const GroupHandle& h) { return h.order(); }
bool contains(const GroupHandle& h, const Permutation& p);

/// Generators of the smallest subgroup containing `seeds` that is stable
/// under conjugation by every element of `ambient`.
std::vector<Permutation> normal_closure(std::span<const Permutation> ambient,
                                        std::span<const Permutation> seeds, std::size_t degree,
                                        EngineConfig config = {});
/// Same closure, returned as a built handle (no second Schreier-Sims run).
GroupHandle normal_closure_group(std::span<const Permutation> ambient,
                                 std::span<const Permutation> seeds, std::size_t degree,
                                 EngineConfig config = {});

bool same_subgroup(const GroupHandle& a, const GroupHandle& b);

}  // namespace gwr
