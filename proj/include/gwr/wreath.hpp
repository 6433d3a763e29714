#pragma once

// Generalized wreath products over a finite poset.
//
// The configuration space S is the full product of the factor groups,
// indexed mixed-radix with poset element 0 as the least significant digit.
// For an element lam and a factor element h, xi(lam, h) left-multiplies the
// lam coordinate of a configuration by h, except when some coordinate
// strictly above lam is non-identity, in which case the configuration is
// left alone. The wreath group is the permutation group of S generated by
// all xi(lam, h).

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gwr/bigint.hpp"
#include "gwr/bsgs.hpp"
#include "gwr/finite_group.hpp"
#include "gwr/perm.hpp"
#include "gwr/poset.hpp"

namespace gwr {

struct Config {
  std::vector<Index> coords;
  std::size_t index = 0;
};

class ConfigSpace {
 public:
  /// Throws CapError (naming the offending product) when |S| exceeds the
  /// degree cap.
  ConfigSpace(Poset lambda, std::vector<FiniteGroup> factors);

  const Poset& poset() const noexcept { return lambda_; }
  const std::vector<FiniteGroup>& factors() const noexcept { return factors_; }
  const std::vector<std::size_t>& radices() const noexcept { return radices_; }
  std::size_t stride(std::size_t lam) const { return strides_[lam]; }
  std::size_t total() const noexcept { return total_; }

  Index digit(std::size_t index, std::size_t lam) const {
    return static_cast<Index>((index / strides_[lam]) % radices_[lam]);
  }
  Config decode(std::size_t index) const;
  std::size_t encode(std::span<const Index> coords) const;

 private:
  Poset lambda_;
  std::vector<FiniteGroup> factors_;
  std::vector<std::size_t> radices_;
  std::vector<std::size_t> strides_;
  std::size_t total_ = 1;
};

ConfigSpace config_space(Poset lambda, std::vector<FiniteGroup> factors);
/// "60*60*60 = 216000" style description of |S|.
std::string describe_total(const std::vector<FiniteGroup>& factors);

Permutation xi(const ConfigSpace& space, std::size_t lam, Index h);

struct XiLabel {
  std::size_t lambda;
  Index h;
};

class WreathGroup {
 public:
  explicit WreathGroup(ConfigSpace space, EngineConfig engine = {});

  const ConfigSpace& space() const noexcept { return *space_; }
  const EngineConfig& engine() const noexcept { return engine_; }
  std::size_t degree() const noexcept { return space_->total(); }

  /// xi(lam, h), including the identity for h == 0.
  const Permutation& xi(std::size_t lam, Index h) const { return xi_[lam][h]; }
  /// xi(lam, h) for every lam and every non-identity h, lam-major.
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  const std::vector<XiLabel>& generator_labels() const noexcept { return labels_; }

  /// The group generated by generators(); built on first use.
  const GroupHandle& handle() const;

 private:
  struct Lazy;
  std::shared_ptr<const ConfigSpace> space_;
  EngineConfig engine_;
  std::vector<std::vector<Permutation>> xi_;
  std::vector<Permutation> generators_;
  std::vector<XiLabel> labels_;
  std::shared_ptr<Lazy> lazy_;
};

WreathGroup wreath_group(ConfigSpace space, EngineConfig engine = {});

/// Generators of H_gamma: xi(lam, h) for lam in gamma.
std::vector<Permutation> subgroup_h_gamma(const WreathGroup& w, const Subset& gamma);

/// Configurations agreeing outside gamma. Classes are numbered by their
/// least member, which is the member with every gamma coordinate trivial.
struct ClassPartition {
  std::vector<std::size_t> class_of;
  std::vector<std::size_t> representatives;
  std::size_t class_size = 1;

  std::size_t count() const noexcept { return representatives.size(); }
};

ClassPartition classes_mod_gamma(const ConfigSpace& space, const DownSet& gamma);
/// Same partition for an arbitrary subset (no closure requirement).
ClassPartition partition_mod(const ConfigSpace& space, const Subset& gamma);

/// The permutation g induces on the classes of partition_mod(space, gamma).
/// Throws WellDefinednessViolation when some class is split.
Permutation quotient_action(const WreathGroup& w, const Permutation& g, const Subset& gamma);
Permutation quotient_action(const WreathGroup& w, const Permutation& g, const DownSet& gamma);

/// True iff g fixes every coordinate outside gamma of every configuration.
bool d_gamma_membership(const ConfigSpace& space, const Permutation& g, const Subset& gamma);
inline bool d_gamma_membership(const WreathGroup& w, const Permutation& g, const DownSet& gamma) {
  return d_gamma_membership(w.space(), g, gamma.members());
}

/// D_gamma as the normal closure of H_gamma in the whole group. Every
/// closure generator is checked against d_gamma_membership.
GroupHandle d_gamma_group(const WreathGroup& w, const DownSet& gamma);

/// Independent kernel order where a closed form exists: the two-element
/// chain and antichains (including the one-element poset).
std::optional<BigInt> kernel_order_formula(const ConfigSpace& space, const DownSet& gamma);
/// Order of the whole group for the same cases.
std::optional<BigInt> group_order_formula(const ConfigSpace& space);

struct KernelVerification {
  std::string method;  // "element-scan", "order-formula" or "inclusion-verified-only"
  bool closure_in_kernel = false;
  bool passed = false;
  BigInt closure_order;
  std::optional<BigInt> kernel_order;
};

/// Checks D_gamma (as computed by `closure`) against the kernel of the
/// action on S/~gamma, by element scan when |G| <= oracle_cap.
KernelVerification verify_kernel(const WreathGroup& w, const DownSet& gamma,
                                 const GroupHandle& closure, std::uint64_t oracle_cap);

struct QuotientMismatch {
  std::size_t lambda;
  Index h;
  std::size_t config;  // representative of the first class mapped wrongly
};

struct QuotientCheck {
  bool ok = false;
  std::string failure;
  /// relabel[c] = configuration of the target space for class c.
  std::vector<std::size_t> relabel;
  std::size_t checked_generators = 0;
  std::size_t target_degree = 0;
  std::optional<QuotientMismatch> mismatch;
};

/// Compares the action of w on S/~gamma with the target wreath group, whose
/// element k corresponds to element element_map[k] of w's poset.
QuotientCheck quotient_match(const WreathGroup& w, const DownSet& gamma, const WreathGroup& target,
                             std::span<const std::size_t> element_map);
/// Builds the wreath group over the complement of gamma with the inherited
/// order and factors, then runs quotient_match.
QuotientCheck quotient_iso_check(const WreathGroup& w, const DownSet& gamma);

struct NormalSubgroupClassification {
  BigInt group_order;
  std::vector<SubgroupSet> normal_subgroups;
  std::vector<DownSet> downsets;
  std::vector<BigInt> d_orders;                         // |D_gamma| per downset
  std::vector<std::optional<std::size_t>> d_match;      // normal subgroup equal to D_gamma
  std::vector<std::size_t> unmatched;                   // normal subgroups that are no D_gamma
  std::vector<std::pair<std::size_t, std::size_t>> collisions;  // downsets with equal D_gamma

  bool every_normal_subgroup_is_a_kernel() const { return unmatched.empty(); }
};

/// Brute-force check of which normal subgroups are kernels D_gamma; the
/// group order must not exceed oracle_cap.
NormalSubgroupClassification classify_normal_subgroups_small(const WreathGroup& w,
                                                              std::uint64_t oracle_cap);

}  // namespace gwr
