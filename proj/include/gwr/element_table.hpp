#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gwr/bsgs.hpp"
#include "gwr/finite_group.hpp"

namespace gwr {

/// A generated permutation group flattened into an explicit table.
/// elements[i] is the permutation behind table index i, in the order of
/// GroupHandle::elements(), so index 0 is the identity.
struct ElementTable {
  std::vector<Permutation> elements;
  FiniteGroup group;
};

/// Throws CapError when the order exceeds `cap`.
ElementTable element_table(const GroupHandle& h, std::uint64_t cap, std::string label);

/// Table indices of the members of `sub` (a subgroup of h's group).
std::vector<Index> subgroup_indices(const GroupHandle& h, const GroupHandle& sub,
                                    std::uint64_t cap);

}  // namespace gwr
