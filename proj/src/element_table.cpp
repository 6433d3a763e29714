#include "gwr/element_table.hpp"

#include <algorithm>

#include "gwr/error.hpp"

namespace gwr {

ElementTable element_table(const GroupHandle& h, std::uint64_t cap, std::string label) {
  std::vector<Permutation> elements = h.elements(cap);
  const std::size_t n = elements.size();
  const std::vector<Point> base = h.base();
  std::vector<Index> mul(n * n);
  std::vector<Point> images(base.size());
  // A member is determined by its base images, so products only need those.
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t l = 0; l < base.size(); ++l) images[l] = elements[a][elements[b][base[l]]];
      auto idx = h.index_from_base_images(images);
      if (!idx) throw Error("internal", "element_table: product left the group");
      mul[a * n + b] = static_cast<Index>(*idx);
    }
  }
  FiniteGroup group = FiniteGroup::from_trusted_table(std::move(mul), n, std::move(label));
  return {std::move(elements), std::move(group)};
}

std::vector<Index> subgroup_indices(const GroupHandle& h, const GroupHandle& sub,
                                    std::uint64_t cap) {
  std::vector<Index> out;
  for (const Permutation& g : sub.elements(cap)) {
    auto idx = h.element_index(g);
    if (!idx || !h.contains(g)) throw ValidationError("subgroup element is not in the ambient group");
    out.push_back(static_cast<Index>(*idx));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace gwr
