#include "gwr/wreath.hpp"

#include <algorithm>
#include <mutex>
#include <string>

#include "gwr/element_table.hpp"
#include "gwr/error.hpp"

namespace gwr {

std::string describe_total(const std::vector<FiniteGroup>& factors) {
  std::string product;
  BigInt total = 1;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) product += "*";
    product += std::to_string(factors[i].size());
    total *= factors[i].size();
  }
  if (factors.empty()) product = "1";
  return product + " = " + to_decimal(total);
}

ConfigSpace::ConfigSpace(Poset lambda, std::vector<FiniteGroup> factors)
    : lambda_(std::move(lambda)), factors_(std::move(factors)) {
  if (factors_.size() != lambda_.size())
    throw ValidationError("expected one factor per poset element (" +
                          std::to_string(lambda_.size()) + "), got " +
                          std::to_string(factors_.size()));
  BigInt total = 1;
  for (const FiniteGroup& f : factors_) total *= f.size();
  if (total > degree_cap())
    throw CapError("configuration space size " + describe_total(factors_) +
                   " exceeds the degree cap of " + std::to_string(degree_cap()));
  for (const FiniteGroup& f : factors_) {
    strides_.push_back(total_);
    radices_.push_back(f.size());
    total_ *= f.size();
  }
}

Config ConfigSpace::decode(std::size_t index) const {
  Config c;
  c.index = index;
  for (std::size_t lam = 0; lam < radices_.size(); ++lam) c.coords.push_back(digit(index, lam));
  return c;
}

std::size_t ConfigSpace::encode(std::span<const Index> coords) const {
  if (coords.size() != radices_.size()) throw ValidationError("configuration has the wrong length");
  std::size_t index = 0;
  for (std::size_t lam = 0; lam < coords.size(); ++lam) {
    if (coords[lam] >= radices_[lam]) throw ValidationError("configuration coordinate out of range");
    index += coords[lam] * strides_[lam];
  }
  return index;
}

ConfigSpace config_space(Poset lambda, std::vector<FiniteGroup> factors) {
  return ConfigSpace(std::move(lambda), std::move(factors));
}

Permutation xi(const ConfigSpace& space, std::size_t lam, Index h) {
  if (lam >= space.poset().size())
    throw ValidationError("poset element " + std::to_string(lam) + " out of range");
  const FiniteGroup& factor = space.factors()[lam];
  if (h >= factor.size())
    throw ValidationError("factor element " + std::to_string(h) + " out of range for " +
                          factor.label());
  const std::vector<std::size_t> above = space.poset().strictly_above(lam);
  const std::size_t stride = space.stride(lam);
  std::vector<Point> images(space.total());
  for (std::size_t x = 0; x < space.total(); ++x) {
    bool frozen = false;
    for (std::size_t eta : above)
      if (space.digit(x, eta) != 0) {
        frozen = true;
        break;
      }
    std::size_t y = x;
    if (!frozen) {
      Index d = space.digit(x, lam);
      y = x - d * stride + factor.mul(h, d) * stride;
    }
    images[x] = static_cast<Point>(y);
  }
  return Permutation::from_images_unchecked(std::move(images));
}

struct WreathGroup::Lazy {
  std::once_flag once;
  std::optional<GroupHandle> handle;
};

WreathGroup::WreathGroup(ConfigSpace space, EngineConfig engine)
    : space_(std::make_shared<const ConfigSpace>(std::move(space))),
      engine_(engine),
      lazy_(std::make_shared<Lazy>()) {
  const std::size_t n = space_->poset().size();
  xi_.resize(n);
  for (std::size_t lam = 0; lam < n; ++lam) {
    const std::size_t size = space_->factors()[lam].size();
    for (Index h = 0; h < size; ++h) xi_[lam].push_back(gwr::xi(*space_, lam, h));
    for (Index h = 1; h < size; ++h) {
      generators_.push_back(xi_[lam][h]);
      labels_.push_back({lam, h});
    }
  }
}

const GroupHandle& WreathGroup::handle() const {
  std::call_once(lazy_->once, [this] {
    lazy_->handle.emplace(space_->total(), generators_, engine_);
  });
  return *lazy_->handle;
}

WreathGroup wreath_group(ConfigSpace space, EngineConfig engine) {
  return WreathGroup(std::move(space), engine);
}

std::vector<Permutation> subgroup_h_gamma(const WreathGroup& w, const Subset& gamma) {
  if (gamma.size() != w.space().poset().size())
    throw ValidationError("subset does not match the poset size");
  std::vector<Permutation> out;
  for (std::size_t k = 0; k < w.generators().size(); ++k)
    if (gamma[w.generator_labels()[k].lambda]) out.push_back(w.generators()[k]);
  return out;
}

namespace {

// rep[x]: x with every gamma coordinate reset to the identity.
std::vector<std::size_t> representative_map(const ConfigSpace& space, const Subset& gamma) {
  std::vector<std::size_t> rep(space.total());
  for (std::size_t x = 0; x < space.total(); ++x) {
    std::size_t r = x;
    for (std::size_t lam = 0; lam < gamma.size(); ++lam)
      if (gamma[lam]) r -= space.digit(x, lam) * space.stride(lam);
    rep[x] = r;
  }
  return rep;
}

}  // namespace

ClassPartition partition_mod(const ConfigSpace& space, const Subset& gamma) {
  if (gamma.size() != space.poset().size())
    throw ValidationError("subset does not match the poset size");
  ClassPartition out;
  std::vector<std::size_t> rep = representative_map(space, gamma);
  std::vector<std::size_t> class_index(space.total(), 0);
  for (std::size_t x = 0; x < space.total(); ++x)
    if (rep[x] == x) {
      class_index[x] = out.representatives.size();
      out.representatives.push_back(x);
    }
  out.class_of.resize(space.total());
  for (std::size_t x = 0; x < space.total(); ++x) out.class_of[x] = class_index[rep[x]];
  out.class_size = space.total() / out.representatives.size();
  return out;
}

ClassPartition classes_mod_gamma(const ConfigSpace& space, const DownSet& gamma) {
  if (!is_down_closed(space.poset(), gamma.members()))
    throw ValidationError("subset " + gamma.label() + " is not downward closed in this poset");
  return partition_mod(space, gamma.members());
}

namespace {

Permutation induced_action(const ClassPartition& part, const Permutation& g) {
  std::vector<Point> images(part.count());
  for (std::size_t c = 0; c < part.count(); ++c)
    images[c] = static_cast<Point>(part.class_of[g[static_cast<Point>(part.representatives[c])]]);
  for (std::size_t x = 0; x < part.class_of.size(); ++x) {
    std::size_t c = part.class_of[x];
    std::size_t landed = part.class_of[g[static_cast<Point>(x)]];
    if (landed != images[c])
      throw WellDefinednessViolation(
          "class " + std::to_string(c) + " is split: representative " +
          std::to_string(part.representatives[c]) + " lands in class " +
          std::to_string(images[c]) + " but member " + std::to_string(x) + " lands in class " +
          std::to_string(landed));
  }
  return Permutation::from_images(std::move(images));
}

}  // namespace

Permutation quotient_action(const WreathGroup& w, const Permutation& g, const Subset& gamma) {
  if (g.degree() != w.degree()) throw ValidationError("permutation degree does not match |S|");
  return induced_action(partition_mod(w.space(), gamma), g);
}

Permutation quotient_action(const WreathGroup& w, const Permutation& g, const DownSet& gamma) {
  if (g.degree() != w.degree()) throw ValidationError("permutation degree does not match |S|");
  return induced_action(classes_mod_gamma(w.space(), gamma), g);
}

bool d_gamma_membership(const ConfigSpace& space, const Permutation& g, const Subset& gamma) {
  if (g.degree() != space.total()) throw ValidationError("permutation degree does not match |S|");
  std::vector<std::size_t> rep = representative_map(space, gamma);
  for (std::size_t x = 0; x < space.total(); ++x)
    if (rep[g[static_cast<Point>(x)]] != rep[x]) return false;
  return true;
}

GroupHandle d_gamma_group(const WreathGroup& w, const DownSet& gamma) {
  if (!is_down_closed(w.space().poset(), gamma.members()))
    throw ValidationError("subset " + gamma.label() + " is not downward closed in this poset");
  std::vector<Permutation> seeds = subgroup_h_gamma(w, gamma.members());
  GroupHandle closure = normal_closure_group(w.generators(), seeds, w.degree(), w.engine());
  for (const Permutation& g : closure.generators())
    if (!d_gamma_membership(w.space(), g, gamma.members()))
      throw Error("internal", "normal closure generator moves a coordinate outside " + gamma.label());
  return closure;
}

namespace {

bool is_antichain(const Poset& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      if (p.less(i, j)) return false;
  return true;
}

// Bottom and top of a two-element chain, if the poset is one.
std::optional<std::pair<std::size_t, std::size_t>> two_chain(const Poset& p) {
  if (p.size() != 2) return std::nullopt;
  if (p.less(0, 1)) return std::pair<std::size_t, std::size_t>{0, 1};
  if (p.less(1, 0)) return std::pair<std::size_t, std::size_t>{1, 0};
  return std::nullopt;
}

}  // namespace

std::optional<BigInt> kernel_order_formula(const ConfigSpace& space, const DownSet& gamma) {
  const Poset& p = space.poset();
  const auto& f = space.factors();
  if (is_antichain(p)) {
    BigInt order = 1;
    for (std::size_t lam : gamma.elements()) order *= f[lam].size();
    return order;
  }
  if (auto chain = two_chain(p)) {
    auto [bottom, top] = *chain;
    // Restricted wreath product: base group |H_bottom|^|H_top|, then the top.
    BigInt order = 1;
    if (gamma.contains(bottom)) order *= big_pow(BigInt(f[bottom].size()), static_cast<unsigned>(f[top].size()));
    if (gamma.contains(top)) order *= f[top].size();
    return order;
  }
  return std::nullopt;
}

std::optional<BigInt> group_order_formula(const ConfigSpace& space) {
  return kernel_order_formula(space, DownSet(space.poset(), full_subset(space.poset().size())));
}

KernelVerification verify_kernel(const WreathGroup& w, const DownSet& gamma,
                                 const GroupHandle& closure, std::uint64_t oracle_cap) {
  KernelVerification out;
  out.closure_order = closure.order();
  out.closure_in_kernel = true;
  for (const Permutation& g : closure.generators())
    if (!d_gamma_membership(w.space(), g, gamma.members())) out.closure_in_kernel = false;

  const GroupHandle& whole = w.handle();
  if (whole.order() <= oracle_cap) {
    out.method = "element-scan";
    std::vector<Permutation> kernel;
    for (Permutation& g : whole.elements(oracle_cap))
      if (d_gamma_membership(w.space(), g, gamma.members())) kernel.push_back(std::move(g));
    out.kernel_order = BigInt(kernel.size());
    std::vector<Permutation> closure_elements = closure.elements(oracle_cap);
    std::sort(kernel.begin(), kernel.end());
    std::sort(closure_elements.begin(), closure_elements.end());
    out.passed = out.closure_in_kernel && kernel == closure_elements;
    return out;
  }
  if (auto formula = kernel_order_formula(w.space(), gamma)) {
    out.method = "order-formula";
    out.kernel_order = *formula;
    out.passed = out.closure_in_kernel && *formula == closure.order();
    return out;
  }
  out.method = "inclusion-verified-only";
  out.passed = out.closure_in_kernel;
  return out;
}

QuotientCheck quotient_match(const WreathGroup& w, const DownSet& gamma, const WreathGroup& target,
                             std::span<const std::size_t> element_map) {
  QuotientCheck out;
  const ConfigSpace& space = w.space();
  const ConfigSpace& tspace = target.space();
  out.target_degree = tspace.total();
  const Subset outside = gamma.complement();

  std::vector<std::size_t> expected;
  for (std::size_t lam = 0; lam < outside.size(); ++lam)
    if (outside[lam]) expected.push_back(lam);
  if (element_map.size() != tspace.poset().size() ||
      !std::equal(element_map.begin(), element_map.end(), expected.begin(), expected.end())) {
    out.failure = "target elements do not correspond to the complement of " + gamma.label();
    return out;
  }
  for (std::size_t k = 0; k < element_map.size(); ++k) {
    for (std::size_t k2 = 0; k2 < element_map.size(); ++k2)
      if (tspace.poset().leq(k, k2) != space.poset().leq(element_map[k], element_map[k2])) {
        out.failure = "target order differs from the inherited order";
        return out;
      }
    if (!(tspace.factors()[k] == space.factors()[element_map[k]])) {
      out.failure = "target factor " + std::to_string(k) + " differs from the inherited factor";
      return out;
    }
  }

  ClassPartition part = classes_mod_gamma(space, gamma);
  if (part.count() != tspace.total()) {
    out.failure = "class count differs from the target configuration count";
    return out;
  }
  out.relabel.resize(part.count());
  std::vector<Index> coords(element_map.size());
  for (std::size_t c = 0; c < part.count(); ++c) {
    for (std::size_t k = 0; k < element_map.size(); ++k)
      coords[k] = space.digit(part.representatives[c], element_map[k]);
    out.relabel[c] = tspace.encode(coords);
  }

  for (std::size_t g = 0; g < w.generators().size(); ++g) {
    const XiLabel label = w.generator_labels()[g];
    Permutation action = induced_action(part, w.generators()[g]);
    ++out.checked_generators;
    if (gamma.contains(label.lambda)) {
      if (!action.is_identity()) {
        out.failure = "generator inside gamma acts non-trivially on the classes";
        out.mismatch = QuotientMismatch{label.lambda, label.h,
                                        part.representatives[action.first_moved()]};
        return out;
      }
      continue;
    }
    std::size_t k = static_cast<std::size_t>(
        std::find(element_map.begin(), element_map.end(), label.lambda) - element_map.begin());
    const Permutation& image = target.xi(k, label.h);
    for (std::size_t c = 0; c < part.count(); ++c)
      if (out.relabel[action[static_cast<Point>(c)]] != image[static_cast<Point>(out.relabel[c])]) {
        out.failure = "quotient action differs from the target generator";
        out.mismatch = QuotientMismatch{label.lambda, label.h, part.representatives[c]};
        return out;
      }
  }
  out.ok = true;
  return out;
}

QuotientCheck quotient_iso_check(const WreathGroup& w, const DownSet& gamma) {
  const Subset outside = gamma.complement();
  std::vector<std::size_t> element_map;
  std::vector<FiniteGroup> factors;
  for (std::size_t lam = 0; lam < outside.size(); ++lam)
    if (outside[lam]) {
      element_map.push_back(lam);
      factors.push_back(w.space().factors()[lam]);
    }
  WreathGroup target(ConfigSpace(restrict(w.space().poset(), outside), std::move(factors)),
                     w.engine());
  return quotient_match(w, gamma, target, element_map);
}

NormalSubgroupClassification classify_normal_subgroups_small(const WreathGroup& w,
                                                              std::uint64_t oracle_cap) {
  const GroupHandle& whole = w.handle();
  if (whole.order() > oracle_cap)
    throw CapError("group order " + to_decimal(whole.order()) + " exceeds the oracle cap of " +
                   std::to_string(oracle_cap));
  NormalSubgroupClassification out;
  out.group_order = whole.order();
  ElementTable table = element_table(whole, oracle_cap, "wreath");
  out.normal_subgroups = normal_subgroups_bruteforce(table.group);
  out.downsets = downsets(w.space().poset());

  std::vector<SubgroupSet> kernels;
  for (const DownSet& gamma : out.downsets) {
    GroupHandle d = d_gamma_group(w, gamma);
    out.d_orders.push_back(d.order());
    SubgroupSet set{std::vector<bool>(table.group.size(), false)};
    for (Index i : subgroup_indices(whole, d, oracle_cap)) set.members[i] = true;
    std::optional<std::size_t> match;
    for (std::size_t k = 0; k < out.normal_subgroups.size(); ++k)
      if (out.normal_subgroups[k] == set) match = k;
    out.d_match.push_back(match);
    kernels.push_back(std::move(set));
  }
  for (std::size_t k = 0; k < out.normal_subgroups.size(); ++k)
    if (std::find(out.d_match.begin(), out.d_match.end(), std::optional<std::size_t>(k)) ==
        out.d_match.end())
      out.unmatched.push_back(k);
  for (std::size_t a = 0; a < kernels.size(); ++a)
    for (std::size_t b = a + 1; b < kernels.size(); ++b)
      if (kernels[a] == kernels[b]) out.collisions.emplace_back(a, b);
  return out;
}

}  // namespace gwr
