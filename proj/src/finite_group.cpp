#include "gwr/finite_group.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>

#include "gwr/error.hpp"

namespace gwr {

namespace {

std::vector<Index> compute_inverses(const std::vector<Index>& mul, std::size_t size) {
  std::vector<Index> inv(size, 0);
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = 0; b < size; ++b)
      if (mul[a * size + b] == 0) {
        inv[a] = static_cast<Index>(b);
        break;
      }
  return inv;
}

void validate_table(const std::vector<Index>& mul, std::size_t size) {
  if (size == 0) throw ValidationError("group table is empty");
  if (mul.size() != size * size)
    throw ValidationError("group table must be " + std::to_string(size) + "x" +
                          std::to_string(size));
  auto at = [&](std::size_t a, std::size_t b) { return mul[a * size + b]; };
  for (Index x : mul)
    if (x >= size) throw ValidationError("group table entry " + std::to_string(x) + " out of range");
  for (std::size_t a = 0; a < size; ++a)
    if (at(0, a) != a || at(a, 0) != a)
      throw ValidationError("element 0 must be the identity of the group table");
  std::vector<bool> seen(size);
  for (std::size_t a = 0; a < size; ++a) {
    std::fill(seen.begin(), seen.end(), false);
    for (std::size_t b = 0; b < size; ++b) {
      if (seen[at(a, b)]) throw ValidationError("group table row " + std::to_string(a) + " repeats an entry");
      seen[at(a, b)] = true;
    }
    std::fill(seen.begin(), seen.end(), false);
    for (std::size_t b = 0; b < size; ++b) {
      if (seen[at(b, a)]) throw ValidationError("group table column " + std::to_string(a) + " repeats an entry");
      seen[at(b, a)] = true;
    }
  }
  auto check = [&](std::size_t a, std::size_t b, std::size_t c) {
    if (at(at(a, b), c) != at(a, at(b, c)))
      throw ValidationError("group table is not associative at (" + std::to_string(a) + ", " +
                            std::to_string(b) + ", " + std::to_string(c) + ")");
  };
  if (size <= 200) {
    for (std::size_t a = 0; a < size; ++a)
      for (std::size_t b = 0; b < size; ++b)
        for (std::size_t c = 0; c < size; ++c) check(a, b, c);
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::size_t> pick(0, size - 1);
    for (int i = 0; i < 200'000; ++i) check(pick(rng), pick(rng), pick(rng));
  }
}

FiniteGroup permutation_group_table(std::vector<Permutation> elements, std::string label) {
  std::sort(elements.begin(), elements.end());
  return FiniteGroup::from_permutations(elements, std::move(label));
}

std::vector<Permutation> all_permutations(std::size_t degree, bool even_only) {
  std::vector<Point> images(degree);
  for (std::size_t i = 0; i < degree; ++i) images[i] = static_cast<Point>(i);
  std::vector<Permutation> out;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < degree; ++i)
      for (std::size_t j = i + 1; j < degree; ++j) inversions += images[i] > images[j];
    if (!even_only || inversions % 2 == 0) out.push_back(Permutation::from_images(images));
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

FiniteGroup cyclic(std::size_t n) {
  std::vector<Index> mul(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) mul[a * n + b] = static_cast<Index>((a + b) % n);
  return FiniteGroup::from_table(std::move(mul), n, "Z" + std::to_string(n));
}

void require_oracle_size(const FiniteGroup& g, const char* what) {
  if (g.size() > kMaxOracleGroupSize)
    throw CapError(std::string(what) + ": group of size " + std::to_string(g.size()) +
                   " exceeds the oracle cap of " + std::to_string(kMaxOracleGroupSize));
}

}  // namespace

FiniteGroup::FiniteGroup(std::vector<Index> mul, std::size_t size, std::string label)
    : size_(size), mul_(std::move(mul)), label_(std::move(label)) {
  inv_ = compute_inverses(mul_, size_);
}

FiniteGroup FiniteGroup::from_table(std::vector<Index> mul, std::size_t size, std::string label) {
  validate_table(mul, size);
  return FiniteGroup(std::move(mul), size, std::move(label));
}

FiniteGroup FiniteGroup::from_trusted_table(std::vector<Index> mul, std::size_t size,
                                            std::string label) {
  return FiniteGroup(std::move(mul), size, std::move(label));
}

FiniteGroup FiniteGroup::from_permutations(const std::vector<Permutation>& elements,
                                           std::string label) {
  if (elements.empty() || !elements.front().is_identity())
    throw ValidationError("permutation group elements must start with the identity");
  std::map<std::vector<Point>, Index> index;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    auto images = elements[i].images();
    if (!index.emplace(std::vector<Point>(images.begin(), images.end()), static_cast<Index>(i)).second)
      throw ValidationError("permutation group elements repeat");
  }
  const std::size_t n = elements.size();
  std::vector<Index> mul(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Permutation c = compose(elements[a], elements[b]);
      auto it = index.find(std::vector<Point>(c.images().begin(), c.images().end()));
      if (it == index.end()) throw ValidationError("permutation set is not closed under composition");
      mul[a * n + b] = it->second;
    }
  return FiniteGroup(std::move(mul), n, std::move(label));
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t a = 0; a < size_; ++a)
    for (std::size_t b = a + 1; b < size_; ++b)
      if (mul_[a * size_ + b] != mul_[b * size_ + a]) return false;
  return true;
}

std::size_t FiniteGroup::element_order(Index a) const {
  std::size_t k = 1;
  for (Index x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

std::vector<Permutation> a5_permutations() { return all_permutations(5, true); }

std::vector<std::string> builtin_group_names() { return {"A5", "Z2", "Z3", "Z4", "S3", "V4", "D4"}; }

FiniteGroup builtin_group(std::string_view name) {
  if (name == "A5") return permutation_group_table(a5_permutations(), "A5");
  if (name == "Z2") return cyclic(2);
  if (name == "Z3") return cyclic(3);
  if (name == "Z4") return cyclic(4);
  if (name == "S3") return permutation_group_table(all_permutations(3, false), "S3");
  if (name == "V4") {
    std::vector<Index> mul(16);
    for (Index a = 0; a < 4; ++a)
      for (Index b = 0; b < 4; ++b) mul[a * 4 + b] = a ^ b;
    return FiniteGroup::from_table(std::move(mul), 4, "V4");
  }
  if (name == "D4") {
    // Symmetries of a square with vertices 0..3 in cyclic order.
    std::vector<Permutation> elements;
    for (const Permutation& p : all_permutations(4, false)) {
      bool preserves_edges = true;
      for (Point v = 0; v < 4; ++v) {
        Point a = p(v), b = p((v + 1) % 4);
        if ((a + 1) % 4 != b && (b + 1) % 4 != a) preserves_edges = false;
      }
      if (preserves_edges) elements.push_back(p);
    }
    return permutation_group_table(std::move(elements), "D4");
  }
  throw ValidationError("unknown builtin group '" + std::string(name) + "'");
}

std::size_t SubgroupSet::order() const {
  return static_cast<std::size_t>(std::count(members.begin(), members.end(), true));
}

std::vector<Index> SubgroupSet::elements() const {
  std::vector<Index> out;
  for (std::size_t i = 0; i < members.size(); ++i)
    if (members[i]) out.push_back(static_cast<Index>(i));
  return out;
}

SubgroupSet subgroup_closure(const FiniteGroup& g, std::span<const Index> elements) {
  SubgroupSet h{std::vector<bool>(g.size(), false)};
  h.members[0] = true;
  std::vector<Index> gens;
  std::vector<Index> list{0};
  for (Index e : elements) {
    if (h.members[e]) continue;
    gens.push_back(e);
    // Extend by multiplying every member (old and new) by every generator.
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (Index s : gens) {
        Index y = g.mul(list[i], s);
        if (!h.members[y]) {
          h.members[y] = true;
          list.push_back(y);
        }
      }
    }
  }
  return h;
}

std::vector<Index> small_generating_set(const FiniteGroup& g) {
  std::vector<Index> gens;
  SubgroupSet h = subgroup_closure(g, gens);
  for (Index a = 1; a < g.size(); ++a) {
    if (h.members[a]) continue;
    gens.push_back(a);
    h = subgroup_closure(g, gens);
  }
  return gens;
}

std::vector<std::vector<Index>> conjugacy_classes(const FiniteGroup& g) {
  require_oracle_size(g, "conjugacy_classes");
  std::vector<bool> assigned(g.size(), false);
  std::vector<std::vector<Index>> classes;
  for (Index x = 0; x < g.size(); ++x) {
    if (assigned[x]) continue;
    std::vector<Index> cls;
    for (Index y = 0; y < g.size(); ++y) {
      Index c = g.mul(g.mul(y, x), g.inv(y));
      if (!assigned[c]) {
        assigned[c] = true;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

std::vector<SubgroupSet> normal_subgroups_bruteforce(const FiniteGroup& g) {
  require_oracle_size(g, "normal_subgroups_bruteforce");
  auto classes = conjugacy_classes(g);
  if (classes.size() > kMaxOracleClasses)
    throw CapError("normal_subgroups_bruteforce: " + std::to_string(classes.size()) +
                   " conjugacy classes exceed the cap of " + std::to_string(kMaxOracleClasses));

  // The subgroup generated by a union of classes containing the identity is
  // normal, and every normal subgroup arises this way; joining one class at
  // a time from the trivial subgroup reaches all of them.
  std::set<std::vector<bool>> seen;
  std::vector<SubgroupSet> found;
  SubgroupSet trivial = subgroup_closure(g, std::span<const Index>{});
  seen.insert(trivial.members);
  found.push_back(trivial);
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (const auto& cls : classes) {
      if (found[i].members[cls.front()]) continue;
      std::vector<Index> gens = found[i].elements();
      gens.insert(gens.end(), cls.begin(), cls.end());
      SubgroupSet joined = subgroup_closure(g, gens);
      if (seen.insert(joined.members).second) found.push_back(std::move(joined));
    }
  }
  std::sort(found.begin(), found.end(), [](const SubgroupSet& a, const SubgroupSet& b) {
    std::size_t oa = a.order(), ob = b.order();
    if (oa != ob) return oa < ob;
    return a.members > b.members;  // earlier elements first
  });
  return found;
}

std::vector<Endomorphism> endomorphisms(const FiniteGroup& g, std::span<const Index> gens) {
  require_oracle_size(g, "endomorphisms");
  for (Index s : gens)
    if (s >= g.size()) throw ValidationError("generator index " + std::to_string(s) + " out of range");
  double assignments = std::pow(static_cast<double>(g.size()), static_cast<double>(gens.size()));
  if (assignments > kMaxEndomorphismAssignments)
    throw CapError("endomorphisms: " + std::to_string(g.size()) + "^" +
                   std::to_string(gens.size()) + " generator assignments exceed the cap of 1e8");

  // Word table: every element as parent · gens[via], in breadth-first order.
  const std::size_t n = g.size();
  std::vector<Index> order{0};
  std::vector<Index> parent(n, 0), via(n, 0);
  std::vector<bool> reached(n, false);
  reached[0] = true;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Index y = g.mul(order[i], gens[k]);
      if (!reached[y]) {
        reached[y] = true;
        parent[y] = order[i];
        via[y] = static_cast<Index>(k);
        order.push_back(y);
      }
    }
  if (order.size() != n) throw ValidationError("endomorphisms: the given elements do not generate the group");

  std::vector<std::vector<Index>> candidates(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k) {
    std::size_t ord = g.element_order(gens[k]);
    for (Index y = 0; y < n; ++y)
      if (ord % g.element_order(y) == 0) candidates[k].push_back(y);
  }

  std::vector<Endomorphism> out;
  std::vector<Index> images(gens.size());
  Endomorphism phi(n);
  // Defining phi along the word table and checking phi(x s) = phi(x) phi(s)
  // for every x and generator s proves phi multiplicative.
  auto try_assignment = [&] {
    phi[0] = 0;
    for (std::size_t i = 1; i < n; ++i) {
      Index x = order[i];
      phi[x] = g.mul(phi[parent[x]], images[via[x]]);
    }
    for (Index x = 0; x < n; ++x)
      for (std::size_t k = 0; k < gens.size(); ++k)
        if (phi[g.mul(x, gens[k])] != g.mul(phi[x], images[k])) return;
    out.push_back(phi);
  };
  auto assign = [&](auto&& self, std::size_t k) -> void {
    if (k == gens.size()) {
      try_assignment();
      return;
    }
    for (Index y : candidates[k]) {
      images[k] = y;
      self(self, k + 1);
    }
  };
  assign(assign, 0);
  std::sort(out.begin(), out.end());
  return out;
}

HopfianCheck hopfian_check_bruteforce(const FiniteGroup& g, std::span<const Index> gens) {
  HopfianCheck result;
  auto maps = endomorphisms(g, gens);
  result.endomorphism_count = maps.size();
  result.hopfian = true;
  std::vector<bool> hit(g.size());
  for (auto& phi : maps) {
    std::fill(hit.begin(), hit.end(), false);
    std::size_t distinct = 0;
    std::size_t kernel = 0;
    for (Index x = 0; x < g.size(); ++x) {
      if (!hit[phi[x]]) {
        hit[phi[x]] = true;
        ++distinct;
      }
      if (phi[x] == 0) ++kernel;
    }
    if (distinct == g.size()) {
      if (kernel != 1) result.hopfian = false;
      result.surjective.push_back(std::move(phi));
    }
  }
  return result;
}

}  // namespace gwr
