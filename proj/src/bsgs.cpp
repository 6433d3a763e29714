#include "gwr/bsgs.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <string>
#include <thread>

#include "gwr/error.hpp"

namespace gwr {

namespace detail {

namespace {

constexpr std::uint32_t kNoEdge = std::numeric_limits<std::uint32_t>::max();

struct Level {
  Point base = 0;
  std::vector<Point> orbit;        // discovery order; orbit[0] == base
  std::vector<std::int32_t> slot;  // point -> position in orbit, or -1
  std::vector<Permutation> transversal;
  std::vector<Permutation> inverse;
  // Schreier tree: transversal[p] == strong[via[p]] ∘ transversal[parent[p]].
  std::vector<std::uint32_t> parent;
  std::vector<std::uint32_t> via;
  std::vector<std::uint32_t> gens;  // indices into the strong generator list
  // Schreier generators for (orbit[p], gens[k]) with k < tested[p] are known
  // to sift through the deeper levels.
  std::vector<std::uint32_t> tested;
  std::size_t closed_points = 0;
  std::size_t closed_gens = 0;
};

struct Residue {
  Permutation element;
  std::size_t level;
};

}  // namespace

class StabilizerChain {
 public:
  StabilizerChain(std::size_t degree, EngineConfig config) : degree_(degree), config_(config) {}

  /// Adds g to the generating set; false when g was already a member.
  bool add_generator(const Permutation& g) {
    Permutation h = g;
    Permutation scratch(degree_);
    std::size_t j = sift(h, scratch, 0);
    if (j == levels_.size() && h.is_identity()) return false;
    add_residue(std::move(h), j, 0);
    complete(j);
    return true;
  }

  bool contains(const Permutation& g) const {
    if (g.degree() != degree_) return false;
    Permutation h = g;
    Permutation scratch(degree_);
    return sift(h, scratch, 0) == levels_.size() && h.is_identity();
  }

  /// Strips g through levels from..end in place. Returns the first level
  /// whose orbit misses g's base image, or levels_.size().
  std::size_t sift(Permutation& g, Permutation& scratch, std::size_t from) const {
    for (std::size_t l = from; l < levels_.size(); ++l) {
      const Level& lv = levels_[l];
      std::int32_t s = lv.slot[g[lv.base]];
      if (s < 0) return l;
      if (s == 0) continue;
      compose_into(scratch, lv.inverse[static_cast<std::size_t>(s)], g);
      std::swap(g, scratch);
    }
    return levels_.size();
  }

  BigInt order() const {
    BigInt out = 1;
    for (const Level& lv : levels_) out *= lv.orbit.size();
    return out;
  }

  std::size_t degree() const { return degree_; }
  std::size_t bytes() const { return bytes_; }
  std::uint64_t sifted() const { return sifted_; }
  const std::vector<Permutation>& strong() const { return strong_; }
  std::size_t length() const { return levels_.size(); }
  const Level& level(std::size_t l) const { return levels_[l]; }

 private:
  void charge(std::size_t extra) {
    if (bytes_ + extra > config_.memory_budget)
      throw MemoryBudgetError(
          "stabilizer chain storage would reach " + std::to_string(bytes_ + extra) +
          " bytes (degree " + std::to_string(degree_) + ", base length " +
          std::to_string(levels_.size()) + ", strong generators " +
          std::to_string(strong_.size()) + "), exceeding the memory budget of " +
          std::to_string(config_.memory_budget) + " bytes");
    bytes_ += extra;
  }

  std::size_t point_bytes() const { return 2 * degree_ * sizeof(Point); }

  void add_point(Level& lv, Point q, std::size_t parent, std::uint32_t gen) {
    charge(point_bytes());
    const Permutation& s = strong_[gen];
    Permutation u(degree_);
    compose_into(u, s, lv.transversal[parent]);
    lv.slot[q] = static_cast<std::int32_t>(lv.orbit.size());
    lv.orbit.push_back(q);
    lv.inverse.push_back(inverse(u));
    lv.transversal.push_back(std::move(u));
    lv.parent.push_back(static_cast<std::uint32_t>(parent));
    lv.via.push_back(gen);
    lv.tested.push_back(0);
  }

  void new_level(Point base) {
    charge(degree_ * sizeof(std::int32_t) + point_bytes());
    Level lv;
    lv.base = base;
    lv.slot.assign(degree_, -1);
    lv.slot[base] = 0;
    lv.orbit.push_back(base);
    lv.transversal.emplace_back(degree_);
    lv.inverse.emplace_back(degree_);
    lv.parent.push_back(0);
    lv.via.push_back(kNoEdge);
    lv.tested.push_back(0);
    levels_.push_back(std::move(lv));
  }

  void extend_orbit(Level& lv) {
    for (std::size_t p = 0; p < lv.orbit.size(); ++p) {
      std::size_t k0 = p < lv.closed_points ? lv.closed_gens : 0;
      for (std::size_t k = k0; k < lv.gens.size(); ++k) {
        Point q = strong_[lv.gens[k]][lv.orbit[p]];
        if (lv.slot[q] < 0) add_point(lv, q, p, lv.gens[k]);
      }
    }
    lv.closed_points = lv.orbit.size();
    lv.closed_gens = lv.gens.size();
  }

  // h fixes the base points of levels < to; it becomes a strong generator
  // of levels from..to, creating level `to` when needed.
  void add_residue(Permutation h, std::size_t to, std::size_t from) {
    if (to == levels_.size()) new_level(static_cast<Point>(h.first_moved()));
    auto idx = static_cast<std::uint32_t>(strong_.size());
    strong_.push_back(std::move(h));
    for (std::size_t l = from; l <= to; ++l) {
      levels_[l].gens.push_back(idx);
      extend_orbit(levels_[l]);
    }
  }

  void complete(std::size_t start) {
    auto i = static_cast<std::ptrdiff_t>(start);
    while (i >= 0) {
      auto l = static_cast<std::size_t>(i);
      if (auto r = process_level(l)) {
        std::size_t j = r->level;
        add_residue(std::move(r->element), j, l + 1);
        i = static_cast<std::ptrdiff_t>(j);
      } else {
        --i;
      }
    }
  }

  struct Pair {
    std::uint32_t point;
    std::uint32_t gen;  // position in Level::gens
  };

  struct Scratch {
    explicit Scratch(std::size_t degree) : a(degree), b(degree), c(degree) {}
    Permutation a, b, c;
  };

  // Sifts the Schreier generator for pair (p, k) at level l. Returns the
  // non-trivial residue, if any.
  std::optional<Residue> test_pair(std::size_t l, Pair pair, Scratch& scratch) const {
    const Level& lv = levels_[l];
    std::uint32_t gi = lv.gens[pair.gen];
    const Permutation& s = strong_[gi];
    Point q = s[lv.orbit[pair.point]];
    auto qs = static_cast<std::size_t>(lv.slot[q]);
    if (qs != 0 && lv.parent[qs] == pair.point && lv.via[qs] == gi) return std::nullopt;
    compose_into(scratch.a, s, lv.transversal[pair.point]);
    compose_into(scratch.b, lv.inverse[qs], scratch.a);
    std::size_t j = sift(scratch.b, scratch.c, l + 1);
    if (j == levels_.size() && scratch.b.is_identity()) return std::nullopt;
    return Residue{scratch.b, j};
  }

  std::optional<Residue> run_batch(std::size_t l, const std::vector<Pair>& batch) {
    std::vector<std::optional<Residue>> results(batch.size());
    unsigned threads = std::max(1u, config_.threads);
    if (threads == 1 || batch.size() == 1) {
      Scratch scratch(degree_);
      for (std::size_t idx = 0; idx < batch.size(); ++idx) {
        ++sifted_;
        results[idx] = test_pair(l, batch[idx], scratch);
        if (results[idx]) break;
      }
    } else {
      // Every pair before the first failure is evaluated, so the outcome
      // does not depend on scheduling.
      std::atomic<std::size_t> first_failure{batch.size()};
      std::atomic<std::uint64_t> count{0};
      auto worker = [&](unsigned t) {
        Scratch scratch(degree_);
        for (std::size_t idx = t; idx < batch.size(); idx += threads) {
          if (idx > first_failure.load(std::memory_order_relaxed)) break;
          count.fetch_add(1, std::memory_order_relaxed);
          results[idx] = test_pair(l, batch[idx], scratch);
          if (results[idx]) {
            std::size_t cur = first_failure.load();
            while (idx < cur && !first_failure.compare_exchange_weak(cur, idx)) {
            }
          }
        }
      };
      std::vector<std::thread> pool;
      for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker, t);
      worker(0);
      for (auto& th : pool) th.join();
      sifted_ += count.load();
    }
    Level& lv = levels_[l];
    for (std::size_t idx = 0; idx < batch.size(); ++idx) {
      if (results[idx]) {
        lv.tested[batch[idx].point] = batch[idx].gen;
        return std::move(results[idx]);
      }
      lv.tested[batch[idx].point] = batch[idx].gen + 1;
    }
    return std::nullopt;
  }

  std::optional<Residue> process_level(std::size_t l) {
    const std::size_t batch_cap = config_.threads > 1 ? 16 * std::size_t{config_.threads} : 1;
    std::vector<Pair> batch;
    batch.reserve(batch_cap);
    const std::size_t points = levels_[l].orbit.size();
    for (std::size_t p = 0; p < points; ++p) {
      const std::size_t gens = levels_[l].gens.size();
      for (std::size_t k = levels_[l].tested[p]; k < gens; ++k) {
        batch.push_back({static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(k)});
        if (batch.size() == batch_cap) {
          if (auto r = run_batch(l, batch)) return r;
          batch.clear();
        }
      }
    }
    if (!batch.empty()) return run_batch(l, batch);
    return std::nullopt;
  }

  std::size_t degree_;
  EngineConfig config_;
  std::vector<Level> levels_;
  std::vector<Permutation> strong_;
  std::size_t bytes_ = 0;
  std::uint64_t sifted_ = 0;
};

}  // namespace detail

namespace {

void require_degree(const Permutation& p, std::size_t degree) {
  if (p.degree() != degree)
    throw ValidationError("generator degree " + std::to_string(p.degree()) +
                          " does not match group degree " + std::to_string(degree));
}

}  // namespace

class ClosureBuilder {
 public:
  static GroupHandle make(std::size_t degree, std::vector<Permutation> generators,
                          std::vector<Permutation> irredundant,
                          std::shared_ptr<const detail::StabilizerChain> chain) {
    return GroupHandle(degree, std::move(generators), std::move(irredundant), std::move(chain));
  }
};

GroupHandle::GroupHandle(std::size_t degree, std::vector<Permutation> generators,
                         EngineConfig config)
    : degree_(degree), generators_(std::move(generators)) {
  if (degree > degree_cap())
    throw CapError("group degree " + std::to_string(degree) + " exceeds degree cap " +
                   std::to_string(degree_cap()));
  auto chain = std::make_shared<detail::StabilizerChain>(degree, config);
  for (const Permutation& g : generators_) {
    require_degree(g, degree);
    if (chain->add_generator(g)) irredundant_.push_back(g);
  }
  order_ = chain->order();
  chain_ = std::move(chain);
}

GroupHandle::GroupHandle(std::size_t degree, std::vector<Permutation> generators,
                         std::vector<Permutation> irredundant,
                         std::shared_ptr<const detail::StabilizerChain> chain)
    : degree_(degree),
      generators_(std::move(generators)),
      irredundant_(std::move(irredundant)),
      chain_(std::move(chain)) {
  order_ = chain_->order();
}

const BigInt& GroupHandle::order() const noexcept { return order_; }

bool GroupHandle::contains(const Permutation& p) const {
  require_degree(p, degree_);
  return chain_->contains(p);
}

std::vector<Point> GroupHandle::base() const {
  std::vector<Point> out;
  for (std::size_t l = 0; l < chain_->length(); ++l) out.push_back(chain_->level(l).base);
  return out;
}

std::vector<std::size_t> GroupHandle::transversal_sizes() const {
  std::vector<std::size_t> out;
  for (std::size_t l = 0; l < chain_->length(); ++l)
    out.push_back(chain_->level(l).orbit.size());
  return out;
}

const std::vector<Permutation>& GroupHandle::strong_generators() const { return chain_->strong(); }

ChainStats GroupHandle::stats() const {
  return {chain_->length(), chain_->strong().size(), chain_->bytes(), chain_->sifted()};
}

std::vector<Permutation> GroupHandle::elements(std::uint64_t limit) const {
  if (order() > limit)
    throw CapError("group order " + to_decimal(order()) + " exceeds enumeration cap " +
                   std::to_string(limit));
  std::vector<Permutation> out;
  out.reserve(static_cast<std::size_t>(order()));
  const std::size_t m = chain_->length();
  std::vector<Permutation> prefix(m + 1, Permutation(degree_));
  // Depth-first walk; prefix[l] = u_0 ∘ ... ∘ u_{l-1}.
  auto walk = [&](auto&& self, std::size_t l) -> void {
    if (l == m) {
      out.push_back(prefix[m]);
      return;
    }
    const auto& lv = chain_->level(l);
    for (const Permutation& u : lv.transversal) {
      compose_into(prefix[l + 1], prefix[l], u);
      self(self, l + 1);
    }
  };
  walk(walk, 0);
  return out;
}

std::optional<std::uint64_t> GroupHandle::element_index(const Permutation& member) const {
  require_degree(member, degree_);
  std::vector<Point> images;
  for (std::size_t l = 0; l < chain_->length(); ++l) images.push_back(member[chain_->level(l).base]);
  return index_from_base_images(images);
}

std::optional<std::uint64_t> GroupHandle::index_from_base_images(
    std::span<const Point> images) const {
  const std::size_t m = chain_->length();
  if (images.size() != m) throw ValidationError("expected one image per base point");
  std::vector<std::size_t> digits(m);
  std::uint64_t index = 0;
  for (std::size_t l = 0; l < m; ++l) {
    // Strip u_0 .. u_{l-1} off the image of the l-th base point.
    Point y = images[l];
    for (std::size_t k = 0; k < l; ++k) y = chain_->level(k).inverse[digits[k]][y];
    std::int32_t s = chain_->level(l).slot[y];
    if (s < 0) return std::nullopt;
    digits[l] = static_cast<std::size_t>(s);
    index = index * chain_->level(l).orbit.size() + digits[l];
  }
  return index;
}

GroupHandle build_group(std::vector<Permutation> generators, std::size_t degree,
                        EngineConfig config) {
  return GroupHandle(degree, std::move(generators), config);
}

bool contains(const GroupHandle& h, const Permutation& p) { return h.contains(p); }

namespace {

std::pair<std::vector<Permutation>, std::shared_ptr<detail::StabilizerChain>> closure_impl(
    std::span<const Permutation> ambient, std::span<const Permutation> seeds, std::size_t degree,
    EngineConfig config) {
  for (const Permutation& a : ambient) require_degree(a, degree);
  auto chain = std::make_shared<detail::StabilizerChain>(degree, config);
  std::vector<Permutation> gens;
  for (const Permutation& s : seeds) {
    require_degree(s, degree);
    if (chain->add_generator(s)) gens.push_back(s);
  }
  for (std::size_t idx = 0; idx < gens.size(); ++idx) {
    for (const Permutation& a : ambient) {
      Permutation c = conjugate(gens[idx], a);
      if (chain->add_generator(c)) gens.push_back(std::move(c));
    }
  }
  return {std::move(gens), std::move(chain)};
}

}  // namespace

std::vector<Permutation> normal_closure(std::span<const Permutation> ambient,
                                        std::span<const Permutation> seeds, std::size_t degree,
                                        EngineConfig config) {
  return closure_impl(ambient, seeds, degree, config).first;
}

GroupHandle normal_closure_group(std::span<const Permutation> ambient,
                                 std::span<const Permutation> seeds, std::size_t degree,
                                 EngineConfig config) {
  auto [gens, chain] = closure_impl(ambient, seeds, degree, config);
  std::vector<Permutation> irredundant = gens;
  return ClosureBuilder::make(degree, std::move(gens), std::move(irredundant), std::move(chain));
}

bool same_subgroup(const GroupHandle& a, const GroupHandle& b) {
  if (a.degree() != b.degree())
    throw ValidationError("same_subgroup: degree mismatch (" + std::to_string(a.degree()) +
                          " vs " + std::to_string(b.degree()) + ")");
  for (const Permutation& g : a.irredundant_generators())
    if (!b.contains(g)) return false;
  for (const Permutation& g : b.irredundant_generators())
    if (!a.contains(g)) return false;
  return a.order() == b.order();
}

}  // namespace gwr
