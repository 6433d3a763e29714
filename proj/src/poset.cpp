#include "gwr/poset.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "gwr/error.hpp"

namespace gwr {

namespace {

void require_positive(std::size_t n, const char* what) {
  if (n == 0) throw ValidationError(std::string(what) + ": element count must be positive");
}

void require_universe(const Poset& p, const Subset& s) {
  if (s.size() != p.size())
    throw ValidationError("subset over " + std::to_string(s.size()) +
                          " elements does not match poset of size " + std::to_string(p.size()));
}

}  // namespace

Poset Poset::from_relation(std::size_t n, std::vector<bool> leq) {
  if (leq.size() != n * n) throw ValidationError("order relation must be n x n");
  auto at = [&](std::size_t i, std::size_t j) { return leq[i * n + j]; };
  for (std::size_t i = 0; i < n; ++i)
    if (!at(i, i)) throw ValidationError("order relation is not reflexive at " + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && at(i, j) && at(j, i))
        throw ValidationError("order relation is not antisymmetric on (" + std::to_string(i) +
                              ", " + std::to_string(j) + ")");
      if (!at(i, j)) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (at(j, k) && !at(i, k))
          throw ValidationError("order relation is not transitive on (" + std::to_string(i) +
                                ", " + std::to_string(j) + ", " + std::to_string(k) + ")");
    }
  return Poset(n, std::move(leq));
}

Poset Poset::from_covers(std::size_t n,
                         const std::vector<std::pair<std::size_t, std::size_t>>& covers) {
  std::vector<bool> leq(n * n, false);
  for (std::size_t i = 0; i < n; ++i) leq[i * n + i] = true;
  for (auto [a, b] : covers) {
    if (a >= n || b >= n) throw ValidationError("covering relation names an unknown element");
    if (a == b) throw ValidationError("covering relation " + std::to_string(a) + " < itself");
    leq[a * n + b] = true;
  }
  // Warshall closure.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (leq[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (leq[k * n + j]) leq[i * n + j] = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (leq[i * n + j] && leq[j * n + i])
        throw ValidationError("covering relations form a cycle through elements " +
                              std::to_string(i) + " and " + std::to_string(j));
  return from_relation(n, std::move(leq));
}

std::vector<std::size_t> Poset::strictly_above(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < n_; ++j)
    if (less(i, j)) out.push_back(j);
  return out;
}

Poset make_chain(std::size_t n) {
  require_positive(n, "make_chain");
  std::vector<bool> leq(n * n, false);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) leq[i * n + j] = true;
  return Poset::from_relation(n, std::move(leq));
}

Poset make_antichain(std::size_t n) {
  require_positive(n, "make_antichain");
  std::vector<bool> leq(n * n, false);
  for (std::size_t i = 0; i < n; ++i) leq[i * n + i] = true;
  return Poset::from_relation(n, std::move(leq));
}

Poset make_empty_poset() { return Poset::from_relation(0, {}); }

Poset opposite(const Poset& p) {
  const std::size_t n = p.size();
  std::vector<bool> leq(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) leq[i * n + j] = p.leq(j, i);
  return Poset::from_relation(n, std::move(leq));
}

bool is_linear(const Poset& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (!p.leq(i, j) && !p.leq(j, i)) return false;
  return true;
}

bool is_down_closed(const Poset& p, const Subset& s) {
  require_universe(p, s);
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (!s[j]) continue;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p.leq(i, j) && !s[i]) return false;
  }
  return true;
}

bool is_up_closed(const Poset& p, const Subset& s) { return is_down_closed(opposite(p), s); }

Poset restrict(const Poset& p, const Subset& s) {
  require_universe(p, s);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (s[i]) kept.push_back(i);
  const std::size_t m = kept.size();
  std::vector<bool> leq(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) leq[a * m + b] = p.leq(kept[a], kept[b]);
  return Poset::from_relation(m, std::move(leq));
}

DownSet::DownSet(const Poset& p, Subset s) : members_(std::move(s)) {
  if (!is_down_closed(p, members_))
    throw ValidationError("subset " + label() + " is not downward closed");
}

std::size_t DownSet::cardinality() const {
  return static_cast<std::size_t>(std::count(members_.begin(), members_.end(), true));
}

std::uint64_t DownSet::mask() const {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < members_.size() && i < 64; ++i)
    if (members_[i]) m |= std::uint64_t{1} << i;
  return m;
}

std::vector<std::size_t> DownSet::elements() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < members_.size(); ++i)
    if (members_[i]) out.push_back(i);
  return out;
}

Subset DownSet::complement() const {
  Subset out(members_.size());
  for (std::size_t i = 0; i < members_.size(); ++i) out[i] = !members_[i];
  return out;
}

std::string DownSet::label() const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (!members_[i]) continue;
    if (!first) out += ",";
    first = false;
    out += std::to_string(i);
  }
  return out + "}";
}

bool canonical_less(const DownSet& a, const DownSet& b) {
  std::size_t ca = a.cardinality(), cb = b.cardinality();
  if (ca != cb) return ca < cb;
  return a.mask() < b.mask();
}

bool is_subset(const Subset& a, const Subset& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

std::vector<DownSet> downsets(const Poset& p) {
  const std::size_t n = p.size();
  if (n > kMaxDownsetPosetSize)
    throw CapError("downsets: poset of size " + std::to_string(n) + " exceeds the limit of " +
                   std::to_string(kMaxDownsetPosetSize));
  // below[j]: mask of elements <= j.
  std::vector<std::uint32_t> below(n, 0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (p.leq(i, j)) below[j] |= std::uint32_t{1} << i;
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 0; m < (std::uint32_t{1} << n); ++m) {
    bool closed = true;
    for (std::size_t j = 0; j < n && closed; ++j)
      if ((m >> j) & 1u) closed = (below[j] & ~m) == 0;
    if (closed) masks.push_back(m);
  }
  std::sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
    int ca = std::popcount(a), cb = std::popcount(b);
    return ca != cb ? ca < cb : a < b;
  });
  std::vector<DownSet> out;
  out.reserve(masks.size());
  for (std::uint32_t m : masks) {
    Subset s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = (m >> i) & 1u;
    out.emplace_back(p, std::move(s));
  }
  return out;
}

bool is_isomorphic(const Poset& a, const Poset& b) {
  if (a.size() > kMaxIsomorphismPosetSize || b.size() > kMaxIsomorphismPosetSize)
    throw CapError("is_isomorphic supports posets of at most " +
                   std::to_string(kMaxIsomorphismPosetSize) + " elements");
  if (a.size() != b.size()) return false;
  const std::size_t n = a.size();
  std::vector<std::size_t> map(n);
  std::vector<bool> used(n, false);
  auto extend = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) return true;
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c]) continue;
      bool ok = true;
      for (std::size_t k = 0; k < i && ok; ++k)
        ok = a.leq(k, i) == b.leq(map[k], c) && a.leq(i, k) == b.leq(c, map[k]);
      if (!ok) continue;
      used[c] = true;
      map[i] = c;
      if (self(self, i + 1)) return true;
      used[c] = false;
    }
    return false;
  };
  return extend(extend, 0);
}

Subset subset_of(std::size_t n, const std::vector<std::size_t>& members) {
  Subset s(n, false);
  for (std::size_t i : members) {
    if (i >= n) throw ValidationError("element " + std::to_string(i) + " out of range");
    s[i] = true;
  }
  return s;
}

Subset full_subset(std::size_t n) { return Subset(n, true); }

}  // namespace gwr
