#pragma once

// Conversions between library types and the oracle's plain representations.

#include "gwr/finite_group.hpp"
#include "gwr/perm.hpp"
#include "gwr/poset.hpp"
#include "oracles.hpp"

namespace support {

inline oracle::Table table_of(const gwr::FiniteGroup& g) {
  oracle::Table t;
  t.n = g.size();
  for (gwr::Index a = 0; a < g.size(); ++a)
    for (gwr::Index b = 0; b < g.size(); ++b) t.mul.push_back(g.mul(a, b));
  return t;
}

inline oracle::Img img(const gwr::Permutation& p) { return {p.images().begin(), p.images().end()}; }

inline oracle::Order order_of(const gwr::Poset& p) {
  oracle::Order leq(p.size(), std::vector<bool>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) leq[i][j] = p.leq(i, j);
  return leq;
}

inline gwr::Poset poset_of(const oracle::Order& leq) {
  const std::size_t n = leq.size();
  std::vector<bool> flat(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = leq[i][j];
  return gwr::Poset::from_relation(n, flat);
}

}  // namespace support
