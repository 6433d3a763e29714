#pragma once

// W ↦ G_W for finite linear orders W: the wreath product over the opposite
// order with one copy of a fixed factor (A5 by default) per element, its
// chain of kernels D_Γ, and quotient self-similarity G_W / D_{W∖L} ≅ G_L for
// initial segments L.
//
// Every finite group is Hopfian, so the ill-founded direction never occurs
// here; the report checks the mechanism it relies on (quotients by
// initial-segment kernels reproduce the smaller group) instead.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gwr/bigint.hpp"
#include "gwr/finite_group.hpp"
#include "gwr/poset.hpp"
#include "gwr/wreath.hpp"

namespace gwr {

struct HopfOptions {
  std::uint64_t oracle_cap = kMaxOracleGroupSize;
  EngineConfig engine;
};

/// G_W: the wreath group over opposite(w) with `factor` at every element.
WreathGroup build_group_for_order(const Poset& w, const FiniteGroup& factor,
                                  EngineConfig engine = {});

/// Elements of a linear order listed from least to greatest.
std::vector<std::size_t> linear_ranking(const Poset& w);

struct ChainLink {
  DownSet downset;
  BigInt order;
  std::size_t generators = 0;
  std::optional<std::size_t> maximum;  // unique maximum of a non-empty downset
};

struct NormalChain {
  std::vector<ChainLink> links;  // canonical downset order, which is inclusion order here
  bool totally_ordered = false;
  bool strictly_increasing = false;
  bool unique_maxima = false;

  std::size_t count() const noexcept { return links.size(); }
  bool ok() const noexcept { return totally_ordered && strictly_increasing && unique_maxima; }
};

/// One D_Γ per downset of the (linear) underlying poset. Strictness is
/// witnessed twice per step: the orders grow, and a generator of the larger
/// kernel fails the coordinate-fixing test of the smaller one.
NormalChain normal_chain(const WreathGroup& g);

struct SegmentCheck {
  std::size_t k = 0;
  bool ok = false;
  QuotientCheck inherited;    // against the complement wreath group
  QuotientCheck independent;  // against a separately built G_L
};

/// L = the k least elements of w, N = D_{W∖L} in G_W; checks G_W/N ≅ G_L
/// generator by generator.
SegmentCheck segment_quotient_check(const Poset& w, std::size_t k, const FiniteGroup& factor,
                                    EngineConfig engine = {});

struct ChainArgumentStep {
  DownSet gamma;
  std::size_t quotient_chain_length = 0;
  BigInt quotient_order;    // |G_W| / |D_Γ|
  BigInt complement_order;  // engine order of the wreath group over W^op ∖ Γ
  bool ok = false;
};

struct HopfReport {
  std::vector<std::size_t> order_elements;  // W from least to greatest
  std::string factor;
  std::size_t degree = 0;
  BigInt group_order;
  NormalChain chain;
  std::size_t order_type_count = 0;
  std::vector<SegmentCheck> segments;
  std::vector<ChainArgumentStep> chain_argument;
  bool chain_argument_holds = false;
  std::optional<HopfianCheck> oracle;
  std::string oracle_skipped;  // reason, when the oracle did not run
  bool hopfian = false;
  std::vector<std::string> methods;
};

HopfReport hopfian_report(const Poset& w, const FiniteGroup& factor, const HopfOptions& options = {});

}  // namespace gwr
