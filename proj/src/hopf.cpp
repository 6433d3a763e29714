#include "gwr/hopf.hpp"

#include <algorithm>
#include <cmath>

#include "gwr/element_table.hpp"
#include "gwr/error.hpp"

namespace gwr {

namespace {

void require_linear(const Poset& w) {
  if (!is_linear(w)) throw ValidationError("the order must be linear");
}

}  // namespace

WreathGroup build_group_for_order(const Poset& w, const FiniteGroup& factor, EngineConfig engine) {
  require_linear(w);
  std::vector<FiniteGroup> factors(w.size(), factor);
  return WreathGroup(ConfigSpace(opposite(w), std::move(factors)), engine);
}

std::vector<std::size_t> linear_ranking(const Poset& w) {
  require_linear(w);
  std::vector<std::size_t> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    std::size_t below = 0;
    for (std::size_t j = 0; j < w.size(); ++j) below += w.less(j, i);
    out[below] = i;
  }
  return out;
}

NormalChain normal_chain(const WreathGroup& g) {
  const Poset& lambda = g.space().poset();
  require_linear(lambda);
  NormalChain out;
  out.unique_maxima = true;
  for (const DownSet& gamma : downsets(lambda)) {
    GroupHandle d = d_gamma_group(g, gamma);
    ChainLink link{gamma, d.order(), d.generators().size(), std::nullopt};
    std::vector<std::size_t> maxima;
    for (std::size_t m : gamma.elements()) {
      bool top = true;
      for (std::size_t x : gamma.elements()) top = top && lambda.leq(x, m);
      if (top) maxima.push_back(m);
    }
    if (gamma.cardinality() > 0) {
      if (maxima.size() == 1) link.maximum = maxima.front();
      else out.unique_maxima = false;
    }
    out.links.push_back(std::move(link));
  }

  out.totally_ordered = true;
  out.strictly_increasing = true;
  for (std::size_t i = 0; i + 1 < out.links.size(); ++i) {
    const DownSet& lower = out.links[i].downset;
    const DownSet& upper = out.links[i + 1].downset;
    if (!is_subset(lower.members(), upper.members()) || lower == upper) {
      out.totally_ordered = false;
      continue;
    }
    if (!(out.links[i].order < out.links[i + 1].order)) out.strictly_increasing = false;
    // A generator of the larger kernel must leave the smaller one.
    std::size_t fresh = 0;
    while (lower.contains(fresh) || !upper.contains(fresh)) ++fresh;
    const Permutation& witness = g.xi(fresh, 1);
    if (d_gamma_membership(g, witness, lower) || !d_gamma_membership(g, witness, upper))
      out.strictly_increasing = false;
  }
  return out;
}

SegmentCheck segment_quotient_check(const Poset& w, std::size_t k, const FiniteGroup& factor,
                                    EngineConfig engine) {
  require_linear(w);
  if (k > w.size())
    throw ValidationError("segment length " + std::to_string(k) + " exceeds the order size " +
                          std::to_string(w.size()));
  SegmentCheck out;
  out.k = k;
  std::vector<std::size_t> ranking = linear_ranking(w);
  Subset segment(w.size(), false);
  for (std::size_t r = 0; r < k; ++r) segment[ranking[r]] = true;
  Subset rest(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) rest[i] = !segment[i];

  WreathGroup whole = build_group_for_order(w, factor, engine);
  DownSet gamma(whole.space().poset(), rest);  // W∖L is downward closed in W^op
  out.inherited = quotient_iso_check(whole, gamma);

  Poset segment_order = restrict(w, segment);
  WreathGroup small = build_group_for_order(segment_order, factor, engine);
  std::vector<std::size_t> element_map;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (segment[i]) element_map.push_back(i);
  out.independent = quotient_match(whole, gamma, small, element_map);
  out.ok = out.inherited.ok && out.independent.ok;
  return out;
}

HopfReport hopfian_report(const Poset& w, const FiniteGroup& factor, const HopfOptions& options) {
  require_linear(w);
  HopfReport out;
  out.order_elements = linear_ranking(w);
  out.factor = factor.label();
  WreathGroup g = build_group_for_order(w, factor, options.engine);
  out.degree = g.degree();
  out.group_order = g.handle().order();
  out.chain = normal_chain(g);
  out.order_type_count = out.chain.count();

  for (std::size_t k = 0; k <= w.size(); ++k)
    out.segments.push_back(segment_quotient_check(w, k, factor, options.engine));

  // A proper quotient G_W / D_Γ (Γ non-empty) is the wreath group over the
  // complement, whose kernel chain is strictly shorter; G_W cannot be
  // isomorphic to it.
  const Poset& lambda = g.space().poset();
  out.chain_argument_holds = out.chain.ok() && out.order_type_count == w.size() + 1;
  for (const ChainLink& link : out.chain.links) {
    if (link.downset.cardinality() == 0) continue;
    ChainArgumentStep step{link.downset, 0, 0, 0, false};
    Subset outside = link.downset.complement();
    Poset rest = restrict(lambda, outside);
    step.quotient_chain_length = downsets(rest).size();
    step.quotient_order = out.group_order / link.order;
    std::vector<FiniteGroup> factors(rest.size(), factor);
    WreathGroup complement(ConfigSpace(rest, std::move(factors)), options.engine);
    step.complement_order = complement.handle().order();
    step.ok = step.quotient_chain_length == w.size() - link.downset.cardinality() + 1 &&
              step.quotient_chain_length < out.order_type_count &&
              step.quotient_order * link.order == out.group_order &&
              step.quotient_order == step.complement_order;
    out.chain_argument_holds = out.chain_argument_holds && step.ok;
    out.chain_argument.push_back(std::move(step));
  }

  bool oracle_ok = true;
  if (out.group_order > options.oracle_cap) {
    out.oracle_skipped = "group order exceeds the oracle cap of " + std::to_string(options.oracle_cap);
  } else {
    const GroupHandle& h = g.handle();
    std::vector<Index> gens;
    for (const Permutation& p : h.irredundant_generators())
      gens.push_back(static_cast<Index>(*h.element_index(p)));
    double assignments = std::pow(static_cast<double>(out.group_order), static_cast<double>(gens.size()));
    if (assignments > kMaxEndomorphismAssignments) {
      out.oracle_skipped = "generator assignments exceed the endomorphism search cap";
    } else {
      ElementTable table = element_table(h, options.oracle_cap, "G_W");
      out.oracle = hopfian_check_bruteforce(table.group, gens);
      oracle_ok = out.oracle->hopfian;
      out.methods.push_back("oracle");
    }
  }
  if (out.chain_argument_holds) out.methods.push_back("chain-argument");
  out.hopfian = out.chain_argument_holds && oracle_ok;
  return out;
}

}  // namespace gwr
