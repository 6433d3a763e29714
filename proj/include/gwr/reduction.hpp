#pragma once

// Finite trees on the naturals, their Kleene-Brouwer linearization, and the
// end-to-end tree -> linear order -> group pipeline.
//
// The Kleene-Brouwer order stands in for a tree-to-order reduction whose
// construction is not available: it linearizes a tree so that every branch
// becomes a descending sequence, but it makes no claim about which
// descending sequences exist beyond that.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gwr/finite_group.hpp"
#include "gwr/hopf.hpp"
#include "gwr/poset.hpp"

namespace gwr {

using Sequence = std::vector<std::uint64_t>;

std::string format_sequence(const Sequence& s);

class Tree {
 public:
  /// Rejects duplicates and sets that are not prefix closed (including a
  /// missing root); missing prefixes are never filled in.
  static Tree from_nodes(std::vector<Sequence> nodes);

  /// Nodes in lexicographic order; the root comes first.
  const std::vector<Sequence>& nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  bool contains(const Sequence& s) const;

 private:
  std::vector<Sequence> nodes_;
};

/// JSON list of non-negative integer arrays.
Tree parse_tree(std::string_view json_text);

/// s precedes t: s properly extends t, or s is smaller at the first index
/// where they differ.
bool kb_less(const Sequence& s, const Sequence& t);

inline constexpr std::size_t kMaxKbNodes = 20;

struct KBOrder {
  Poset order = make_empty_poset();  // element i is nodes[i]
  std::vector<Sequence> nodes;       // the tree's nodes in lexicographic order
  std::vector<std::size_t> ranking;  // element indices from least to greatest
};

KBOrder kb_order(const Tree& t);

/// Eventually periodic infinite sequence: prefix, then period repeated.
struct BranchRule {
  Sequence prefix;
  Sequence period;

  std::uint64_t at(std::size_t i) const;
  Sequence take(std::size_t n) const;
};

struct TruncatedTree {
  Tree tree;
  std::size_t depth = 0;
  std::optional<BranchRule> branch;
};

/// {"nodes": [...], "depth": d, "branch": {"prefix": [...], "period": [...]}};
/// a bare JSON list is accepted as a tree without a branch.
TruncatedTree parse_truncated_tree(std::string_view json_text);

/// Branch prefixes of lengths 1..depth, checked pairwise strictly
/// KB-descending.
std::vector<Sequence> descending_witness(const TruncatedTree& tt);

struct CapSetting {
  std::uint64_t value = 0;
  std::string source;  // "default" or the flag that set it
};

struct PipelineCaps {
  CapSetting degree_cap;
  CapSetting oracle_cap;
  CapSetting memory_budget;
};

struct PipelineReport {
  std::string reduction = "kleene-brouwer (stand-in)";
  KBOrder kb;
  HopfReport hopf;
  PipelineCaps caps;
};

/// Tree -> KB order -> G_W. Every cap is checked before any group is built.
PipelineReport tree_to_group(const Tree& t, const FiniteGroup& factor, const PipelineCaps& caps,
                             unsigned threads = 1);

}  // namespace gwr
