#include "gwr/reduction.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "gwr/error.hpp"

namespace gwr {

using nlohmann::json;

std::string format_sequence(const Sequence& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + ")";
}

Tree Tree::from_nodes(std::vector<Sequence> nodes) {
  std::sort(nodes.begin(), nodes.end());
  if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end())
    throw ValidationError("tree lists a node twice");
  std::set<Sequence> present(nodes.begin(), nodes.end());
  if (!present.count(Sequence{})) throw ValidationError("tree is missing its root []");
  for (const Sequence& s : nodes) {
    if (s.empty()) continue;
    Sequence parent(s.begin(), s.end() - 1);
    if (!present.count(parent))
      throw ValidationError("tree is not prefix closed: " + format_sequence(s) +
                            " is present but " + format_sequence(parent) + " is not");
  }
  Tree t;
  t.nodes_ = std::move(nodes);
  return t;
}

bool Tree::contains(const Sequence& s) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), s);
}

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

Sequence sequence_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw ValidationError(std::string(what) + " must be an array of integers");
  Sequence s;
  for (const json& v : j) {
    if (!v.is_number_integer())
      throw ValidationError(std::string(what) + " must contain integers only");
    if (v.get<std::int64_t>() < 0)
      throw ValidationError(std::string(what) + " contains a negative entry");
    s.push_back(v.get<std::uint64_t>());
  }
  return s;
}

Tree tree_from_json(const json& j) {
  if (!j.is_array()) throw ValidationError("a tree must be a JSON list of integer arrays");
  std::vector<Sequence> nodes;
  for (const json& node : j) nodes.push_back(sequence_from_json(node, "tree node"));
  return Tree::from_nodes(std::move(nodes));
}

}  // namespace

Tree parse_tree(std::string_view json_text) { return tree_from_json(parse_json(json_text)); }

bool kb_less(const Sequence& s, const Sequence& t) {
  std::size_t common = std::min(s.size(), t.size());
  for (std::size_t i = 0; i < common; ++i)
    if (s[i] != t[i]) return s[i] < t[i];
  return s.size() > t.size();
}

KBOrder kb_order(const Tree& t) {
  const std::size_t n = t.size();
  if (n > kMaxKbNodes)
    throw CapError("kb_order: tree with " + std::to_string(n) + " nodes exceeds the limit of " +
                   std::to_string(kMaxKbNodes));
  std::vector<bool> leq(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      leq[i * n + j] = i == j || kb_less(t.nodes()[i], t.nodes()[j]);
  KBOrder out{Poset::from_relation(n, std::move(leq)), t.nodes(), {}};
  out.ranking = linear_ranking(out.order);
  return out;
}

std::uint64_t BranchRule::at(std::size_t i) const {
  if (i < prefix.size()) return prefix[i];
  return period[(i - prefix.size()) % period.size()];
}

Sequence BranchRule::take(std::size_t n) const {
  Sequence out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(at(i));
  return out;
}

TruncatedTree parse_truncated_tree(std::string_view json_text) {
  json j = parse_json(json_text);
  TruncatedTree tt;
  if (j.is_array()) {
    tt.tree = tree_from_json(j);
    return tt;
  }
  if (!j.is_object() || !j.contains("nodes"))
    throw ValidationError("tree file must be a list of nodes or an object with \"nodes\"");
  tt.tree = tree_from_json(j.at("nodes"));
  if (j.contains("branch")) {
    const json& b = j.at("branch");
    if (!b.is_object()) throw ValidationError("\"branch\" must be an object");
    BranchRule rule;
    if (b.contains("prefix")) rule.prefix = sequence_from_json(b.at("prefix"), "branch prefix");
    if (!b.contains("period")) throw ValidationError("branch needs a non-empty \"period\"");
    rule.period = sequence_from_json(b.at("period"), "branch period");
    if (rule.period.empty()) throw ValidationError("branch needs a non-empty \"period\"");
    tt.branch = std::move(rule);
    if (!j.contains("depth") || !j.at("depth").is_number_unsigned())
      throw ValidationError("a declared branch needs a non-negative integer \"depth\"");
    tt.depth = j.at("depth").get<std::size_t>();
  }
  return tt;
}

std::vector<Sequence> descending_witness(const TruncatedTree& tt) {
  if (!tt.branch) throw ValidationError("no declared branch");
  if (tt.depth == 0) throw ValidationError("branch depth must be positive");
  std::vector<Sequence> out;
  for (std::size_t len = 1; len <= tt.depth; ++len) {
    Sequence node = tt.branch->take(len);
    if (!tt.tree.contains(node))
      throw ValidationError("declared branch leaves the tree at " + format_sequence(node));
    out.push_back(std::move(node));
  }
  for (std::size_t a = 0; a < out.size(); ++a)
    for (std::size_t b = a + 1; b < out.size(); ++b)
      if (!kb_less(out[b], out[a]))
        throw Error("internal", "branch prefixes are not strictly KB-descending");
  return out;
}

PipelineReport tree_to_group(const Tree& t, const FiniteGroup& factor, const PipelineCaps& caps,
                             unsigned threads) {
  PipelineReport out;
  out.caps = caps;
  out.kb = kb_order(t);

  BigInt degree = big_pow(BigInt(factor.size()), static_cast<unsigned>(t.size()));
  if (degree > caps.degree_cap.value)
    throw CapError("tree with " + std::to_string(t.size()) + " nodes and factor " +
                   factor.label() + " needs degree " + to_decimal(degree) +
                   ", exceeding the degree cap of " + std::to_string(caps.degree_cap.value) +
                   " (" + caps.degree_cap.source + ")");
  if (degree > degree_cap())
    throw CapError("degree " + to_decimal(degree) + " exceeds the global degree cap of " +
                   std::to_string(degree_cap()));

  HopfOptions options;
  options.oracle_cap = caps.oracle_cap.value;
  options.engine.memory_budget = static_cast<std::size_t>(caps.memory_budget.value);
  options.engine.threads = threads;
  // Element i of the chain is node kb.ranking[i]; G_W only sees the order type.
  out.hopf = hopfian_report(make_chain(t.size()), factor, options);
  return out;
}

}  // namespace gwr
