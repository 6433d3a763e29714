#include "gwr/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "gwr/error.hpp"

namespace gwr::io {

namespace {

std::string trim(std::string s) {
  auto space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && space(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && space(static_cast<unsigned char>(s[i]))) ++i;
  return s.substr(i);
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0;
}

std::size_t parse_count(const std::string& text, const std::string& what) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw ValidationError(what + ": expected a positive integer, got '" + text + "'");
  if (text.size() > 9) throw CapError(what + ": " + text + " is too large");
  return static_cast<std::size_t>(std::stoul(text));
}

std::vector<std::string> index_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return names;
}

std::string name_of(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw ValidationError("element names must be strings or integers");
}

Json big(const BigInt& v) { return to_decimal(v); }

Json elements_json(const DownSet& d, const NamedPoset* names) {
  Json out = Json::array();
  for (std::size_t i : d.elements()) {
    if (names) out.push_back(names->names[i]);
    else out.push_back(i);
  }
  return out;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError("malformed JSON in " + origin + ": " + e.what());
  }
}

NamedPoset poset_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("elements") || !j.at("elements").is_array())
    throw ValidationError("poset must be an object with an \"elements\" list");
  NamedPoset out{make_empty_poset(), {}};
  std::map<std::string, std::size_t> index;
  for (const Json& e : j.at("elements")) {
    std::string name = name_of(e);
    if (!index.emplace(name, out.names.size()).second)
      throw ValidationError("poset element '" + name + "' listed twice");
    out.names.push_back(name);
  }
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  if (j.contains("covers")) {
    if (!j.at("covers").is_array()) throw ValidationError("\"covers\" must be a list of pairs");
    for (const Json& c : j.at("covers")) {
      if (!c.is_array() || c.size() != 2) throw ValidationError("each cover must be a pair [a, b]");
      auto lookup = [&](const Json& e) {
        auto it = index.find(name_of(e));
        if (it == index.end()) throw ValidationError("cover names unknown element '" + name_of(e) + "'");
        return it->second;
      };
      covers.emplace_back(lookup(c[0]), lookup(c[1]));
    }
  }
  out.poset = Poset::from_covers(out.names.size(), covers);
  return out;
}

NamedPoset parse_poset_spec(const std::string& raw) {
  std::string spec = trim(raw);
  if (starts_with(spec, "chain:")) {
    std::size_t n = parse_count(spec.substr(6), "chain size");
    return {make_chain(n), index_names(n)};
  }
  if (starts_with(spec, "antichain:")) {
    std::size_t n = parse_count(spec.substr(10), "antichain size");
    return {make_antichain(n), index_names(n)};
  }
  return poset_from_json(parse_json_text(read_file(spec), spec));
}

FiniteGroup group_from_json(const Json& j) {
  if (j.is_string()) return builtin_group(j.get<std::string>());
  if (!j.is_object()) throw ValidationError("group spec must be an object");
  if (j.contains("builtin")) {
    if (!j.at("builtin").is_string()) throw ValidationError("\"builtin\" must be a name");
    return builtin_group(j.at("builtin").get<std::string>());
  }
  if (j.contains("table")) {
    const Json& t = j.at("table");
    if (!t.is_array() || t.empty()) throw ValidationError("\"table\" must be a non-empty list of rows");
    const std::size_t n = t.size();
    if (n > kMaxOracleGroupSize) throw CapError("group table larger than " + std::to_string(kMaxOracleGroupSize));
    std::vector<Index> mul;
    mul.reserve(n * n);
    for (const Json& row : t) {
      if (!row.is_array() || row.size() != n) throw ValidationError("group table must be square");
      for (const Json& v : row) {
        if (!v.is_number_integer() || v.get<long long>() < 0)
          throw ValidationError("group table entries must be non-negative integers");
        mul.push_back(static_cast<Index>(v.get<long long>()));
      }
    }
    std::string label = j.contains("label") && j.at("label").is_string() ? j.at("label").get<std::string>()
                                                                        : "table" + std::to_string(n);
    return FiniteGroup::from_table(std::move(mul), n, label);
  }
  throw ValidationError("group spec needs \"builtin\" or \"table\"");
}

FiniteGroup parse_group_spec(const std::string& raw) {
  std::string spec = trim(raw);
  auto names = builtin_group_names();
  if (std::find(names.begin(), names.end(), spec) != names.end()) return builtin_group(spec);
  if (std::filesystem::exists(spec)) return group_from_json(parse_json_text(read_file(spec), spec));
  throw ValidationError("unknown group '" + spec + "' (not a builtin name or a readable file)");
}

WreathInstance wreath_instance_from_json(const Json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object() || !j.contains("poset") || !j.contains("factors"))
    throw ValidationError("wreath instance needs \"poset\" and \"factors\"");
  WreathInstance out{{make_empty_poset(), {}}, {}};
  const Json& p = j.at("poset");
  if (p.is_string()) {
    std::string spec = p.get<std::string>();
    if (starts_with(spec, "chain:") || starts_with(spec, "antichain:")) out.poset = parse_poset_spec(spec);
    else out.poset = parse_poset_spec((base_dir / spec).string());
  } else {
    out.poset = poset_from_json(p);
  }
  if (!j.at("factors").is_array()) throw ValidationError("\"factors\" must be a list");
  for (const Json& f : j.at("factors")) {
    if (f.is_string()) {
      std::string spec = f.get<std::string>();
      auto names = builtin_group_names();
      if (std::find(names.begin(), names.end(), spec) != names.end())
        out.factors.push_back(builtin_group(spec));
      else
        out.factors.push_back(parse_group_spec((base_dir / spec).string()));
    } else {
      out.factors.push_back(group_from_json(f));
    }
  }
  if (out.factors.size() != out.poset.poset.size())
    throw ValidationError("wreath instance lists " + std::to_string(out.factors.size()) +
                          " factors for " + std::to_string(out.poset.poset.size()) + " elements");
  return out;
}

WreathInstance load_wreath_instance(const std::filesystem::path& path) {
  return wreath_instance_from_json(parse_json_text(read_file(path), path.string()),
                                   path.parent_path());
}

Subset parse_subset(const std::string& raw, const NamedPoset& poset) {
  std::string text = trim(raw);
  if (!text.empty() && text.front() == '{') {
    if (text.back() != '}') throw ValidationError("unbalanced braces in subset '" + raw + "'");
    text = trim(text.substr(1, text.size() - 2));
  }
  Subset s(poset.poset.size(), false);
  if (text.empty()) return s;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    token = trim(token);
    auto it = std::find(poset.names.begin(), poset.names.end(), token);
    std::size_t idx;
    if (it != poset.names.end()) {
      idx = static_cast<std::size_t>(it - poset.names.begin());
    } else {
      idx = parse_count(token, "subset element");
      if (idx >= poset.poset.size()) throw ValidationError("subset element " + token + " out of range");
    }
    s[idx] = true;
  }
  return s;
}

Json poset_json(const NamedPoset& p) {
  Json covers = Json::array();
  const Poset& q = p.poset;
  for (std::size_t a = 0; a < q.size(); ++a)
    for (std::size_t b = 0; b < q.size(); ++b) {
      if (!q.less(a, b)) continue;
      bool cover = true;
      for (std::size_t c = 0; c < q.size() && cover; ++c) cover = !(q.less(a, c) && q.less(c, b));
      if (cover) covers.push_back(Json::array({p.names[a], p.names[b]}));
    }
  Json out;
  out["size"] = q.size();
  out["elements"] = p.names;
  out["covers"] = covers;
  out["linear"] = is_linear(q);
  return out;
}

Json downset_json(const DownSet& d, const NamedPoset* names) {
  Json out;
  out["label"] = d.label();
  out["elements"] = elements_json(d, names);
  return out;
}

Json quotient_check_json(const QuotientCheck& q) {
  Json out;
  out["ok"] = q.ok;
  out["target_degree"] = q.target_degree;
  out["checked_generators"] = q.checked_generators;
  if (!q.failure.empty()) out["failure"] = q.failure;
  if (q.mismatch) {
    out["mismatch"] = {{"lambda", q.mismatch->lambda}, {"h", q.mismatch->h}, {"config", q.mismatch->config}};
  }
  return out;
}

Json hopfian_check_json(const HopfianCheck& c, bool include_maps) {
  Json out;
  out["hopfian"] = c.hopfian;
  out["endomorphisms"] = c.endomorphism_count;
  out["surjective_endomorphisms"] = c.surjective.size();
  if (include_maps) out["certificate"] = c.surjective;
  return out;
}

Json hopf_report_json(const HopfReport& r) {
  Json out;
  out["order"] = {{"size", r.order_elements.size()}, {"ascending", r.order_elements}};
  out["factor"] = r.factor;
  out["group"] = {{"degree", r.degree}, {"order", big(r.group_order)}};
  out["count_convention"] =
      "one kernel per downset of the opposite order, trivial and whole group included: |W|+1 in total";

  Json links = Json::array();
  for (const ChainLink& link : r.chain.links) {
    Json l = downset_json(link.downset);
    l["order"] = big(link.order);
    l["closure_generators"] = link.generators;
    l["maximum"] = link.maximum ? Json(*link.maximum) : Json(nullptr);
    links.push_back(l);
  }
  out["normal_chain"] = {{"length", r.chain.count()},
                         {"totally_ordered", r.chain.totally_ordered},
                         {"strictly_increasing", r.chain.strictly_increasing},
                         {"unique_maxima", r.chain.unique_maxima},
                         {"links", links}};
  out["order_type_count"] = r.order_type_count;

  Json segments = Json::array();
  for (const SegmentCheck& s : r.segments)
    segments.push_back({{"k", s.k},
                        {"ok", s.ok},
                        {"inherited", quotient_check_json(s.inherited)},
                        {"independent", quotient_check_json(s.independent)}});
  out["segment_quotients"] = segments;

  Json steps = Json::array();
  for (const ChainArgumentStep& s : r.chain_argument) {
    Json j = downset_json(s.gamma);
    j["quotient_chain_length"] = s.quotient_chain_length;
    j["quotient_order"] = big(s.quotient_order);
    j["complement_order"] = big(s.complement_order);
    j["ok"] = s.ok;
    steps.push_back(j);
  }
  out["chain_argument"] = {{"holds", r.chain_argument_holds}, {"steps", steps}};

  if (r.oracle) {
    Json o = hopfian_check_json(*r.oracle, false);
    o["ran"] = true;
    out["oracle"] = o;
  } else {
    out["oracle"] = {{"ran", false}, {"reason", r.oracle_skipped}};
  }
  out["hopfian"] = r.hopfian;
  out["methods"] = r.methods;
  out["note"] =
      "finite groups are always Hopfian, so the non-Hopfian direction cannot arise here; "
      "segment_quotients checks the quotient mechanism it depends on";
  return out;
}

Json kb_order_json(const KBOrder& kb) {
  Json nodes = Json::array();
  for (const Sequence& s : kb.nodes) nodes.push_back(s);
  Json ascending = Json::array();
  for (std::size_t i : kb.ranking) ascending.push_back(kb.nodes[i]);
  Json out;
  out["nodes"] = nodes;
  out["ascending"] = ascending;
  out["linear"] = is_linear(kb.order);
  return out;
}

Json pipeline_report_json(const PipelineReport& r) {
  Json caps;
  auto cap = [](const CapSetting& c) { return Json{{"value", c.value}, {"source", c.source}}; };
  caps["degree_cap"] = cap(r.caps.degree_cap);
  caps["oracle_cap"] = cap(r.caps.oracle_cap);
  caps["memory_budget"] = cap(r.caps.memory_budget);
  Json out;
  out["reduction"] = r.reduction;
  out["kb_order"] = kb_order_json(r.kb);
  out["caps"] = caps;
  out["hopf"] = hopf_report_json(r.hopf);
  out["chain_dot"] = chain_dot(r.hopf.chain);
  return out;
}

std::string lattice_dot(const std::string& name, std::vector<LatticeNode> nodes) {
  std::stable_sort(nodes.begin(), nodes.end(), [](const LatticeNode& a, const LatticeNode& b) {
    return canonical_less(a.downset, b.downset);
  });
  std::ostringstream out;
  out << "digraph " << name << " {\n  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    out << "  n" << i << " [label=\"" << dot_escape(nodes[i].downset.label());
    if (!nodes[i].detail.empty()) out << "\\n" << dot_escape(nodes[i].detail);
    out << "\"];\n";
  }
  auto proper = [&](std::size_t a, std::size_t b) {
    return is_subset(nodes[a].downset.members(), nodes[b].downset.members()) &&
           !(nodes[a].downset == nodes[b].downset);
  };
  for (std::size_t a = 0; a < nodes.size(); ++a)
    for (std::size_t b = 0; b < nodes.size(); ++b) {
      if (!proper(a, b)) continue;
      bool cover = true;
      for (std::size_t c = 0; c < nodes.size() && cover; ++c) cover = !(proper(a, c) && proper(c, b));
      if (cover) out << "  n" << a << " -> n" << b << ";\n";
    }
  out << "}\n";
  return out.str();
}

std::string chain_dot(const NormalChain& chain) {
  std::vector<LatticeNode> nodes;
  for (const ChainLink& link : chain.links) nodes.push_back({link.downset, "order " + to_decimal(link.order)});
  return lattice_dot("normal_chain", std::move(nodes));
}

std::string diagnostic(const std::string& code, const std::string& message, int exit_code) {
  Json j;
  j["error"] = code;
  j["message"] = message;
  j["exit_code"] = exit_code;
  return j.dump();
}

}  // namespace gwr::io
