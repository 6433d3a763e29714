#pragma once

// File formats and report serialization.
//
//   poset file     {"elements": ["a", "b", ...], "covers": [["a", "b"], ...]}
//   group spec     {"builtin": "A5"}  or  {"table": [[...], ...], "label": "..."}
//   wreath file    {"poset": <poset file path | inline poset | "chain:n">,
//                   "factors": [<group spec or builtin name>, ...]}
//   tree file      [[], [0], [1], [0, 0]]  (see reduction.hpp for branches)
//
// Big integers are always written as decimal strings.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "gwr/finite_group.hpp"
#include "gwr/hopf.hpp"
#include "gwr/poset.hpp"
#include "gwr/reduction.hpp"
#include "gwr/wreath.hpp"

namespace gwr::io {

using Json = nlohmann::ordered_json;

struct NamedPoset {
  Poset poset;
  std::vector<std::string> names;
};

std::string read_file(const std::filesystem::path& path);
Json parse_json_text(const std::string& text, const std::string& origin);

NamedPoset poset_from_json(const Json& j);
/// "chain:n", "antichain:n", or a path to a poset file.
NamedPoset parse_poset_spec(const std::string& spec);

FiniteGroup group_from_json(const Json& j);
/// A builtin name or a path to a group spec file.
FiniteGroup parse_group_spec(const std::string& spec);

struct WreathInstance {
  NamedPoset poset;
  std::vector<FiniteGroup> factors;
};

WreathInstance wreath_instance_from_json(const Json& j, const std::filesystem::path& base_dir);
WreathInstance load_wreath_instance(const std::filesystem::path& path);

/// "0,2", "{0,2}", "{}", "" or element names, resolved against `poset`.
Subset parse_subset(const std::string& text, const NamedPoset& poset);

Json poset_json(const NamedPoset& p);
Json downset_json(const DownSet& d, const NamedPoset* names = nullptr);
Json quotient_check_json(const QuotientCheck& q);
Json hopf_report_json(const HopfReport& r);
Json hopfian_check_json(const HopfianCheck& c, bool include_maps);
Json kb_order_json(const KBOrder& kb);
Json pipeline_report_json(const PipelineReport& r);

struct LatticeNode {
  DownSet downset;
  std::string detail;  // e.g. "order 60"
};

/// Hasse diagram of a family of downsets, nodes sorted by the canonical
/// downset key, edges by covering inclusion.
std::string lattice_dot(const std::string& name, std::vector<LatticeNode> nodes);
std::string chain_dot(const NormalChain& chain);

/// One-line JSON diagnostic for standard error.
std::string diagnostic(const std::string& code, const std::string& message, int exit_code);

}  // namespace gwr::io
