#include "gwr/cli.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "gwr/element_table.hpp"
#include "gwr/error.hpp"
#include "gwr/finite_group.hpp"
#include "gwr/hopf.hpp"
#include "gwr/io.hpp"
#include "gwr/kernels.hpp"
#include "gwr/perm.hpp"
#include "gwr/reduction.hpp"
#include "gwr/wreath.hpp"

namespace gwr::cli {

namespace {

using io::Json;

struct Sources {
  std::string degree_cap = "default";
  std::string oracle_cap = "default";
  std::string memory_budget = "default";
};

struct WreathArgs {
  std::string poset;
  std::string factor;
  std::vector<std::string> factors;
  std::string in;
  std::string gamma;
  bool gamma_given = false;
};

class DegreeCapScope {
 public:
  explicit DegreeCapScope(std::uint64_t cap) : saved_(degree_cap()) {
    set_degree_cap(static_cast<std::size_t>(cap));
  }
  ~DegreeCapScope() { set_degree_cap(saved_); }
  DegreeCapScope(const DegreeCapScope&) = delete;
  DegreeCapScope& operator=(const DegreeCapScope&) = delete;

 private:
  std::size_t saved_;
};

std::uint64_t parse_size(const std::string& raw, const std::string& flag) {
  std::string text = raw;
  std::uint64_t scale = 1;
  if (!text.empty()) {
    switch (std::toupper(static_cast<unsigned char>(text.back()))) {
      case 'K': scale = std::uint64_t{1} << 10; break;
      case 'M': scale = std::uint64_t{1} << 20; break;
      case 'G': scale = std::uint64_t{1} << 30; break;
      default: break;
    }
    if (scale != 1) text.pop_back();
  }
  if (text.empty() || text.size() > 15 ||
      !std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw ValidationError(flag + ": expected a positive integer, got '" + raw + "'");
  std::uint64_t value = std::stoull(text) * scale;
  if (value == 0) throw ValidationError(flag + " must be positive");
  return value;
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "dot") return Format::dot;
  if (s == "text") return Format::text;
  throw ValidationError("--format must be json, dot or text, got '" + s + "'");
}

void flatten(const Json& j, const std::string& path, std::ostream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
  } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s.find('\n') != std::string::npos) return;  // embedded DOT
    out << path << ": " << s << '\n';
  } else {
    out << path << ": " << j.dump() << '\n';
  }
}

void emit(const Json& report, const std::optional<std::string>& dot, Format format, std::ostream& out) {
  switch (format) {
    case Format::json: out << report.dump(2) << '\n'; break;
    case Format::text: flatten(report, "", out); break;
    case Format::dot:
      if (!dot) throw ValidationError("--format dot is not available for this subcommand");
      out << *dot;
      break;
  }
}

EngineConfig engine_of(const RunConfig& rc) {
  EngineConfig e;
  e.memory_budget = static_cast<std::size_t>(rc.memory_budget);
  e.threads = rc.threads;
  return e;
}

io::WreathInstance load_instance(const WreathArgs& a) {
  if (!a.in.empty()) {
    if (!a.poset.empty() || !a.factor.empty() || !a.factors.empty())
      throw ValidationError("--in cannot be combined with --poset or --factor(s)");
    return io::load_wreath_instance(a.in);
  }
  if (a.poset.empty()) throw ValidationError("give --poset (or --in)");
  if (a.factor.empty() == a.factors.empty()) throw ValidationError("give exactly one of --factor and --factors");
  io::WreathInstance inst{io::parse_poset_spec(a.poset), {}};
  const std::size_t n = inst.poset.poset.size();
  if (!a.factor.empty()) {
    inst.factors.assign(n, io::parse_group_spec(a.factor));
  } else {
    for (const std::string& f : a.factors) inst.factors.push_back(io::parse_group_spec(f));
    if (inst.factors.size() != n)
      throw ValidationError("--factors lists " + std::to_string(inst.factors.size()) + " groups for " +
                            std::to_string(n) + " poset elements");
  }
  return inst;
}

Json instance_json(const io::WreathInstance& inst) {
  Json out;
  out["poset"] = io::poset_json(inst.poset);
  Json factors = Json::array();
  for (const FiniteGroup& f : inst.factors) factors.push_back({{"label", f.label()}, {"order", f.size()}});
  out["factors"] = factors;
  return out;
}

WreathGroup make_group(const io::WreathInstance& inst, const RunConfig& rc) {
  return WreathGroup(ConfigSpace(inst.poset.poset, inst.factors), engine_of(rc));
}

void cmd_wreath_build(const WreathArgs& a, const RunConfig& rc, std::ostream& out) {
  auto inst = load_instance(a);
  WreathGroup w = make_group(inst, rc);
  const GroupHandle& h = w.handle();
  Json report = instance_json(inst);
  report["degree"] = w.degree();
  Json gens = Json::array();
  for (const XiLabel& l : w.generator_labels())
    gens.push_back({{"lambda", inst.poset.names[l.lambda]}, {"h", l.h}});
  report["generators"] = gens;
  report["irredundant_generators"] = h.irredundant_generators().size();
  ChainStats stats = h.stats();
  report["base_length"] = stats.base_length;
  report["strong_generators"] = stats.strong_generators;
  report["order"] = to_decimal(h.order());
  emit(report, std::nullopt, rc.format, out);
}

void cmd_wreath_order(const WreathArgs& a, const RunConfig& rc, std::ostream& out) {
  auto inst = load_instance(a);
  WreathGroup w = make_group(inst, rc);
  const BigInt& order = w.handle().order();
  if (rc.format == Format::text) {
    out << to_decimal(order) << '\n';
    return;
  }
  Json report = instance_json(inst);
  report["degree"] = w.degree();
  report["order"] = to_decimal(order);
  if (auto formula = group_order_formula(w.space())) {
    report["formula_order"] = to_decimal(*formula);
    report["formula_agrees"] = *formula == order;
  } else {
    report["formula_order"] = nullptr;
  }
  emit(report, std::nullopt, rc.format, out);
}

void cmd_wreath_normal_subgroups(const WreathArgs& a, const RunConfig& rc, std::ostream& out) {
  auto inst = load_instance(a);
  WreathGroup w = make_group(inst, rc);
  const BigInt& order = w.handle().order();
  Json report = instance_json(inst);
  report["degree"] = w.degree();
  report["order"] = to_decimal(order);

  Json kernels = Json::array();
  std::vector<io::LatticeNode> nodes;
  for (const DownSet& gamma : downsets(inst.poset.poset)) {
    GroupHandle d = d_gamma_group(w, gamma);
    KernelVerification v = verify_kernel(w, gamma, d, rc.oracle_cap);
    Json k = io::downset_json(gamma, &inst.poset);
    k["order"] = to_decimal(d.order());
    k["closure_generators"] = d.generators().size();
    k["verification"] = {{"method", v.method},
                         {"closure_in_kernel", v.closure_in_kernel},
                         {"passed", v.passed},
                         {"kernel_order", v.kernel_order ? Json(to_decimal(*v.kernel_order)) : Json(nullptr)}};
    kernels.push_back(k);
    nodes.push_back({gamma, "order " + to_decimal(d.order())});
  }
  report["kernels"] = kernels;

  if (order <= rc.oracle_cap) {
    NormalSubgroupClassification c = classify_normal_subgroups_small(w, rc.oracle_cap);
    Json orders = Json::array();
    for (const SubgroupSet& s : c.normal_subgroups) orders.push_back(s.order());
    Json unmatched = Json::array();
    for (std::size_t i : c.unmatched) unmatched.push_back(c.normal_subgroups[i].order());
    Json collisions = Json::array();
    for (auto [x, y] : c.collisions)
      collisions.push_back(Json::array({c.downsets[x].label(), c.downsets[y].label()}));
    report["oracle"] = {{"ran", true},
                        {"normal_subgroups", c.normal_subgroups.size()},
                        {"orders", orders},
                        {"unmatched_orders", unmatched},
                        {"kernel_collisions", collisions},
                        {"every_normal_subgroup_is_a_kernel", c.every_normal_subgroup_is_a_kernel()}};
  } else {
    report["oracle"] = {{"ran", false},
                        {"reason", "group order exceeds the oracle cap of " + std::to_string(rc.oracle_cap)}};
  }
  emit(report, io::lattice_dot("kernels", std::move(nodes)), rc.format, out);
}

void cmd_wreath_quotient_check(const WreathArgs& a, const RunConfig& rc, std::ostream& out) {
  auto inst = load_instance(a);
  WreathGroup w = make_group(inst, rc);
  std::vector<DownSet> targets;
  if (a.gamma_given) targets.emplace_back(inst.poset.poset, io::parse_subset(a.gamma, inst.poset));
  else targets = downsets(inst.poset.poset);

  Json report = instance_json(inst);
  report["degree"] = w.degree();
  Json checks = Json::array();
  bool all_ok = true;
  for (const DownSet& gamma : targets) {
    QuotientCheck q = quotient_iso_check(w, gamma);
    Json c = io::downset_json(gamma, &inst.poset);
    c["check"] = io::quotient_check_json(q);
    checks.push_back(c);
    all_ok = all_ok && q.ok;
  }
  report["checks"] = checks;
  report["ok"] = all_ok;
  emit(report, std::nullopt, rc.format, out);
}

void cmd_hopf_analyze(const std::string& order, const std::string& factor, const RunConfig& rc,
                      std::ostream& out) {
  io::NamedPoset w = io::parse_poset_spec(order);
  FiniteGroup g = io::parse_group_spec(factor);
  HopfOptions options;
  options.oracle_cap = rc.oracle_cap;
  options.engine = engine_of(rc);
  HopfReport r = hopfian_report(w.poset, g, options);
  emit(io::hopf_report_json(r), io::chain_dot(r.chain), rc.format, out);
}

void cmd_reduce_tree(const std::string& in, const std::string& factor, const RunConfig& rc,
                     const Sources& sources, std::ostream& out) {
  TruncatedTree tt = parse_truncated_tree(io::read_file(in));
  FiniteGroup g = io::parse_group_spec(factor);
  PipelineCaps caps{{rc.degree_cap, sources.degree_cap},
                    {rc.oracle_cap, sources.oracle_cap},
                    {rc.memory_budget, sources.memory_budget}};
  std::optional<Json> witness;
  if (tt.branch) {
    Json w = Json::array();
    for (const Sequence& s : descending_witness(tt)) w.push_back(s);
    witness = w;
  }
  PipelineReport r = tree_to_group(tt.tree, g, caps, rc.threads);
  Json report = io::pipeline_report_json(r);
  if (witness) report["descending_witness"] = *witness;
  emit(report, io::chain_dot(r.hopf.chain), rc.format, out);
}

void cmd_oracle_group(const std::string& spec, bool certificate, const RunConfig& rc, std::ostream& out) {
  FiniteGroup g = io::parse_group_spec(spec);
  if (g.size() > rc.oracle_cap)
    throw CapError("group of order " + std::to_string(g.size()) + " exceeds the oracle cap of " +
                   std::to_string(rc.oracle_cap));
  std::vector<Index> gens = small_generating_set(g);
  Json report;
  report["label"] = g.label();
  report["order"] = g.size();
  report["abelian"] = g.is_abelian();
  report["generators"] = gens;
  report["conjugacy_classes"] = conjugacy_classes(g).size();
  Json normals = Json::array();
  for (const SubgroupSet& s : normal_subgroups_bruteforce(g)) normals.push_back(s.order());
  report["normal_subgroup_orders"] = normals;
  report["hopfian_check"] = io::hopfian_check_json(hopfian_check_bruteforce(g, gens), certificate);
  emit(report, std::nullopt, rc.format, out);
}

void add_wreath_options(CLI::App* sub, WreathArgs& a) {
  sub->add_option("--poset", a.poset, "chain:n, antichain:n, or a poset file");
  sub->add_option("--factor", a.factor, "factor group for every element (builtin name or file)");
  sub->add_option("--factors", a.factors, "one factor per poset element")->delimiter(',');
  sub->add_option("--in", a.in, "wreath instance file");
}

// First positional token that names no subcommand of the app reached so far.
std::optional<std::string> unknown_word(CLI::App& app, const std::vector<std::string>& args) {
  CLI::App* at = &app;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("-", 0) == 0) {
      if (a.find('=') != std::string::npos) continue;
      for (CLI::App* scope = at; scope; scope = scope->get_parent()) {
        const CLI::Option* opt = scope->get_option_no_throw(a);
        if (opt) {
          if (opt->get_type_size() != 0) ++i;
          break;
        }
      }
      continue;
    }
    CLI::App* next = at->get_subcommand_no_throw(a);
    if (!next) return a;
    at = next;
  }
  return std::nullopt;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized wreath products over finite posets", "gwr"};
  app.require_subcommand(1);

  RunConfig rc;
  Sources sources;
  std::string degree_cap, oracle_cap, memory_budget, format = "json";
  app.add_option("--degree-cap", degree_cap, "largest permutation degree (default 1048576)");
  app.add_option("--oracle-cap", oracle_cap, "largest group order for brute-force oracles (default 10000)");
  app.add_option("--memory-budget", memory_budget, "bytes of transversal storage, K/M/G suffixes (default 2G)");
  app.add_option("--format", format, "json, dot or text");
  app.add_option("--threads", rc.threads, "worker threads for sifting")->check(CLI::PositiveNumber);
  app.add_flag("--deterministic,!--no-deterministic", rc.deterministic, "deterministic engine (default on)");

  WreathArgs wa;
  std::string order_spec, factor_spec, tree_in, group_spec;
  bool certificate = false;

  CLI::App* wreath = app.add_subcommand("wreath", "wreath product operations")->require_subcommand(1);
  wreath->fallthrough();
  CLI::App* w_build = wreath->add_subcommand("build", "build the group and report its chain");
  CLI::App* w_order = wreath->add_subcommand("order", "exact group order");
  CLI::App* w_normal = wreath->add_subcommand("normal-subgroups", "kernels D_gamma for every downset");
  CLI::App* w_quot = wreath->add_subcommand("quotient-check", "quotient by D_gamma against the complement");
  for (CLI::App* sub : {w_build, w_order, w_normal, w_quot}) {
    sub->fallthrough();
    add_wreath_options(sub, wa);
  }
  w_quot->add_option("--gamma", wa.gamma, "downset, e.g. {0} (default: every downset)");

  CLI::App* hopf = app.add_subcommand("hopf", "linear orders to groups")->require_subcommand(1);
  hopf->fallthrough();
  CLI::App* h_analyze = hopf->add_subcommand("analyze", "normal chain and Hopfian report");
  h_analyze->fallthrough();
  h_analyze->add_option("--order", order_spec, "linear order: chain:n or a poset file")->required();
  h_analyze->add_option("--factor", factor_spec, "factor group")->default_val("A5");

  CLI::App* reduce = app.add_subcommand("reduce", "tree reduction pipeline")->require_subcommand(1);
  reduce->fallthrough();
  CLI::App* r_tree = reduce->add_subcommand("tree", "tree -> Kleene-Brouwer order -> group");
  r_tree->fallthrough();
  r_tree->add_option("--in", tree_in, "tree file")->required();
  r_tree->add_option("--factor", factor_spec, "factor group")->default_val("A5");

  CLI::App* oracle = app.add_subcommand("oracle", "brute-force finite group oracles")->require_subcommand(1);
  oracle->fallthrough();
  CLI::App* o_group = oracle->add_subcommand("group", "normal subgroups and Hopfian check");
  o_group->fallthrough();
  o_group->add_option("--group", group_spec, "builtin name or group file")->required();
  o_group->add_flag("--certificate", certificate, "include the surjective endomorphisms");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    const bool unknown = dynamic_cast<const CLI::ExtrasError*>(&e) != nullptr ||
                         (dynamic_cast<const CLI::RequiredError*>(&e) != nullptr &&
                          std::string(e.what()).find("subcommand") != std::string::npos);
    if (unknown) {
      std::string message = e.what();
      if (auto word = unknown_word(app, args)) message = "unknown subcommand '" + *word + "'";
      err << io::diagnostic("unknown_subcommand", message, kExitUsage) << '\n';
      return kExitUsage;
    }
    err << io::diagnostic("invalid_input", e.what(), kExitInvalid) << '\n';
    return kExitInvalid;
  }

  try {
    if (!degree_cap.empty()) {
      rc.degree_cap = parse_size(degree_cap, "--degree-cap");
      sources.degree_cap = "--degree-cap";
    }
    if (!oracle_cap.empty()) {
      rc.oracle_cap = parse_size(oracle_cap, "--oracle-cap");
      sources.oracle_cap = "--oracle-cap";
    }
    if (!memory_budget.empty()) {
      rc.memory_budget = parse_size(memory_budget, "--memory-budget");
      sources.memory_budget = "--memory-budget";
    }
    rc.format = parse_format(format);
    if (!rc.deterministic)
      throw ValidationError("only the deterministic engine is implemented; drop --no-deterministic");
    DegreeCapScope cap_scope(rc.degree_cap);

    std::ostringstream buffer;
    if (w_build->parsed()) cmd_wreath_build(wa, rc, buffer);
    else if (w_order->parsed()) cmd_wreath_order(wa, rc, buffer);
    else if (w_normal->parsed()) cmd_wreath_normal_subgroups(wa, rc, buffer);
    else if (w_quot->parsed()) {
      wa.gamma_given = w_quot->count("--gamma") > 0;
      cmd_wreath_quotient_check(wa, rc, buffer);
    } else if (h_analyze->parsed()) cmd_hopf_analyze(order_spec, factor_spec, rc, buffer);
    else if (r_tree->parsed()) cmd_reduce_tree(tree_in, factor_spec, rc, sources, buffer);
    else if (o_group->parsed()) cmd_oracle_group(group_spec, certificate, rc, buffer);
    out << buffer.str();
    return kExitOk;
  } catch (const ValidationError& e) {
    err << io::diagnostic(e.code(), e.what(), kExitInvalid) << '\n';
    return kExitInvalid;
  } catch (const WellDefinednessViolation& e) {
    err << io::diagnostic(e.code(), e.what(), kExitInvalid) << '\n';
    return kExitInvalid;
  } catch (const CapError& e) {
    err << io::diagnostic(e.code(), e.what(), kExitCap) << '\n';
    return kExitCap;
  } catch (const std::bad_alloc&) {
    err << io::diagnostic("memory_budget_exceeded", "allocation failed", kExitCap) << '\n';
    return kExitCap;
  } catch (const std::exception& e) {
    err << io::diagnostic("internal", e.what(), kExitInternal) << '\n';
    return kExitInternal;
  }
}

}  // namespace gwr::cli
