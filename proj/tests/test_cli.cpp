#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gwr/cli.hpp"
#include "gwr/hopf.hpp"
#include "gwr/io.hpp"

using namespace gwr;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write(const std::string& name, const std::string& text) {
  fs::path dir = fs::temp_directory_path() / "gwr_test_cli";
  fs::create_directories(dir);
  std::ofstream(dir / name) << text;
  return (dir / name).string();
}

void check_diagnostic(const Result& r, int code, const std::string& error) {
  CHECK(r.code == code);
  CHECK(r.out.empty());
  REQUIRE(!r.err.empty());
  CHECK(r.err.find('\n') == r.err.size() - 1);
  io::Json j = io::Json::parse(r.err);
  CHECK(j["error"] == error);
  CHECK(j["exit_code"] == code);
}

}  // namespace

TEST_CASE("hopf analyze reproduces the library report") {
  Result r = run({"hopf", "analyze", "--order", "chain:2", "--factor", "Z2"});
  REQUIRE(r.code == 0);
  io::Json j = io::Json::parse(r.out);
  CHECK(j["hopfian"] == true);
  CHECK(j["normal_chain"]["length"] == 3);
  CHECK(r.out == io::hopf_report_json(hopfian_report(make_chain(2), builtin_group("Z2"))).dump(2) + "\n");
  CHECK(j["group"]["order"] == "8");
}

TEST_CASE("wreath subcommands") {
  Result order = run({"wreath", "order", "--poset", "chain:2", "--factor", "A5"});
  REQUIRE(order.code == 0);
  io::Json j = io::Json::parse(order.out);
  CHECK(j["order"] == to_decimal(big_pow(60, 61)));
  CHECK(j["formula_agrees"] == true);

  Result text = run({"wreath", "order", "--poset", "antichain:2", "--factors", "Z2,Z3", "--format", "text"});
  CHECK(text.code == 0);
  CHECK(text.out == "6\n");

  Result build = run({"wreath", "build", "--poset", "chain:2", "--factor", "S3"});
  REQUIRE(build.code == 0);
  CHECK(io::Json::parse(build.out)["order"] == "279936");
  CHECK(io::Json::parse(build.out)["generators"].size() == 10);

  Result normal = run({"wreath", "normal-subgroups", "--poset", "chain:2", "--factor", "Z2"});
  REQUIRE(normal.code == 0);
  io::Json n = io::Json::parse(normal.out);
  CHECK(n["kernels"].size() == 3);
  CHECK(n["oracle"]["normal_subgroups"] == 6);
  CHECK(n["oracle"]["unmatched_orders"].size() == 3);
  for (const auto& k : n["kernels"]) CHECK(k["verification"]["passed"] == true);

  Result dot = run({"wreath", "normal-subgroups", "--poset", "antichain:2", "--factor", "Z2", "--format", "dot"});
  CHECK(dot.code == 0);
  CHECK(dot.out.rfind("digraph kernels {", 0) == 0);

  Result quot = run({"wreath", "quotient-check", "--poset", "chain:2", "--factor", "Z3", "--gamma", "{0}"});
  REQUIRE(quot.code == 0);
  CHECK(io::Json::parse(quot.out)["ok"] == true);
  Result every = run({"wreath", "quotient-check", "--poset", "antichain:3", "--factor", "Z2"});
  CHECK(io::Json::parse(every.out)["checks"].size() == 8);

  std::string inst = write("w.json", R"({"poset": "chain:2", "factors": ["Z2", "Z3"]})");
  Result in = run({"wreath", "order", "--in", inst});
  REQUIRE(in.code == 0);
  CHECK(io::Json::parse(in.out)["order"] == "24");  // Z2^3 * Z3
}

TEST_CASE("reduce and oracle subcommands") {
  std::string tree = write("two.json", "[[],[0]]");
  Result r = run({"reduce", "tree", "--in", tree, "--factor", "Z2"});
  REQUIRE(r.code == 0);
  io::Json j = io::Json::parse(r.out);
  CHECK(j["reduction"] == "kleene-brouwer (stand-in)");
  Result hopf = run({"hopf", "analyze", "--order", "chain:2", "--factor", "Z2"});
  CHECK(j["hopf"].dump(2) + "\n" == hopf.out);
  CHECK(j["chain_dot"].get<std::string>().rfind("digraph normal_chain", 0) == 0);
  CHECK(j["caps"]["oracle_cap"]["source"] == "default");

  std::string branch = write("branch.json", R"({"nodes": [[], [0], [0,0]], "depth": 2, "branch": {"period": [0]}})");
  Result b = run({"reduce", "tree", "--in", branch, "--factor", "Z2", "--oracle-cap", "200"});
  REQUIRE(b.code == 0);
  io::Json bj = io::Json::parse(b.out);
  CHECK(bj["descending_witness"].dump() == "[[0],[0,0]]");
  CHECK(bj["caps"]["oracle_cap"]["source"] == "--oracle-cap");

  Result o = run({"oracle", "group", "--group", "D4"});
  REQUIRE(o.code == 0);
  io::Json oj = io::Json::parse(o.out);
  CHECK(oj["normal_subgroup_orders"].size() == 6);
  CHECK(oj["hopfian_check"]["hopfian"] == true);
  CHECK_FALSE(oj["hopfian_check"].contains("certificate"));
  Result cert = run({"oracle", "group", "--group", "S3", "--certificate"});
  CHECK(io::Json::parse(cert.out)["hopfian_check"]["certificate"].size() == 6);
}

TEST_CASE("error paths") {
  check_diagnostic(run({"bogus"}), 64, "unknown_subcommand");
  check_diagnostic(run({"wreath", "bogus"}), 64, "unknown_subcommand");
  check_diagnostic(run({}), 64, "unknown_subcommand");

  std::string missing = write("missing-root.json", "[[0]]");
  check_diagnostic(run({"reduce", "tree", "--in", missing}), 2, "invalid_input");
  check_diagnostic(run({"reduce", "tree", "--in", write("junk.json", "[[],")}), 2, "invalid_input");
  check_diagnostic(run({"reduce", "tree"}), 2, "invalid_input");
  check_diagnostic(run({"wreath", "order", "--poset", "chain:2"}), 2, "invalid_input");
  check_diagnostic(run({"wreath", "order", "--poset", "chain:2", "--factor", "Q8"}), 2, "invalid_input");
  check_diagnostic(run({"--format", "xml", "wreath", "order", "--poset", "chain:1", "--factor", "Z2"}), 2, "invalid_input");
  check_diagnostic(run({"--no-deterministic", "wreath", "order", "--poset", "chain:1", "--factor", "Z2"}), 2,
                   "invalid_input");
  check_diagnostic(run({"--oracle-cap", "0", "oracle", "group", "--group", "Z2"}), 2, "invalid_input");
  check_diagnostic(run({"wreath", "quotient-check", "--poset", "chain:2", "--factor", "Z2", "--gamma", "{1}"}), 2,
                   "invalid_input");
  check_diagnostic(run({"hopf", "analyze", "--order", "antichain:2", "--factor", "Z2"}), 2, "invalid_input");
  check_diagnostic(run({"wreath", "order", "--poset", "chain:1", "--factor", "Z2", "--format", "dot"}), 2,
                   "invalid_input");

  check_diagnostic(run({"--degree-cap", "100", "wreath", "order", "--poset", "chain:2", "--factor", "A5"}), 3,
                   "cap_exceeded");
  check_diagnostic(run({"--memory-budget", "1K", "wreath", "order", "--poset", "chain:2", "--factor", "S3"}), 3,
                   "memory_budget_exceeded");
  check_diagnostic(run({"--oracle-cap", "10", "oracle", "group", "--group", "A5"}), 3, "cap_exceeded");
  check_diagnostic(run({"wreath", "order", "--poset", "chain:4", "--factor", "A5"}), 3, "cap_exceeded");

  Result help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("wreath") != std::string::npos);
}

TEST_CASE("global flags may follow the subcommand") {
  Result a = run({"wreath", "order", "--poset", "chain:2", "--factor", "Z2", "--threads", "3", "--format", "text"});
  CHECK(a.code == 0);
  CHECK(a.out == "8\n");
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
  std::string tree = write("three.json", "[[],[0],[1]]");
  std::vector<std::vector<std::string>> commands = {
      {"hopf", "analyze", "--order", "chain:3", "--factor", "Z2"},
      {"wreath", "build", "--poset", "chain:2", "--factor", "S3"},
      {"wreath", "normal-subgroups", "--poset", "antichain:2", "--factor", "S3"},
      {"wreath", "quotient-check", "--poset", "chain:3", "--factor", "Z2"},
      {"reduce", "tree", "--in", tree, "--factor", "Z2"},
      {"oracle", "group", "--group", "A5"},
  };
  for (const auto& cmd : commands) {
    Result first = run(cmd);
    REQUIRE(first.code == 0);
    CHECK(run(cmd).out == first.out);
    for (const char* threads : {"2", "4"}) {
      auto with = cmd;
      with.insert(with.begin(), {"--threads", threads});
      CHECK(run(with).out == first.out);
    }
  }
}
