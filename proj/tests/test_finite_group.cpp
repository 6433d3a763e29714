#include <doctest.h>

#include <algorithm>
#include <set>

#include "gwr/error.hpp"
#include "gwr/finite_group.hpp"
#include "oracles.hpp"

using namespace gwr;

namespace {

oracle::Table to_oracle(const FiniteGroup& g) {
  oracle::Table t;
  t.n = g.size();
  for (Index a = 0; a < g.size(); ++a)
    for (Index b = 0; b < g.size(); ++b) t.mul.push_back(g.mul(a, b));
  return t;
}

std::vector<Index> all_indices(const FiniteGroup& g) {
  std::vector<Index> out(g.size());
  for (Index i = 0; i < g.size(); ++i) out[i] = i;
  return out;
}

/// Normal subgroups by testing every subset (groups of order <= 12).
std::set<std::vector<bool>> normal_subgroups_by_subsets(const FiniteGroup& g) {
  std::set<std::vector<bool>> out;
  const std::size_t n = g.size();
  for (std::uint32_t m = 1; m < (1u << n); m += 2) {  // identity always in
    std::vector<bool> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = m >> i & 1;
    bool ok = true;
    for (Index a = 0; a < n && ok; ++a)
      for (Index b = 0; b < n && ok; ++b) {
        if (s[a] && s[b] && !s[g.mul(a, b)]) ok = false;
        if (s[a] && !s[g.mul(g.mul(b, a), g.inv(b))]) ok = false;
      }
    if (ok) out.insert(s);
  }
  return out;
}

}  // namespace

TEST_CASE("builtin groups") {
  CHECK(builtin_group("A5").size() == 60);
  CHECK(builtin_group("Z2").mul(1, 1) == 0);
  FiniteGroup s3 = builtin_group("S3");
  bool noncommuting = false;
  for (Index i = 0; i < 6; ++i)
    for (Index j = 0; j < 6; ++j) noncommuting |= s3.mul(i, j) != s3.mul(j, i);
  CHECK(noncommuting);
  CHECK_FALSE(s3.is_abelian());
  CHECK(builtin_group("V4").is_abelian());
  CHECK_THROWS_AS(builtin_group("Q8"), ValidationError);
}

TEST_CASE("A5 is indexed by lexicographic image tuples") {
  auto expected = oracle::a5_elements();
  auto perms = a5_permutations();
  REQUIRE(perms.size() == expected.size());
  for (std::size_t i = 0; i < perms.size(); ++i)
    CHECK(std::vector<std::uint32_t>(perms[i].images().begin(), perms[i].images().end()) == expected[i]);
  CHECK(to_oracle(builtin_group("A5")).mul == oracle::from_perms(expected).mul);
}

TEST_CASE("table axioms hold for every builtin") {
  for (const std::string& name : builtin_group_names()) {
    CAPTURE(name);
    FiniteGroup g = builtin_group(name);
    CHECK(g.label() == name);
    for (Index a = 0; a < g.size(); ++a) {
      CHECK(g.mul(0, a) == a);
      CHECK(g.mul(a, 0) == a);
      CHECK(g.mul(a, g.inv(a)) == 0);
      for (Index b = 0; b < g.size(); ++b)
        for (Index c = 0; c < g.size(); c += 1 + g.size() / 10)
          CHECK(g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)));
    }
  }
}

TEST_CASE("table validation") {
  CHECK_THROWS_AS(FiniteGroup::from_table({0, 1, 1, 1}, 2, "bad"), ValidationError);
  CHECK_THROWS_AS(FiniteGroup::from_table({1, 0, 0, 1}, 2, "bad"), ValidationError);  // identity not at 0
  CHECK_THROWS_AS(FiniteGroup::from_table({0, 1, 2}, 2, "bad"), ValidationError);
  // Latin square on 5 elements with identity 0 that is not associative
  std::vector<Index> quasi = {0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0};
  CHECK_THROWS_AS(FiniteGroup::from_table(quasi, 5, "loop"), ValidationError);
  CHECK_NOTHROW(FiniteGroup::from_table({0, 1, 1, 0}, 2, "Z2"));
}

TEST_CASE("conjugacy classes") {
  CHECK(conjugacy_classes(builtin_group("A5")).size() == 5);
  CHECK(conjugacy_classes(builtin_group("A5")).size() == oracle::classes(to_oracle(builtin_group("A5"))).size());
  for (const char* name : {"Z2", "Z3", "Z4", "V4"}) {
    auto cls = conjugacy_classes(builtin_group(name));
    CHECK(cls.size() == builtin_group(name).size());
  }
  for (const std::string& name : builtin_group_names()) {
    auto cls = conjugacy_classes(builtin_group(name));
    CHECK(cls.front() == std::vector<Index>{0});
    std::size_t total = 0;
    for (const auto& c : cls) total += c.size();
    CHECK(total == builtin_group(name).size());
  }
}

TEST_CASE("normal subgroups agree with the subset and class-union oracles") {
  CHECK(normal_subgroups_bruteforce(builtin_group("A5")).size() == 2);
  CHECK(normal_subgroups_bruteforce(builtin_group("D4")).size() == 6);
  CHECK(normal_subgroups_bruteforce(builtin_group("V4")).size() == 5);
  for (const char* name : {"Z2", "Z3", "Z4", "S3", "V4", "D4"}) {
    CAPTURE(name);
    FiniteGroup g = builtin_group(name);
    std::set<std::vector<bool>> got;
    for (const SubgroupSet& s : normal_subgroups_bruteforce(g)) got.insert(s.members);
    CHECK(got == normal_subgroups_by_subsets(g));
  }
  for (const std::string& name : builtin_group_names()) {
    FiniteGroup g = builtin_group(name);
    auto subs = normal_subgroups_bruteforce(g);
    auto expected = oracle::normal_subgroups_by_class_unions(to_oracle(g));
    CHECK(subs.size() == expected.size());
    CHECK(subs.front().order() == 1);
    CHECK(subs.back().order() == g.size());
    for (const SubgroupSet& s : subs) {
      CHECK(std::find(expected.begin(), expected.end(), s.members) != expected.end());
      for (Index a : s.elements())
        for (Index b = 0; b < g.size(); ++b) {
          CHECK(s.contains(g.mul(g.mul(b, a), g.inv(b))));
          if (s.contains(b)) CHECK(s.contains(g.mul(a, b)));
        }
    }
  }
}

TEST_CASE("endomorphisms agree with exhaustive search") {
  CHECK(endomorphisms(builtin_group("Z2"), std::vector<Index>{1}).size() == 2);
  for (const char* name : {"Z2", "Z3", "Z4", "V4", "S3", "D4"}) {
    CAPTURE(name);
    FiniteGroup g = builtin_group(name);
    auto gens = small_generating_set(g);
    auto got = endomorphisms(g, gens);
    auto expected = oracle::all_endomorphisms(to_oracle(g));
    std::sort(expected.begin(), expected.end());
    CHECK(got == expected);
    auto id = all_indices(g);
    CHECK(std::find(got.begin(), got.end(), id) != got.end());
    CHECK(std::find(got.begin(), got.end(), std::vector<Index>(g.size(), 0)) != got.end());
  }
}

TEST_CASE("generating sets") {
  for (const std::string& name : builtin_group_names()) {
    FiniteGroup g = builtin_group(name);
    auto gens = small_generating_set(g);
    CHECK(subgroup_closure(g, gens).order() == g.size());
  }
  FiniteGroup a5 = builtin_group("A5");
  CHECK(subgroup_closure(a5, std::vector<Index>{}).order() == 1);
}

TEST_CASE("every builtin is Hopfian with a complete certificate") {
  for (const char* name : {"Z4", "V4", "D4", "S3", "A5", "Z2", "Z3"}) {
    CAPTURE(name);
    FiniteGroup g = builtin_group(name);
    auto gens = small_generating_set(g);
    HopfianCheck c = hopfian_check_bruteforce(g, gens);
    CHECK(c.hopfian);
    for (const Endomorphism& f : c.surjective) {
      std::set<Index> image(f.begin(), f.end());
      CHECK(image.size() == g.size());
      for (Index a = 0; a < g.size(); ++a)
        for (Index b = 0; b < g.size(); ++b) CHECK(f[g.mul(a, b)] == g.mul(f[a], f[b]));
    }
    auto all = endomorphisms(g, gens);
    std::size_t bijective = 0;
    for (const auto& f : all) bijective += std::set<Index>(f.begin(), f.end()).size() == g.size();
    CHECK(c.surjective.size() == bijective);
    CHECK(c.endomorphism_count == all.size());
  }
  CHECK(hopfian_check_bruteforce(builtin_group("A5"), small_generating_set(builtin_group("A5"))).surjective.size() == 120);
}
