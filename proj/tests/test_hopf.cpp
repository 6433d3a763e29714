#include <doctest.h>

#include <algorithm>
#include <set>

#include "gwr/error.hpp"
#include "gwr/hopf.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace gwr;
using support::img;

namespace {

std::vector<oracle::Img> elements_of(const WreathGroup& w) {
  std::vector<oracle::Img> gens;
  for (const Permutation& g : w.generators()) gens.push_back(img(g));
  auto all = oracle::closure(gens, w.degree());
  std::vector<oracle::Img> out(all.begin(), all.end());
  std::rotate(out.begin(), std::find(out.begin(), out.end(), oracle::identity(w.degree())), out.begin() + 1);
  return out;
}

bool fixes_outside(const ConfigSpace& s, const oracle::Img& g, const DownSet& d) {
  for (std::size_t x = 0; x < s.total(); ++x)
    for (std::size_t lam = 0; lam < s.poset().size(); ++lam)
      if (!d.contains(lam) && s.digit(g[x], lam) != s.digit(x, lam)) return false;
  return true;
}

}  // namespace

TEST_CASE("groups for linear orders") {
  FiniteGroup a5 = builtin_group("A5");
  WreathGroup one = build_group_for_order(make_chain(1), a5);
  CHECK(one.degree() == 60);
  CHECK(one.handle().order() == 60);
  CHECK(build_group_for_order(make_chain(2), a5).degree() == 3600);
  WreathGroup z2 = build_group_for_order(make_chain(2), builtin_group("Z2"));
  CHECK(z2.handle().order() == 8);
  CHECK(elements_of(z2).size() == 8);
  // built over the opposite order: the least element of W is the top coordinate
  CHECK(z2.space().poset() == opposite(make_chain(2)));
  CHECK_THROWS_AS(build_group_for_order(make_antichain(2), a5), ValidationError);

  Poset shuffled = Poset::from_covers(3, {{2, 0}, {0, 1}});
  CHECK(linear_ranking(shuffled) == std::vector<std::size_t>{2, 0, 1});
}

TEST_CASE("normal chains") {
  NormalChain c1 = normal_chain(build_group_for_order(make_chain(1), builtin_group("A5")));
  CHECK(c1.count() == 2);
  CHECK(c1.ok());
  CHECK(c1.links[0].order == 1);
  CHECK(c1.links[1].order == 60);

  WreathGroup z3 = build_group_for_order(make_chain(3), builtin_group("Z2"));
  NormalChain c3 = normal_chain(z3);
  CHECK(c3.count() == 4);
  CHECK(c3.ok());
  auto all = elements_of(z3);
  for (const ChainLink& link : c3.links) {
    std::size_t kernel = std::count_if(all.begin(), all.end(),
                                       [&](const oracle::Img& g) { return fixes_outside(z3.space(), g, link.downset); });
    CHECK(link.order == kernel);
  }
  CHECK(c3.links[1].order == 16);  // bottom coordinate: one Z2 per configuration of the other two
  CHECK(c3.links[2].order == 64);
  CHECK(c3.links[3].order == 128);

  for (std::size_t n = 1; n <= 3; ++n)
    for (const char* f : {"Z2", "Z3", "S3"}) {
      if (n == 3 && f[0] == 'S') continue;
      NormalChain c = normal_chain(build_group_for_order(make_chain(n), builtin_group(f)));
      CHECK(c.count() == n + 1);
      CHECK(c.ok());
    }
}

TEST_CASE("segment quotients") {
  FiniteGroup z2 = builtin_group("Z2");
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t k = 0; k <= n; ++k) {
      SegmentCheck s = segment_quotient_check(make_chain(n), k, z2);
      CAPTURE(n);
      CAPTURE(k);
      CHECK(s.ok);
      CHECK(s.independent.target_degree == (std::size_t{1} << k));
    }
  CHECK(segment_quotient_check(make_chain(2), 0, z2).inherited.target_degree == 1);
  CHECK(segment_quotient_check(make_chain(2), 2, z2).inherited.target_degree == 4);
  CHECK_THROWS_AS(segment_quotient_check(make_chain(2), 3, z2), ValidationError);

  // a linear order whose labels are not already sorted
  Poset shuffled = Poset::from_covers(3, {{2, 0}, {0, 1}});
  for (std::size_t k = 0; k <= 3; ++k) CHECK(segment_quotient_check(shuffled, k, builtin_group("S3")).ok);
}

TEST_CASE("Hopfian reports") {
  HopfReport r = hopfian_report(make_chain(2), builtin_group("Z2"));
  CHECK(r.hopfian);
  CHECK(r.group_order == 8);
  CHECK(r.order_type_count == 3);
  CHECK(r.chain_argument_holds);
  REQUIRE(r.oracle.has_value());
  CHECK(r.methods == std::vector<std::string>{"oracle", "chain-argument"});
  auto elems = elements_of(build_group_for_order(make_chain(2), builtin_group("Z2")));
  auto endos = oracle::all_endomorphisms(oracle::from_perms(elems));
  CHECK(r.oracle->endomorphism_count == endos.size());
  std::size_t bijective = 0;
  for (const auto& f : endos) bijective += std::set<std::uint32_t>(f.begin(), f.end()).size() == f.size();
  CHECK(r.oracle->surjective.size() == bijective);

  HopfReport a5 = hopfian_report(make_chain(1), builtin_group("A5"));
  CHECK(a5.hopfian);
  REQUIRE(a5.oracle.has_value());
  CHECK(a5.oracle->surjective.size() == 120);

  for (std::size_t n = 1; n <= 3; ++n) {
    HopfReport z = hopfian_report(make_chain(n), builtin_group("Z2"));
    CHECK(z.hopfian);
    CHECK(z.order_type_count == n + 1);
    CHECK(z.chain_argument.size() == n);
    CHECK(z.segments.size() == n + 1);
    if (z.oracle) CHECK(z.oracle->hopfian);
  }

  HopfOptions tight;
  tight.oracle_cap = 4;
  HopfReport skipped = hopfian_report(make_chain(2), builtin_group("Z2"), tight);
  CHECK_FALSE(skipped.oracle.has_value());
  CHECK_FALSE(skipped.oracle_skipped.empty());
  CHECK(skipped.methods == std::vector<std::string>{"chain-argument"});
  CHECK(skipped.hopfian);

  CHECK_THROWS_AS(hopfian_report(make_antichain(2), builtin_group("Z2")), ValidationError);
}
