#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "gwr/error.hpp"
#include "gwr/perm.hpp"
#include "oracles.hpp"

using namespace gwr;

namespace {

Permutation cyc(const char* text, std::size_t n) { return parse_cycles(text, n); }

Permutation random_perm(std::size_t n, std::mt19937_64& rng) {
  return Permutation::from_images(oracle::random_perm(n, rng));
}

}  // namespace

TEST_CASE("compose applies the right factor first") {
  Permutation a = cyc("(0 1)", 3), b = cyc("(1 2)", 3);
  Permutation c = compose(a, b);
  for (Point x = 0; x < 3; ++x) CHECK(c(x) == a(b(x)));
  CHECK(c == cyc("(0 1 2)", 3));
  CHECK(format_cycles(c) == "(0 1 2)");
}

TEST_CASE("inverse and conjugate") {
  CHECK(inverse(Permutation(4)).is_identity());
  Permutation r = cyc("(0 1 2)", 3);
  CHECK(inverse(r) == cyc("(0 2 1)", 3));
  for (Point x = 0; x < 3; ++x) CHECK(inverse(r)(r(x)) == x);
  CHECK(inverse(inverse(r)) == r);

  Permutation g = cyc("(0 1)", 3), by = cyc("(0 2)", 3);
  Permutation k = conjugate(g, by);
  // by g by^-1, evaluated pointwise
  for (Point x = 0; x < 3; ++x) CHECK(k(x) == by(g(inverse(by)(x))));
  CHECK(k == cyc("(1 2)", 3));
  CHECK(conjugate(g, Permutation(3)) == g);
  CHECK(conjugate(Permutation(3), by).is_identity());
}

TEST_CASE("parse and format cycles") {
  CHECK(parse_cycles("()", 5).is_identity());
  Permutation five = parse_cycles("(0 1 2 3 4)", 5);
  CHECK(five(4) == 0);
  CHECK(format_cycles(five) == "(0 1 2 3 4)");
  CHECK(format_cycles(parse_cycles("(3 4)(2 0 1)", 5)) == "(0 1 2)(3 4)");
  CHECK(format_cycles(parse_cycles("(1,2)", 3)) == "(1 2)");
  CHECK(format_cycles(Permutation(3)) == "()");

  CHECK_THROWS_AS(parse_cycles("(0 1", 3), ValidationError);
  CHECK_THROWS_AS(parse_cycles("(0 0)", 3), ValidationError);
  CHECK_THROWS_AS(parse_cycles("(0 1)(1 2)", 3), ValidationError);
  CHECK_THROWS_AS(parse_cycles("(0 3)", 3), ValidationError);
  CHECK_THROWS_AS(parse_cycles("", 3), ValidationError);
  CHECK_THROWS_AS(parse_cycles("(a b)", 3), ValidationError);
}

TEST_CASE("format/parse round trip on random permutations") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    std::size_t n = 1 + rng() % 12;
    Permutation p = random_perm(n, rng);
    std::string s = format_cycles(p);
    CHECK(parse_cycles(s, n) == p);
    CHECK(format_cycles(parse_cycles(s, n)) == s);
  }
}

TEST_CASE("from_images validates") {
  CHECK_THROWS_AS(Permutation::from_images({0, 0}), ValidationError);
  CHECK_THROWS_AS(Permutation::from_images({0, 2}), ValidationError);
  CHECK(Permutation::from_images({1, 0}).support() == std::vector<Point>{0, 1});
  CHECK_THROWS_AS(compose(Permutation(2), Permutation(3)), ValidationError);
}

TEST_CASE("degree cap") {
  std::size_t saved = degree_cap();
  set_degree_cap(10);
  CHECK_THROWS_AS(Permutation(11), CapError);
  CHECK_NOTHROW(Permutation(10));
  set_degree_cap(saved);
  CHECK(degree_cap() == saved);
  CHECK_THROWS_AS(set_degree_cap(0), ValidationError);
}

TEST_CASE("group laws on random permutations") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    std::size_t n = 1 + rng() % 40;
    Permutation p = random_perm(n, rng), q = random_perm(n, rng), r = random_perm(n, rng);
    CHECK(compose(compose(p, q), r) == compose(p, compose(q, r)));
    CHECK(compose(p, Permutation(n)) == p);
    CHECK(compose(Permutation(n), p) == p);
    CHECK(compose(p, inverse(p)).is_identity());
    oracle::Img pi(p.images().begin(), p.images().end()), qi(q.images().begin(), q.images().end());
    Permutation pq = compose(p, q);
    CHECK(oracle::Img(pq.images().begin(), pq.images().end()) == oracle::compose(pi, qi));

    auto sp = p.support(), sq = q.support(), spq = compose(p, q).support();
    std::set<Point> both(sp.begin(), sp.end());
    both.insert(sq.begin(), sq.end());
    CHECK(std::all_of(spq.begin(), spq.end(), [&](Point x) { return both.count(x) > 0; }));

    Permutation out;
    compose_into(out, p, q);
    CHECK(out == compose(p, q));
  }
}
