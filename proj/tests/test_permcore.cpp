#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "transchrome/error.hpp"
#include "transchrome/permcore.hpp"

using namespace transchrome;

namespace {

Perm P(const char* text, std::size_t degree) { return Perm::parse(text, degree); }

PermGroup klein_blocks() { return PermGroup::block_symmetric(2, 2); }

bool has_element_of_order(const PermGroup& g, std::uint64_t order) {
  return std::any_of(g.elements().begin(), g.elements().end(), [&](const Perm& x) { return x.order() == order; });
}

}  // namespace

TEST_CASE("perm parsing, printing and composition") {
  const Perm a = P("(0 1 2)", 4);
  CHECK(a.to_string() == "(0 1 2)");
  CHECK(P("()", 3).is_identity());
  CHECK(a.order() == 3);
  CHECK(a.inverse().to_string() == "(0 2 1)");
  // (a*b)(x) = a(b(x))
  const Perm b = P("(0 1)", 4);
  CHECK((a * b)[0] == a[b[0]]);
  CHECK((a * b).to_string() == "(0 2)");
  CHECK(P("(0 1)(2 3)", 4).cycle_type() == std::vector<int>{2, 2});
  CHECK_THROWS_AS(P("(0 4)", 4), Error);
  CHECK_THROWS_AS(P("(0 1", 4), Error);
  CHECK(format_perm_list(parse_perm_list("(0 1); (2 3)", 4)) == "(0 1);(2 3)");
}

TEST_CASE("random samples: associativity and inverses") {
  std::mt19937_64 rng(7);
  const auto group = PermGroup::symmetric(6);
  const auto& s6 = group.elements();
  std::uniform_int_distribution<std::size_t> pick(0, s6.size() - 1);
  for (int i = 0; i < 300; ++i) {
    const Perm &x = s6[pick(rng)], &y = s6[pick(rng)], &z = s6[pick(rng)];
    CHECK((x * y) * z == x * (y * z));
    CHECK((x.inverse() * x).is_identity());
    CHECK(x.pow(x.order()).is_identity());
  }
}

TEST_CASE("generate") {
  const std::vector<Perm> s4_gens{P("(0 1)", 4), P("(0 1 2 3)", 4)};
  CHECK(PermGroup::generate(4, s4_gens).order() == 24);
  CHECK(PermGroup::generate(4, {}).order() == 1);
  const std::vector<Perm> two{P("(0 1)", 4), P("(2 3)", 4)};
  const auto v = PermGroup::generate(4, two);
  CHECK(v.order() == 4);
  CHECK(v == klein_blocks());
  CHECK(v.is_closed());
  CHECK(v.is_abelian());
  CHECK(PermGroup::symmetric(9).order() == 362880);
  CHECK_THROWS_AS(PermGroup::generate(4, s4_gens, 10), Error);
}

TEST_CASE("centralizer") {
  const auto s4 = PermGroup::symmetric(4);
  const std::vector<Perm> dt{P("(0 1)(2 3)", 4)};
  const auto d8 = centralizer(s4, dt);
  CHECK(d8.order() == 8);
  CHECK_FALSE(d8.is_abelian());
  CHECK(has_element_of_order(d8, 4));

  const std::vector<Perm> cyc{P("(0 1 2 3)", 4)};
  const auto z4 = centralizer(s4, cyc);
  CHECK(z4.order() == 4);
  CHECK(has_element_of_order(z4, 4));
  CHECK(z4.is_abelian());

  const std::vector<Perm> id{Perm(4)};
  CHECK(centralizer(s4, id) == s4);

  for (const auto& c : d8.elements()) CHECK(c * dt[0] == dt[0] * c);
}

TEST_CASE("left cosets") {
  const auto s4 = PermGroup::symmetric(4);
  CHECK(left_cosets(s4, klein_blocks()).size() == 6);
  CHECK(left_cosets(s4, s4).size() == 1);
  const std::vector<Perm> three{P("(0 1 2)", 3)};
  const auto a3 = PermGroup::generate(3, three);
  CHECK(left_cosets(PermGroup::symmetric(3), a3).size() == 2);

  const auto s2 = PermGroup::generate(4, std::vector<Perm>{P("(0 1)", 4)});
  CHECK_THROWS_AS(left_cosets(s2, klein_blocks()), Error);

  // Cosets partition G.
  CosetSpace space(s4, klein_blocks());
  std::vector<int> hits(space.size(), 0);
  for (const auto& g : s4.elements()) {
    const auto c = space.coset_of(g);
    ++hits[c];
    CHECK(space.coset(c).contains(g));
  }
  for (int h : hits) CHECK(h == 4);
}

TEST_CASE("fixed cosets") {
  for (unsigned p : {2u, 3u, 5u}) {
    const auto sp = PermGroup::symmetric(p);
    const auto e = PermGroup::block_symmetric(1, p);
    std::vector<int> img(p);
    for (unsigned i = 0; i < p; ++i) img[i] = static_cast<int>((i + 1) % p);
    const std::vector<Perm> cycle{Perm::from_images(img)};
    CHECK(fixed_cosets(sp, e, cycle).empty());
  }
  const auto s4 = PermGroup::symmetric(4);
  const std::vector<Perm> dt{P("(0 1)(2 3)", 4)};
  CHECK(fixed_cosets(s4, klein_blocks(), dt).size() == 2);
  const std::vector<Perm> id{Perm(4)};
  CHECK(fixed_cosets(s4, klein_blocks(), id).size() == 6);
}

TEST_CASE("coset orbits and orbit-stabilizer") {
  const auto s4 = PermGroup::symmetric(4);
  const std::vector<Perm> dt{P("(0 1)(2 3)", 4)};
  const auto d8 = centralizer(s4, dt);
  const auto fixed = fixed_cosets(s4, klein_blocks(), dt);
  const auto orbits = coset_orbits(d8, fixed);
  REQUIRE(orbits.size() == 1);
  CHECK(orbits[0].stabilizer.order() == 4);

  const auto all = left_cosets(s4, klein_blocks());
  const auto one = coset_orbits(s4, all);
  REQUIRE(one.size() == 1);
  CHECK(one[0].stabilizer.order() == 4);
  CHECK(one[0].stabilizer == klein_blocks());

  const auto trivial = PermGroup::block_symmetric(1, 4);
  CHECK(coset_orbits(trivial, all).size() == 6);

  // |orbit| * |stabilizer| = |C| for a range of centralizers.
  for (const char* s : {"()", "(0 1)", "(0 1)(2 3)", "(0 1 2)"}) {
    const std::vector<Perm> S{P(s, 4)};
    const auto C = centralizer(s4, S);
    const auto fx = fixed_cosets(s4, klein_blocks(), S);
    std::size_t total = 0;
    for (const auto& o : coset_orbits(C, fx)) {
      CHECK(o.size * o.stabilizer.order() == C.order());
      total += o.size;
    }
    CHECK(total == fx.size());
  }
}

TEST_CASE("conjugating element") {
  const auto s4 = PermGroup::symmetric(4);
  const std::vector<Perm> a{P("(0 1)", 4)}, b{P("(2 3)", 4)}, c{P("(0 1)(2 3)", 4)};
  const auto g = conjugating_element(s4, a, b);
  REQUIRE(g.has_value());
  CHECK(*g * a[0] * g->inverse() == b[0]);
  const auto same = conjugating_element(s4, a, a);
  REQUIRE(same.has_value());
  CHECK(*same * a[0] * same->inverse() == a[0]);
  CHECK_FALSE(conjugating_element(s4, a, c).has_value());
}
