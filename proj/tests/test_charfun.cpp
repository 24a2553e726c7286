#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "transchrome/arith.hpp"
#include "transchrome/charfun.hpp"
#include "transchrome/error.hpp"

using namespace transchrome;

namespace {

const std::string kE = "p2.k2.h1:[(U<(1)>:idx1,m4)]";
const std::string kTransposition = "p2.k2.h1:[(U<(1)>:idx1,m2);(U<(2)>:idx2,m1)]";
const std::string kDouble = "p2.k2.h1:[(U<(2)>:idx2,m2)]";
const std::string kFourCycle = "p2.k2.h1:[(U<>:idx4,m1)]";

PermGroup S4() { return PermGroup::symmetric(4); }
PermGroup V() { return PermGroup::block_symmetric(2, 2); }
PermGroup D8() {
  const std::vector<Perm> s{Perm::parse("(0 1)(2 3)", 4)};
  return centralizer(S4(), s);
}
PermGroup cyclic(const char* gen, std::size_t degree) {
  const std::vector<Perm> g{Perm::parse(gen, degree)};
  return PermGroup::generate(degree, g);
}

GenClassFunction random_function(ClassIndexPtr index, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 6);
  std::vector<Rational> v;
  for (std::size_t i = 0; i < index->size(); ++i) v.emplace_back(num(rng), den(rng));
  return GenClassFunction(std::move(index), std::move(v));
}

}  // namespace

TEST_CASE("class index of a symmetric group uses hom classes") {
  const auto idx = ClassIndex::build(S4(), Lambda(2, 1, 2));
  CHECK(idx->uses_hom_classes());
  REQUIRE(idx->size() == 4);
  CHECK(idx->classes()[0].id == kE);
  CHECK(idx->classes()[3].id == kFourCycle);
  // Brute force agrees on the number of classes and the centralizers.
  const auto brute = ClassIndex::build_brute_force(S4(), Lambda(2, 1, 2));
  REQUIRE(brute->size() == 4);
  for (const auto& e : idx->classes()) {
    const auto pos = brute->position_of(e.representative);
    CHECK(brute->classes()[pos].centralizer_order == e.centralizer_order);
  }
  CHECK_THROWS_AS(idx->position_of(parse_perm_list("(0 1 2)", 4)), Error);
}

TEST_CASE("json round trip") {
  std::mt19937_64 rng(3);
  const auto idx = ClassIndex::build(V(), Lambda(2, 2, 1));
  const auto chi = random_function(idx, rng);
  CHECK(GenClassFunction::from_json(idx, chi.to_json()) == chi);
  CHECK(GenClassFunction::from_json(idx, nlohmann::json::parse(chi.to_json().dump())) == chi);
  CHECK_THROWS_AS(GenClassFunction::from_json(idx, nlohmann::json{{"nope", "1"}}), Error);
  CHECK_THROWS_AS(GenClassFunction::from_json(idx, nlohmann::json{{idx->classes()[0].id, "1/0"}}), Error);
}

TEST_CASE("restrict") {
  const Lambda l(2, 1, 2);
  const auto g = ClassIndex::build(S4(), l);
  const auto c = restrict_to(GenClassFunction::constant(g, Rational(5, 3)), V());
  for (const auto& v : c.values()) CHECK(v == Rational(5, 3));

  const auto z4 = cyclic("(0 1 2 3)", 4);
  const auto r = restrict_to(GenClassFunction::indicator(g, kFourCycle), z4);
  REQUIRE(r.values().size() == 4);
  const auto& hi = r.index();
  CHECK(r.at(hi.position_of(parse_perm_list("(0 1 2 3)", 4))) == 1);
  CHECK(r.at(hi.position_of(parse_perm_list("(0 3 2 1)", 4))) == 1);
  CHECK(r.at(hi.position_of(parse_perm_list("(0 2)(1 3)", 4))) == 0);
  CHECK(r.at(hi.position_of(parse_perm_list("()", 4))) == 0);

  std::mt19937_64 rng(5);
  const auto chi = random_function(g, rng);
  CHECK(restrict_to(chi, S4()) == chi);
}

TEST_CASE("induce") {
  const Lambda l3(3, 1, 1);
  const auto a3 = cyclic("(0 1 2)", 3);
  const auto one = GenClassFunction::constant(ClassIndex::build(a3, l3), 1);
  const auto ind = induce(one, PermGroup::symmetric(3));
  CHECK(ind.at(ind.index().position_of(parse_perm_list("(0 1 2)", 3))) == 2);
  CHECK(ind.at(ind.index().position_of(parse_perm_list("()", 3))) == 2);

  const auto zero = induce(GenClassFunction(ClassIndex::build(V(), Lambda(2, 1, 2))), S4());
  for (const auto& v : zero.values()) CHECK(v == 0);

  for (unsigned p : {2u, 3u, 5u}) {
    const auto e = PermGroup::block_symmetric(1, p);
    const auto chi = GenClassFunction::constant(ClassIndex::build(e, Lambda(p, 1, 1)), 1);
    const auto out = induce(chi, PermGroup::symmetric(p));
    REQUIRE(out.values().size() == 2);
    CHECK(out.at(1) == 0);
    CHECK(out.at(0) == Rational(static_cast<long>(factorial(p))));
  }
}

TEST_CASE("induce grouped") {
  const Lambda l(2, 1, 2);
  const auto one = GenClassFunction::constant(ClassIndex::build(V(), l), 1);
  const auto ind = induce_grouped(one, S4());
  CHECK(ind.at(kDouble) == 2);
  CHECK(ind.at(kFourCycle) == 0);
  const auto self = induce_grouped(GenClassFunction::constant(ClassIndex::build(S4(), l), 1), S4());
  for (const auto& v : self.values()) CHECK(v == 1);
}

TEST_CASE("transfer data on the Sigma_4 examples") {
  const Lambda l(2, 1, 2);
  const auto t = transfer_datum(S4(), V(), l, kTransposition);
  REQUIRE(t.orbits.size() == 2);
  for (const auto& o : t.orbits) CHECK(o.index == 1);
  CHECK(t.centralizer_order == 4);

  const auto d = transfer_datum(S4(), V(), l, kDouble);
  REQUIRE(d.orbits.size() == 1);
  CHECK(d.orbits[0].index == 2);
  CHECK(transfer_datum(S4(), V(), l, kFourCycle).empty());
  CHECK_THROWS_AS(transfer_datum(S4(), V(), l, "p2.k2.h1:[]"), Error);

  CHECK(ideal_trivial(S4(), V(), l, kTransposition, false));
  CHECK_FALSE(ideal_trivial(S4(), V(), l, kDouble, false));
  CHECK_FALSE(ideal_trivial(S4(), V(), l, kE, false));
  CHECK(ideal_trivial(S4(), V(), l, kDouble, true));
  CHECK_FALSE(ideal_trivial(S4(), V(), l, kFourCycle, true));
}

TEST_CASE("both induction routes agree") {
  std::mt19937_64 rng(11);
  struct Case {
    PermGroup G, H;
    Lambda l;
  };
  const std::vector<Case> cases{
      {S4(), V(), Lambda(2, 1, 2)},
      {S4(), V(), Lambda(2, 2, 2)},
      {S4(), D8(), Lambda(2, 2, 2)},
      {S4(), cyclic("(0 1 2 3)", 4), Lambda(2, 1, 2)},
      {PermGroup::symmetric(3), cyclic("(0 1 2)", 3), Lambda(3, 2, 1)},
      {PermGroup::symmetric(6), PermGroup::block_symmetric(3, 2), Lambda(3, 1, 1)},
  };
  for (const auto& c : cases) {
    const auto hi = ClassIndex::build(c.H, c.l);
    for (int i = 0; i < 10; ++i) CHECK(verify_mainthm_instance(c.G, c.H, random_function(hi, rng)));
    CHECK(verify_mainthm_instance(c.G, c.G, random_function(ClassIndex::build(c.G, c.l), rng)));
  }
  CHECK(verify_mainthm_instance(PermGroup::symmetric(3), cyclic("(0 1 2)", 3),
                                GenClassFunction::constant(ClassIndex::build(cyclic("(0 1 2)", 3), Lambda(3, 1, 1)), 1)));
}

TEST_CASE("centralizer orders from the class index match the generated centralizers") {
  const Lambda l(2, 2, 2);
  for (const auto& G : {S4(), D8(), V()}) {
    const auto idx = ClassIndex::build(G, l);
    for (const auto& e : idx->classes()) CHECK(centralizer(G, e.representative).order() == e.centralizer_order);
  }
}

TEST_CASE("Frobenius reciprocity") {
  std::mt19937_64 rng(13);
  const Lambda l(2, 2, 2);
  for (const auto& H : {V(), D8(), cyclic("(0 1 2 3)", 4)}) {
    const auto hi = ClassIndex::build(H, l);
    const auto gi = ClassIndex::build(S4(), l);
    for (int i = 0; i < 5; ++i) {
      const auto chi = random_function(hi, rng);
      const auto phi = random_function(gi, rng);
      CHECK(inner_product(induce(chi, S4()), phi) == inner_product(chi, restrict_to(phi, H)));
    }
  }
}

TEST_CASE("transitivity of induction") {
  std::mt19937_64 rng(17);
  for (const Lambda& l : {Lambda(2, 1, 2), Lambda(2, 2, 2)}) {
    const auto chi = random_function(ClassIndex::build(V(), l), rng);
    CHECK(induce(induce(chi, D8()), S4()) == induce(chi, S4()));
    CHECK(induce_grouped(induce_grouped(chi, D8()), S4()) == induce(chi, S4()));
  }
}

TEST_CASE("non-subgroups are rejected") {
  const auto not_sub = cyclic("(0 1 2)", 4);
  CHECK_THROWS_AS(Induction(ClassIndex::build(not_sub, Lambda(2, 1, 2)), ClassIndex::build(D8(), Lambda(2, 1, 2))),
                  Error);
}
