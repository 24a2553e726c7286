#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "transchrome/abelianp.hpp"
#include "transchrome/arith.hpp"
#include "transchrome/decomp.hpp"
#include "transchrome/error.hpp"

using namespace transchrome;

namespace {

std::vector<std::uint64_t> ranks(const DecompositionReport& r) {
  std::vector<std::uint64_t> out;
  for (const auto& c : r.components)
    if (c.fiber_rank) out.push_back(*c.fiber_rank);
  return out;
}

}  // namespace

TEST_CASE("decompose (2,2,1,1)") {
  const auto r = decompose(2, 2, 1, 1);
  CHECK(r.nontrivial_count() == 2);
  CHECK(r.strickland_degree == 3);
  CHECK(r.rank_sum == 3);
  CHECK(ranks(r) == std::vector<std::uint64_t>{1, 2});
  CHECK(verify_triangle(r));
}

TEST_CASE("decompose (2,2,1,2)") {
  const auto r = decompose(2, 2, 1, 2);
  CHECK(r.nontrivial_count() == 3);
  CHECK(r.strickland_degree == 7);
  CHECK(ranks(r) == std::vector<std::uint64_t>{1, 2, 4});
  std::set<std::string> ids;
  for (const auto& c : r.components)
    if (!c.ideal_trivial) ids.insert(c.hom_class.id());
  CHECK(ids == std::set<std::string>{"p2.k2.h1:[(U<(1)>:idx1,m4)]", "p2.k2.h1:[(U<(2)>:idx2,m2)]",
                                     "p2.k2.h1:[(U<>:idx4,m1)]"});
  CHECK(verify_triangle(r));
}

TEST_CASE("decompose with t = 0 keeps only transitive classes") {
  const auto r = decompose(3, 1, 0, 1);
  CHECK(r.nontrivial_count() == 1);
  for (const auto& c : r.components)
    if (!c.ideal_trivial) CHECK(c.hom_class.orbit_types().size() == 1);
  CHECK(verify_triangle(r));
  CHECK(verify_triangle(decompose(2, 2, 0, 1)));
  CHECK(verify_triangle(decompose(2, 2, 0, 2)));
}

TEST_CASE("isotypic test agrees with the transfer rule for t > 0") {
  struct Case {
    unsigned p, n, t, k;
  };
  for (auto c : {Case{2, 2, 1, 1}, Case{2, 2, 1, 2}, Case{3, 2, 1, 1}, Case{2, 3, 1, 1}, Case{2, 3, 2, 1},
                 Case{2, 3, 1, 2}, Case{2, 2, 1, 3}, Case{3, 3, 1, 1}}) {
    const auto r = decompose(c.p, c.n, c.t, c.k, DecomposeOptions{false});
    for (const auto& comp : r.components) CHECK(comp.isotypic == !comp.ideal_trivial);
    CHECK(r.nontrivial_count() == sub_leq_count(c.n - c.t, c.p, c.k));
    CHECK(r.rank_sum == count_sublattices(c.n, c.p, c.k));
    CHECK(verify_triangle(r));
  }
}

TEST_CASE("serial and parallel reports agree") {
  CHECK(decompose(2, 3, 1, 2, DecomposeOptions{false}) == decompose(2, 3, 1, 2, DecomposeOptions{true}));
}

TEST_CASE("fiber ranks") {
  for (unsigned p : {2u, 3u})
    for (unsigned t : {1u, 2u}) {
      const unsigned k = 1;
      HomocyclicGroup A(p, 1, k);
      CHECK(fiber_rank(AbSubgroup::full(A), p, t + 1, t, k) == ipow(p, k * t));
      CHECK(fiber_rank(AbSubgroup::trivial(A), p, t + 1, t, k) == count_sublattices(t, p, k));
    }
  HomocyclicGroup Z4(2, 1, 2);
  CHECK(fiber_rank(AbSubgroup::parse_generators(Z4, "(2)"), 2, 2, 1, 2) == 2);
}

TEST_CASE("triangle rejects injected faults") {
  auto r = decompose(2, 2, 1, 2);
  for (auto& c : r.components)
    if (c.fiber_rank) {
      *c.fiber_rank += 1;
      break;
    }
  const auto check = verify_triangle(r);
  CHECK_FALSE(check);
  CHECK(check.diagnostic.find("(b)") != std::string::npos);

  auto dup = decompose(2, 2, 1, 2);
  for (auto& c : dup.components)
    if (c.fiber_rank) c.L = dup.components.back().L;
  CHECK_FALSE(verify_triangle(dup));
}

TEST_CASE("bad parameters") {
  CHECK_THROWS_AS(decompose(4, 2, 1, 1), Error);
  CHECK_THROWS_AS(decompose(2, 2, 2, 1), Error);
  CHECK_THROWS_AS(decompose(2, 2, 1, 0), Error);
}

TEST_CASE("report json round trip") {
  const auto r = decompose(2, 3, 1, 1);
  const auto j = to_json(r);
  CHECK(j["degree"] == 7);
  CHECK(j["convention"] == "geometric-point-count");
  CHECK(report_from_json(j) == r);
  CHECK(report_from_json(nlohmann::json::parse(j.dump())) == r);
  auto bad = j;
  bad["components"][0]["L"]["order"] = 5;
  CHECK_THROWS_AS(report_from_json(bad), Error);
}

TEST_CASE("table rendering") {
  const auto text = render_table(decompose(2, 2, 1, 1));
  CHECK(text.find("degree: 3") != std::string::npos);
  CHECK(text.find("non-trivial components: 2") != std::string::npos);
}
