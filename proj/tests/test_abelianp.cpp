#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "transchrome/abelianp.hpp"
#include "transchrome/arith.hpp"
#include "transchrome/error.hpp"

using namespace transchrome;

TEST_CASE("arith helpers") {
  CHECK(is_prime(2));
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK(exact_log(81, 3) == 4u);
  CHECK_FALSE(exact_log(12, 2).has_value());
  CHECK_FALSE(checked_pow(2, 70).has_value());
  CHECK(factorial(5) == 120);
}

TEST_CASE("homocyclic group coordinates") {
  HomocyclicGroup A(2, 2, 2);
  CHECK(A.order() == 16);
  const std::vector<int> v{1, 3};
  CHECK(A.coords(A.code(v)) == v);
  CHECK(A.add(A.code(std::vector<int>{1, 3}), A.code(std::vector<int>{3, 2})) == A.code(std::vector<int>{0, 1}));
  CHECK_THROWS_AS(HomocyclicGroup(4, 1, 1), Error);
}

TEST_CASE("enumerate subgroups") {
  CHECK(enumerate_subgroups(2, 2, 2, 4).size() == 7);
  CHECK(enumerate_subgroups(1, 3, 1, 3).size() == 1);
  CHECK(enumerate_subgroups(2, 2, 1, 2).size() == 3);
  for (const auto& U : enumerate_subgroups(2, 3, 2, 9)) {
    CHECK(U.is_valid());
    CHECK(U.order() == 9);
  }
  CHECK_THROWS_AS(enumerate_subgroups(2, 2, 2, 6), Error);
  CHECK_THROWS_AS(enumerate_subgroups(8, 3, 3, 3), Error);
}

TEST_CASE("generator strings round trip") {
  HomocyclicGroup A(2, 2, 2);
  for (unsigned m = 0; m <= 4; ++m)
    for (const auto& U : enumerate_subgroups(2, 2, 2, ipow(2, m)))
      CHECK(AbSubgroup::parse_generators(A, U.generators_string()) == U);
  CHECK(AbSubgroup::trivial(A).generators_string().empty());
}

TEST_CASE("annihilator") {
  HomocyclicGroup A(2, 2, 2);
  CHECK(annihilator(AbSubgroup::full(A)) == AbSubgroup::trivial(A));
  CHECK(annihilator(AbSubgroup::trivial(A)) == AbSubgroup::full(A));
  const std::vector<std::uint32_t> g{A.code(std::vector<int>{2, 0})};
  const auto U = AbSubgroup::generated_by(A, g);
  const auto ann = annihilator(U);
  CHECK(ann.order() == 8);
  CHECK(ann == AbSubgroup::parse_generators(A, "(2,0),(0,1)"));
}

TEST_CASE("annihilator is an order-reversing involution") {
  for (unsigned p : {2u, 3u}) {
    HomocyclicGroup A(p, 2, 2);
    for (unsigned m = 0; m <= 4; ++m) {
      for (const auto& U : enumerate_subgroups(2, p, 2, ipow(p, m))) {
        const auto ann = annihilator(U);
        CHECK(annihilator(ann) == U);
        CHECK(U.order() * ann.order() == A.order());
      }
    }
  }
}

TEST_CASE("count sublattices") {
  CHECK(count_sublattices(2, 2, 2) == 7);
  for (unsigned p : {2u, 3u, 5u})
    for (unsigned n = 1; n <= 3; ++n) {
      std::uint64_t lines = 0;
      for (unsigned i = 0; i < n; ++i) lines += ipow(p, i);
      CHECK(count_sublattices(n, p, 1) == lines);
    }
  for (unsigned m = 0; m <= 6; ++m) CHECK(count_sublattices(1, 5, m) == 1);
  CHECK(sub_leq_count(1, 2, 2) == 3);
  CHECK(sub_leq_count(1, 7, 1) == 2);
  CHECK(sub_leq_count(2, 2, 1) == 4);
  CHECK_THROWS_AS(count_sublattices(2, 6, 1), Error);
}

TEST_CASE("counting formula against enumeration") {
  for (unsigned p : {2u, 3u, 5u, 7u})
    for (unsigned h = 1; h <= 4; ++h)
      for (unsigned m = 1; m <= 4; ++m) {
        const auto size = checked_pow(p, m * h);
        if (!size || *size > 2000) continue;
        CAPTURE(p);
        CAPTURE(h);
        CAPTURE(m);
        CHECK(enumerate_subgroups(h, p, m, ipow(p, m)).size() == count_sublattices(h, p, m));
      }
}
