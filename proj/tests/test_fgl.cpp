#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "transchrome/arith.hpp"
#include "transchrome/error.hpp"
#include "transchrome/fgl.hpp"

using namespace transchrome;

namespace {

// Polynomial in x with integer coefficients, as a one-variable series.
TruncSeries poly(const CoeffRingPtr& ring, std::size_t D, std::vector<std::int64_t> coeffs) {
  TruncSeries s(ring, 1, D);
  for (std::size_t e = 0; e < coeffs.size(); ++e) s.set_coefficient({static_cast<unsigned>(e), 0, 0}, RingElem(ring, coeffs[e]));
  return s;
}

}  // namespace

TEST_CASE("coefficient ring") {
  auto R = std::make_shared<const CoeffRing>(2, 3, 2, 3);
  CHECK(R->modulus() == 8);
  CHECK(R->size() == 6);  // 1, u1, u2, u1^2, u1u2, u2^2
  const auto u1 = RingElem::u(R, 1), u2 = RingElem::u(R, 2);
  CHECK((u1 * u1 * u1).is_zero());
  CHECK((u1 * u2).to_string() == "u1*u2");
  const RingElem unit = RingElem(R, 3) + u1;
  CHECK(unit.is_unit());
  CHECK(unit * unit.inverse() == RingElem(R, 1));
  CHECK_FALSE((RingElem(R, 2) + u2).is_unit());
  CHECK_THROWS_AS((RingElem(R, 2) + u2).inverse(), Error);
}

TEST_CASE("series arithmetic") {
  auto R = std::make_shared<const CoeffRing>(3, 2, 0, 1);
  const auto x = TruncSeries::variable(R, 1, 6, 0);
  const auto one_plus_x = TruncSeries::constant(RingElem(R, 1), 1, 6) + x;
  const auto inv = one_plus_x.inverse();
  CHECK(one_plus_x * inv == TruncSeries::constant(RingElem(R, 1), 1, 6));
  CHECK(inv[3] == RingElem(R, -1));
  CHECK((x * x * x * x * x * x).is_zero());
  CHECK(x.to_string() == "1·x^1");
}

TEST_CASE("multiplicative law") {
  const auto ctx = FGLContext::multiplicative(2, 4, 17);
  CHECK(check_axioms(ctx).ok());
  const auto R = ctx.ring();
  CHECK(n_series(ctx, 1) == ctx.x());
  CHECK(n_series(ctx, 0).is_zero());
  CHECK(n_series(ctx, 2) == poly(R, 17, {0, 2, 1}));
  CHECK(n_series(ctx, 4) == poly(R, 17, {0, 4, 6, 4, 1}));
  // log(1 + x) = x - x^2/2 + x^3/3 - ...
  CHECK(ctx.logarithm()[1][0] == 1);
  CHECK(ctx.logarithm()[2][0] == Rational(-1, 2));
  CHECK(ctx.logarithm()[3][0] == Rational(1, 3));
}

TEST_CASE("height one p-typical law") {
  for (unsigned p : {2u, 3u}) {
    const auto ctx = FGLContext::build_ptypical(p, 1, 3, 1, p * p + 1);
    CHECK(check_axioms(ctx).ok());
    CHECK(ctx.law().coefficient({1, 1, 0}).is_unit() == (p == 2));
    CHECK(honda_reduction_holds(ctx));
    CHECK(torsion_rank(ctx, 1) == p);
  }
}

TEST_CASE("height two p-typical law at p = 2") {
  const auto ctx = FGLContext::build_ptypical(2, 2, 4, 3, 17);
  const auto ax = check_axioms(ctx);
  CHECK(ax.unit);
  CHECK(ax.commutative);
  CHECK(ax.associative);
  CHECK(honda_reduction_holds(ctx));
  CHECK(torsion_rank(ctx, 1) == 4);
  CHECK(torsion_rank(ctx, 0) == 1);
}

TEST_CASE("n-series additivity") {
  for (const auto& ctx : {FGLContext::multiplicative(3, 3, 12), FGLContext::build_ptypical(2, 2, 3, 2, 12)}) {
    for (unsigned m = 0; m <= 6; ++m)
      for (unsigned mm = 0; mm <= 6; mm += 2) CHECK(n_series(ctx, m + mm) == ctx.apply(n_series(ctx, m), n_series(ctx, mm)));
  }
}

TEST_CASE("law from logarithm recovers x + y + xy") {
  auto R = std::make_shared<const CoeffRing>(2, 4, 0, 1);
  RationalSeries log(10, std::vector<Rational>(1));
  for (std::size_t e = 1; e < 10; ++e) log[e][0] = Rational(e % 2 ? 1 : -1, static_cast<long>(e));
  const auto F = law_from_logarithm(R, log, 10);
  const auto x = TruncSeries::variable(R, 2, 10, 0), y = TruncSeries::variable(R, 2, 10, 1);
  CHECK(F == x + y + x * y);
}

TEST_CASE("weierstrass preparation") {
  const auto ctx = FGLContext::multiplicative(2, 4, 17);
  const auto R = ctx.ring();
  const auto two = weierstrass_prep(ctx, n_series(ctx, 2), 2);
  CHECK(two.f == poly(R, 17, {0, 2, 1}));
  CHECK(two.u == TruncSeries::constant(RingElem(R, 1), 1, 17));

  const auto g4 = n_series(ctx, 4);
  const auto four = weierstrass_prep(ctx, g4, 4);
  CHECK(four.f * four.u == g4);
  CHECK(four.f.degree() == 4);
  CHECK(four.f[4] == RingElem(R, 1));
  for (int e = 0; e < 4; ++e) CHECK(four.f[e].in_maximal_ideal());
  CHECK(torsion_rank(ctx, 2) == 4);

  CHECK_THROWS_AS(weierstrass_prep(ctx, g4, 3), Error);
  CHECK(weierstrass_degree(g4) == 4);
}

TEST_CASE("weierstrass preparation on the height two law") {
  const auto ctx = FGLContext::build_ptypical(2, 2, 4, 3, 17);
  const auto g = n_series(ctx, 2);
  const auto prep = weierstrass_prep(ctx, g, 4);
  CHECK(prep.f * prep.u == g);
  CHECK(prep.f.degree() == 4);
  CHECK(prep.u[0].is_unit());
}

TEST_CASE("parameter checks") {
  CHECK_THROWS_AS(FGLContext::build_ptypical(2, 2, 4, 3, 4), Error);
  CHECK_THROWS_AS(FGLContext::build_ptypical(4, 1, 4, 3, 20), Error);
  CHECK_THROWS_AS(CoeffRing(2, 40, 0, 1), Error);
}

TEST_CASE("series json") {
  const auto ctx = FGLContext::multiplicative(2, 4, 6);
  const auto j = n_series(ctx, 2).to_json();
  REQUIRE(j.is_array());
  CHECK(j.size() == 2);
}
