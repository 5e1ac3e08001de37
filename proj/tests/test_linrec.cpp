#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <lrs/linrec.hpp>

#include "support.hpp"

using namespace lrs;

namespace {

LinRec rec(std::vector<long> c, std::vector<long> u) {
  std::vector<Rational> cq(c.begin(), c.end()), uq(u.begin(), u.end());
  return LinRec::fromRationals(cq, uq);
}

}  // namespace

TEST_CASE("charPoly") {
  CHECK((charPoly(rec({3, -3, 1}, {0, 0, 0}), 10) == IntervalPoly::fromRationals({-1, 3, -3, 1})));
  CHECK((charPoly(rec({1, 1}, {1, 1}), 10) == IntervalPoly::fromRationals({-1, -1, 1})));
  CHECK((charPoly(rec({1}, {1}), 10) == IntervalPoly::fromRationals({-1, 1})));
  LinRec pi({RealName::piMultiple(Rational(1))}, {RealName::rational(Rational(1))});
  IntervalPoly p = charPoly(pi, 20);
  CHECK(p[0].width() <= pow2(-20));
  CHECK(p[0].contains(-piEnclosure(40).mid()));
}

TEST_CASE("evalTerm examples") {
  CHECK(evalTerm(rec({3, -3, 1}, {3, 6, 3}), 4, 10).value.contains(Rational(-6)));
  CHECK(evalTerm(rec({1, 1}, {1, 1}), 7, 10).value.contains(Rational(13)));
  LinRec ones = rec({1}, {1});
  for (long k = 1; k <= 100; ++k) CHECK((evalTerm(ones, k, 4).value == RealInterval(1)));
}

TEST_CASE("evalTerm contains the exact value") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 60; ++t) {
    int order = 1 + static_cast<int>(rng() % 3);
    auto e = support::randomInstance(rng, order, 2, 16);
    auto exact = oracle::exactTerms(e, 40);
    LinRec r = support::toLinRec(e);
    for (long k : {1L, 2L, 5L, 17L, 40L}) {
      TermEnclosure te = evalTerm(r, k, 20);
      CHECK(te.value.contains(exact[static_cast<std::size_t>(k - 1)]));
      CHECK(te.value.width() <= pow2(-20));
    }
    auto terms = termEnclosures(r, 40, 30, 128);
    for (long k = 1; k <= 40; ++k) CHECK(terms[static_cast<std::size_t>(k - 1)].contains(exact[static_cast<std::size_t>(k - 1)]));
    TermCache cache(r, 30, 128);
    CHECK(cache.at(33).contains(exact[32]));
  }
}

TEST_CASE("pi initial values") {
  LinRec r({RealName::rational(Rational(3)), RealName::rational(Rational(-3)), RealName::rational(Rational(1))},
           {RealName::piMultiple(Rational(1)), RealName::piMultiple(Rational(2)), RealName::piMultiple(Rational(1))});
  // u_4 = 3 pi - 6 pi + pi = -2 pi
  RealInterval u4 = evalTerm(r, 4, 30).value;
  CHECK(u4.width() <= pow2(-30));
  CHECK(u4.contains(Rational(-2) * piEnclosure(60).mid()));
}

TEST_CASE("interval inputs run out of accuracy") {
  LinRec r({RealName::interval(RealInterval(Rational(9, 10), Rational(11, 10)))},
           {RealName::interval(RealInterval(Rational(9, 10), Rational(11, 10)))});
  TermEnclosure t = evalTerm(r, 3, 20);
  CHECK(t.exhausted);
  CHECK(t.value.contains(Rational(81, 100)));
  CHECK(t.value.contains(Rational(1331, 1000)));
}

TEST_CASE("companion matrix") {
  auto A = companionMatrix(rec({1, 2, 3}, {0, 0, 0}), 10);
  REQUIRE(A.size() == 3);
  CHECK((A[0][0] == RealInterval(1)));
  CHECK((A[0][2] == RealInterval(3)));
  CHECK((A[1][0] == RealInterval(1)));
  CHECK((A[2][1] == RealInterval(1)));
  CHECK((A[2][2] == RealInterval(0)));
}

TEST_CASE("malformed recurrences are rejected") {
  CHECK_THROWS(LinRec({RealName::rational(Rational(1))}, {}));
}
