#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <lrs/numeric.hpp>

#include <random>

using namespace lrs;

namespace {

RealInterval iv(const char* lo, const char* hi) { return {parseRational(lo), parseRational(hi)}; }

Rational randomRational(std::mt19937_64& rng) {
  long num = static_cast<long>(rng() % 41) - 20;
  long den = static_cast<long>(rng() % 8) + 1;
  Rational q(num, den);
  q.canonicalize();
  return q;
}

RealInterval randomInterval(std::mt19937_64& rng) {
  Rational a = randomRational(rng), b = randomRational(rng);
  return a <= b ? RealInterval(a, b) : RealInterval(b, a);
}

// A point of the interval picked from a few candidate fractions.
Rational sample(const RealInterval& x, std::mt19937_64& rng) {
  Rational t(static_cast<long>(rng() % 9), 8);
  return x.lo() + t * x.width();
}

}  // namespace

TEST_CASE("parse and print rationals") {
  CHECK(parseRational("3/6") == Rational(1, 2));
  CHECK(parseRational("-0.125") == Rational(-1, 8));
  CHECK(parseRational("1e-3") == Rational(1, 1000));
  CHECK(parseRational(" 7 ") == 7);
  CHECK(toString(parseRational("-4/6")) == "-2/3");
  CHECK(toString(Rational(5)) == "5/1");
  CHECK_THROWS_AS(parseRational("1/0"), ParseError);
  CHECK_THROWS_AS(parseRational("abc"), ParseError);
}

TEST_CASE("interval arithmetic examples") {
  CHECK((iv("1/3", "1/2") + iv("0", "1") == iv("1/3", "3/2")));
  CHECK((iv("-1", "1") * iv("-1", "1") == iv("-1", "1")));
  CHECK((sq(iv("-2", "1")) == iv("0", "4")));
  CHECK((iv("1", "1") / iv("2", "2") == iv("1/2", "1/2")));
  CHECK((iv("1", "2") / iv("1", "4") == iv("1/4", "2")));
  CHECK_THROWS_AS(iv("1", "1") / iv("-1", "1"), DivisorStraddlesZero);
  CHECK((abs(iv("-3", "2")) == iv("0", "3")));
  CHECK((-iv("1", "2") == iv("-2", "-1")));
  CHECK((pow(iv("-2", "1"), 3) == iv("-8", "1")));
  CHECK((pow(iv("-2", "1"), 2) == iv("0", "4")));
}

TEST_CASE("complex box examples") {
  ComplexBox i(RealInterval(0), RealInterval(1));
  CHECK((i * i == ComplexBox(RealInterval(-1), RealInterval(0))));
  CHECK((conj(ComplexBox(iv("1", "2"), iv("3", "4"))) == ComplexBox(iv("1", "2"), iv("-4", "-3"))));
  CHECK((modulusSq(ComplexBox(RealInterval(3), RealInterval(4))) == RealInterval(25)));
  ComplexBox z(iv("1", "2"), iv("-1", "3"));
  CHECK((conj(conj(z)) == z));
  ComplexBox q = ComplexBox(RealInterval(1), RealInterval(0)) / i;
  CHECK(q.re().contains(Rational(0)));
  CHECK(q.im().contains(Rational(-1)));
  CHECK_THROWS_AS(ComplexBox(RealInterval(1)) / ComplexBox(iv("-1", "1"), iv("-1", "1")), DivisorStraddlesZero);
}

TEST_CASE("inclusion and exactness on random samples") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 2000; ++t) {
    RealInterval a = randomInterval(rng), b = randomInterval(rng);
    Rational x = sample(a, rng), y = sample(b, rng);
    CHECK((a + b).contains(Rational(x + y)));
    CHECK((a - b).contains(Rational(x - y)));
    CHECK((a * b).contains(Rational(x * y)));
    CHECK(sq(a).contains(Rational(x * x)));
    CHECK(abs(a).contains(Rational(abs(x))));
    if (!b.containsZero()) CHECK((a / b).contains(Rational(x / y)));
    // point intervals are exact
    CHECK((RealInterval(x) * RealInterval(y) == RealInterval(Rational(x * y))));
    CHECK((RealInterval(x) + RealInterval(y) == RealInterval(Rational(x + y))));
    // monotone in the arguments
    RealInterval wide = hull(a, RealInterval(a.lo() - 1, a.hi() + 1));
    CHECK(wide.contains(a));
    CHECK((wide * b).contains(a * b));
    CHECK((wide + b).contains(a + b));
  }
}

TEST_CASE("complex inclusion on random samples") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 500; ++t) {
    ComplexBox a(randomInterval(rng), randomInterval(rng)), b(randomInterval(rng), randomInterval(rng));
    Rational ar = sample(a.re(), rng), ai = sample(a.im(), rng), br = sample(b.re(), rng), bi = sample(b.im(), rng);
    ComplexBox p = a * b;
    CHECK(p.re().contains(Rational(ar * br - ai * bi)));
    CHECK(p.im().contains(Rational(ar * bi + ai * br)));
    CHECK(modulusSq(a).contains(Rational(ar * ar + ai * ai)));
  }
}

TEST_CASE("outward rounding") {
  RealInterval x(Rational(1, 3), Rational(2, 3));
  RealInterval t = tighten(x, 10);
  CHECK(t.contains(x));
  CHECK(t.width() <= x.width() + pow2(-9));
  CHECK(roundRelative(x, 8).contains(x));
  CHECK(floorToGrid(Rational(7, 3), -2) == Rational(9, 4));
  CHECK(ceilToGrid(Rational(7, 3), -2) == Rational(5, 2));
  Rational lo = sqrtLower(Rational(2), 64), hi = sqrtUpper(Rational(2), 64);
  CHECK(lo * lo <= 2);
  CHECK(hi * hi >= 2);
  CHECK(hi - lo < pow2(-50));
}
