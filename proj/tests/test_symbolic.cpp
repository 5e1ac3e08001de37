#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <lrs/symbolic.hpp>

#include <random>

using namespace lrs;

namespace {

SymPoly x() { return SymPoly::var(0); }
SymPoly y() { return SymPoly::var(1); }

SymPoly randomPoly(std::mt19937_64& rng, std::size_t vars) {
  SymPoly p;
  int terms = 1 + static_cast<int>(rng() % 4);
  for (int t = 0; t < terms; ++t) {
    Rational c(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 3));
    c.canonicalize();
    SymPoly m(c);
    for (std::size_t v = 0; v < vars; ++v) m = m * SymPoly::var(v).pow(static_cast<unsigned>(rng() % 3));
    p += m;
  }
  return p;
}

}  // namespace

TEST_CASE("ring operations") {
  SymPoly a = x() + y();
  CHECK(((a * a) == x() * x() + SymPoly(2) * x() * y() + y() * y()));
  CHECK(((a - a).isZero()));
  CHECK(((-a + a).isZero()));
  CHECK((a.pow(0) == SymPoly(1)));
  CHECK((a.pow(3) == a * a * a));
  CHECK(a.arity() == 2);
  CHECK(SymPoly(5).arity() == 0);
  CHECK((x() * x() * y()).degreeIn(0) == 2);
  CHECK((x() * x() * y()).totalDegree() == 3);
  // trailing zero exponents do not matter
  CHECK(((SymPoly::var(3) - SymPoly::var(3) + x()) == x()));
}

TEST_CASE("divideByVar and substitute") {
  SymPoly p = x() * y() + SymPoly(3) * y() * y();
  CHECK((p.divideByVar(1) == x() + SymPoly(3) * y()));
  CHECK_THROWS(p.divideByVar(0));
  CHECK((p.substitute(0, SymPoly(2)) == SymPoly(2) * y() + SymPoly(3) * y() * y()));
  CHECK((p.substitute(1, x()) == SymPoly(4) * x() * x()));
}

TEST_CASE("evaluation") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    SymPoly p = randomPoly(rng, 3);
    SymPoly q = randomPoly(rng, 3);
    std::vector<Rational> pt;
    for (int v = 0; v < 3; ++v) {
      Rational r(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 4));
      r.canonicalize();
      pt.push_back(r);
    }
    CHECK(((p * q).evalExact(pt) == p.evalExact(pt) * q.evalExact(pt)));
    CHECK(((p + q).evalExact(pt) == p.evalExact(pt) + q.evalExact(pt)));
    CHECK((p.substitute(1, q).evalExact(pt) == p.evalExact({pt[0], q.evalExact(pt), pt[2]})));
    std::vector<RealInterval> box;
    for (const auto& v : pt) box.emplace_back(v - Rational(1, 16), v + Rational(1, 16));
    CHECK(p.eval(box).contains(p.evalExact(pt)));
  }
}

TEST_CASE("decide") {
  std::vector<RealInterval> unit{RealInterval(Rational(0), Rational(1))};
  std::vector<RealInterval> away{RealInterval(Rational(1), Rational(2))};
  SymPoly sq = x() * x();
  CHECK(decide({sq, Relation::Ge}, unit) == 1);
  CHECK(decide({sq, Relation::Gt}, unit) == 0);
  CHECK(decide({sq, Relation::Gt}, away) == 1);
  CHECK(decide({-sq, Relation::Gt}, away) == -1);
  CHECK(decide({-sq - SymPoly(1), Relation::Ge}, unit) == -1);
  CHECK(decide({sq - SymPoly(9), Relation::Eq}, away) == -1);
  CHECK(decide({sq, Relation::Eq}, unit) == 0);
  CHECK(decide({SymPoly(0), Relation::Eq}, unit) == 1);
}

TEST_CASE("printing") {
  std::string s = (x() * y() - SymPoly(Rational(1, 2))).toString({"a", "b"});
  CHECK(s.find('a') != std::string::npos);
  CHECK(s.find("1/2") != std::string::npos);
  CHECK(toString(Relation::Ge) != toString(Relation::Gt));
}
