#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <lrs/fodecide.hpp>
#include <lrs/problems.hpp>

#include "support.hpp"

#include <filesystem>
#include <fstream>

using namespace lrs;

namespace {

ConstraintSystem oneVar(const RealInterval& bound, const Constraint& c) {
  ConstraintSystem s;
  s.vars = {"x"};
  s.bounds = {bound};
  s.branches = {{c}};
  return s;
}

LinRec piTripleRoot() {
  return LinRec({RealName::rational(Rational(3)), RealName::rational(Rational(-3)), RealName::rational(Rational(1))},
                {RealName::piMultiple(Rational(1)), RealName::piMultiple(Rational(2)), RealName::piMultiple(Rational(1))});
}

std::optional<std::string> z3() { return resolveSolver("z3"); }

std::string script(const std::string& name, const std::string& body) {
  auto path = std::filesystem::temp_directory_path() / name;
  {
    std::ofstream out(path);
    out << "#!/bin/sh\n" << body << "\n";
  }
  std::filesystem::permissions(path, std::filesystem::perms::owner_all);
  return path.string();
}

}  // namespace

TEST_CASE("toy systems") {
  SymPoly x = SymPoly::var(0);
  auto neg = oneVar(RealInterval(Rational(0), Rational(1)), {-(x * x), Relation::Gt});
  CHECK((refuteBySubdivision(neg, 100).status == RefuteStatus::Unsat));
  auto sat = oneVar(RealInterval(Rational(-1), Rational(1)), {x * x, Relation::Ge});
  for (long fuel : {1L, 100L, 10000L}) CHECK((refuteBySubdivision(sat, fuel).status == RefuteStatus::Unknown));
  ConstraintSystem none;
  CHECK((refuteBySubdivision(none, 10).status == RefuteStatus::Unsat));
}

TEST_CASE("SMT-LIB output is deterministic") {
  SymPoly x = SymPoly::var(0);
  auto s = oneVar(RealInterval(Rational(0), Rational(1)), {-(x * x), Relation::Gt});
  std::string a = emitSmtlib(s), b = emitSmtlib(s);
  CHECK(a == b);
  CHECK(a.find("(set-logic QF_NRA)") != std::string::npos);
  CHECK(a.find("(check-sat)") != std::string::npos);
  auto half = oneVar(RealInterval(Rational(1, 3), Rational(1)), {x, Relation::Gt});
  CHECK(emitSmtlib(half).find("(/ 1 3)") != std::string::npos);
}

TEST_CASE("order-one configuration") {
  RootConfiguration one{{{0, 1}}, {}};
  Clustering c = support::singleRealCluster(1);
  Rational e = pow2(-6);
  auto s = buildNegatedSentence(one, c, {RealInterval(-1 - e, -1 + e)}, SentenceMode::Cramer);
  CHECK((refuteBySubdivision(s, 1000).status == RefuteStatus::Unsat));
  auto pos = buildNegatedSentence(one, c, {RealInterval(1 - e, 1 + e)}, SentenceMode::Cramer);
  CHECK((refuteBySubdivision(pos, 1000).status == RefuteStatus::Unknown));
}

TEST_CASE("sentences of the pi triple-root instance are refuted") {
  Fuel fuel;
  auto t = negatedSentences(piTripleRoot(), 8, fuel, SentenceMode::Cramer);
  REQUIRE(t);
  CHECK(t->sentences.size() == 5);
  for (const auto& s : t->sentences) {
    auto res = refuteBySubdivision(s.system, 1000000);
    CHECK((res.status == RefuteStatus::Unsat));
  }
  // u_k = 1 has no component along rho_1 = 2, whatever rho_2 = 1 does
  for (const auto& s : t->sentences) {
    const auto& cfg = s.configuration;
    if (cfg.reals.size() != 2) continue;
    auto p = cramerSignPoly(cfg);
    REQUIRE(p);
    std::vector<Rational> pt(cfg.varCount(), Rational(0));
    pt[cfg.rhoVar(0)] = 2;
    pt[cfg.rhoVar(1)] = 1;
    for (int k = 1; k <= 3; ++k) pt[cfg.uVar(static_cast<std::size_t>(k))] = 1;
    CHECK(sgn(p->evalExact(pt)) == 0);
    pt[cfg.uVar(3)] = 2;
    CHECK(sgn(p->evalExact(pt)) != 0);
  }
}

TEST_CASE("Cramer sign agrees with exact interpolation") {
  std::mt19937_64 rng(99);
  int compared = 0;
  for (int t = 0; t < 300; ++t) {
    auto s = support::cramerSample(rng, 4);
    if (!s.compared) continue;
    ++compared;
    if (!s.agree) MESSAGE(s.describe);
    CHECK(s.agree);
  }
  CHECK(compared >= 250);
}

TEST_CASE("residue numerator") {
  RootConfiguration one{{{0, 1}}, {}};
  auto n = residueNumerator(one);
  REQUIRE(n.size() == 1);
  CHECK((n[0] == SymPoly::var(one.uVar(1))));
  SymPoly z = SymPoly::var(0);
  CHECK((evalUnivariate({SymPoly(1), SymPoly(0), SymPoly(-1)}, z) == z * z - SymPoly(1)));
}

TEST_CASE("external solver") {
  SymPoly x = SymPoly::var(0);
  auto unsat = oneVar(RealInterval(Rational(0), Rational(1)), {-(x * x), Relation::Gt});
  auto sat = oneVar(RealInterval(Rational(0), Rational(2)), {x * x - SymPoly(1), Relation::Gt});
  CHECK_THROWS_AS(externalSolverCheck(unsat, "/nonexistent/solver", 5), SolverNotFound);
  CHECK_THROWS_AS(externalSolverCheck(unsat, script("lrs-garbage.sh", "echo hello"), 5), MalformedSolverOutput);
  CHECK((externalSolverCheck(unsat, script("lrs-unknown.sh", "echo unknown"), 5) == SolverVerdict::Unknown));
  CHECK((externalSolverCheck(unsat, script("lrs-slow.sh", "sleep 5; echo unsat"), 0.2) == SolverVerdict::Unknown));
  auto solver = z3();
  if (!solver) {
    MESSAGE("z3 not found, solver checks skipped");
    return;
  }
  CHECK((externalSolverCheck(unsat, *solver, 30) == SolverVerdict::Unsat));
  CHECK((externalSolverCheck(sat, *solver, 30) == SolverVerdict::Sat));
  CHECK((externalSolverCheck(unsat, *solver, 0) == SolverVerdict::Unknown));
  Fuel fuel;
  auto t = negatedSentences(piTripleRoot(), 8, fuel, SentenceMode::Cramer);
  REQUIRE(t);
  for (const auto& s : t->sentences) CHECK((externalSolverCheck(s.system, *solver, 30) != SolverVerdict::Sat));
}
