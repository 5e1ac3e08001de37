#include "lrs/problems.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <sstream>

namespace lrs {

std::string toString(Problem p) {
  switch (p) {
    case Problem::Skolem: return "skolem";
    case Problem::Positivity: return "positivity";
    default: return "upp";
  }
}

Problem parseProblem(const std::string& s) {
  if (s == "skolem") return Problem::Skolem;
  if (s == "positivity") return Problem::Positivity;
  if (s == "upp") return Problem::Upp;
  throw std::invalid_argument("unknown problem: " + s);
}

std::string toString(SkolemTest t) { return t == SkolemTest::OneRoot ? "one-root" : "two-root"; }

std::string toString(Trichotomy t) {
  switch (t) {
    case Trichotomy::Positive: return "1";
    case Trichotomy::Negative: return "0";
    case Trichotomy::Mixed: return "-1";
    default: return "exhausted";
  }
}

namespace {

int prefixBits(long q) { return static_cast<int>(2 * q + 64); }

bool inputsExhausted(const LinRec& r, long q) {
  for (const auto& x : r.coeffs())
    if (x.query(q).exhausted) return true;
  for (const auto& x : r.inits())
    if (x.query(q).exhausted) return true;
  return false;
}

// Precision at which u_1..u_{K-1} all satisfy ok, or nullopt.
std::optional<long> prefixHolds(const LinRec& r, long K, long p, const std::function<bool(const RealInterval&)>& ok,
                                Trace* trace) {
  long q = p + 16;
  for (int attempt = 0; attempt < 4; ++attempt, q = 2 * q) {
    if (K <= 1) return q;
    auto terms = termEnclosures(r, K - 1, q, prefixBits(q));
    if (trace) trace->termsChecked += K - 1;
    if (std::all_of(terms.begin(), terms.end(), ok)) return q;
    if (inputsExhausted(r, q)) break;
  }
  return std::nullopt;
}

bool prefixReplays(const LinRec& r, long K, long q, const std::function<bool(const RealInterval&)>& ok) {
  if (K <= 1) return true;
  auto terms = termEnclosures(r, K - 1, q, prefixBits(q));
  return std::all_of(terms.begin(), terms.end(), ok);
}

bool strictSignChange(const IntervalPoly& P, const RealInterval& x) {
  int a = evalPoly(P, RealInterval(x.lo())).certainSign();
  int b = evalPoly(P, RealInterval(x.hi())).certainSign();
  return a != 0 && b != 0 && a != b;
}

std::optional<Clustering> clusteringAt(const LinRec& r, long p, const Fuel& fuel, long* precision) {
  long q = charPrecision(r, p);
  if (precision) *precision = q;
  auto iso = sharedIsolator(charPoly(r, q), fuel.clustering);
  if (!iso->valid()) return std::nullopt;
  return iso->withWidth(pow2(-p));
}

SpectralFuel spectralFuel(const Fuel& f) {
  SpectralFuel s;
  s.clustering = f.clustering;
  return s;
}

long coeffPrecisionFor(long p) { return p + 48; }

// ----------------------------------------------------------- polynomials over Q

using QPoly = std::vector<Rational>;  // low to high

void trimQ(QPoly& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

QPoly remainder(QPoly a, const QPoly& b) {
  trimQ(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trimQ(a);
  }
  return a;
}

QPoly gcdQ(QPoly a, QPoly b) {
  trimQ(a);
  trimQ(b);
  while (!b.empty()) {
    QPoly r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::optional<QPoly> exactCharPoly(const LinRec& r) {
  if (!r.isExact()) return std::nullopt;
  int n = r.order();
  QPoly P(static_cast<std::size_t>(n) + 1);
  P[static_cast<std::size_t>(n)] = 1;
  for (int j = 1; j <= n; ++j) P[static_cast<std::size_t>(n - j)] = -*r.coeffs()[static_cast<std::size_t>(j - 1)].exactValue();
  return P;
}

// The root of P isolated in rootBox is also a root of P(-x): then its
// negative is a root too, with the same modulus.
bool exactNegativeIsRoot(const LinRec& r, const RealInterval& rootBox) {
  auto P = exactCharPoly(r);
  if (!P) return false;
  QPoly Pm = *P;
  for (std::size_t i = 1; i < Pm.size(); i += 2) Pm[i] = -Pm[i];
  QPoly G = gcdQ(*P, Pm);
  if (G.size() < 2) return false;
  return strictSignChange(IntervalPoly::fromRationals(G), rootBox);
}

// ----------------------------------------------------------- shared pieces

struct DominantWithCoeff {
  DominantRootCertificate dom;
  RealInterval coeff;
  long coeffPrecision = 0;
};

std::optional<DominantWithCoeff> dominantWithCoeff(const LinRec& r, long p, const Fuel& fuel) {
  auto dom = dominantSimplePositiveRoot(r, p, spectralFuel(fuel));
  if (!dom) return std::nullopt;
  long cq = coeffPrecisionFor(p);
  auto a = simpleRootCoefficient(r, ComplexBox(dom->rootBox), cq);
  if (!a) return std::nullopt;
  return DominantWithCoeff{*dom, a->re(), cq};
}

Verdict halted(Problem problem, int answer, Certificate cert, Trace trace) {
  Verdict v;
  v.problem = problem;
  v.halted = true;
  v.answer = answer;
  v.certificate = std::move(cert);
  v.trace = std::move(trace);
  return v;
}

Verdict exhausted(Problem problem, Trace trace) {
  Verdict v;
  v.problem = problem;
  v.trace = std::move(trace);
  v.trace.events.push_back("budget exhausted");
  return v;
}

std::optional<PositivityNegative> negativeSearch(const LinRec& r, long p, const Fuel& fuel, Trace& trace) {
  long K = std::min(fuel.maxTerms, 1L << std::min(p + 2, 40L));
  long q = p + 8;
  TermCache tc(r, q, prefixBits(q));
  for (long k = 1; k <= K; ++k) {
    const RealInterval& v = tc.at(k);
    if (v.negative()) {
      trace.termsChecked += k;
      return PositivityNegative{k, q, v};
    }
  }
  trace.termsChecked += K;
  return std::nullopt;
}

std::optional<PositivityPositive> positiveRecognizer(const LinRec& r, long p, const Fuel& fuel, Trace& trace) {
  auto d = dominantWithCoeff(r, p, fuel);
  if (!d || !d->coeff.positive()) return std::nullopt;
  long tq = d->dom.precision + 16;
  auto N = dominantTailIndex(r, {d->dom.rootBox}, {d->coeff}, d->dom.separationM, d->dom.rootBox.lo(),
                             d->coeff.mig(), tq, fuel.maxStride);
  if (!N) {
    trace.events.push_back("round " + std::to_string(p) + ": no tail index");
    return std::nullopt;
  }
  if (*N > fuel.maxTerms) {
    trace.events.push_back("round " + std::to_string(p) + ": tail index " + std::to_string(*N) + " beyond term budget");
    return std::nullopt;
  }
  auto pq = prefixHolds(r, *N, p, [](const RealInterval& v) { return v.positive(); }, &trace);
  if (!pq) return std::nullopt;
  PositivityPositive c;
  c.dominant = d->dom;
  c.round = p;
  c.coeff = d->coeff;
  c.coeffPrecision = d->coeffPrecision;
  c.N = *N;
  c.tailPrecision = tq;
  c.prefixPrecision = *pq;
  return c;
}

// Condition 2 of the simple-root fast path on a clustering.
std::optional<UppSimpleNegative> nonpositiveDominates(const LinRec& r, long p, const Fuel& fuel) {
  long q = 0;
  auto c = clusteringAt(r, p, fuel, &q);
  if (!c) return std::nullopt;
  Rational posMaxSq(0);
  for (int j = 0; j < c->realCount; ++j) {
    const ComplexBox& b = c->clusters[static_cast<std::size_t>(j)].box;
    if (sgn(b.re().hi()) > 0) posMaxSq = std::max(posMaxSq, modulusSq(b).hi());
  }
  IntervalPoly P = charPoly(r, q);
  for (int j = 0; j < c->lowerBegin(); ++j) {
    const Cluster& cl = c->clusters[static_cast<std::size_t>(j)];
    bool real = j < c->realCount;
    if (cl.count != 1) continue;
    if (real && !cl.box.re().negative()) continue;
    if (modulusSq(cl.box).lo() <= posMaxSq) continue;
    ComplexBox start = real ? ComplexBox(cl.box.re()) : cl.box;
    auto coef = coefficientOfRoot(r, start, 1, p, spectralFuel(fuel));
    if (!coef) continue;
    ComplexBox mu = coef->mu;
    if (modulusSq(mu).lo() <= posMaxSq) continue;
    if (real ? !strictSignChange(P, mu.re()) : !cl.box.contains(mu)) continue;
    long cq = coeffPrecisionFor(p);
    auto a = simpleRootCoefficient(r, mu, cq);
    if (!a || a->containsZero() || coef->a[0].containsZero()) continue;
    UppSimpleNegative cert;
    cert.condition = 2;
    cert.round = p;
    cert.precision = q;
    cert.clustering = *c;
    cert.root = mu;
    cert.coeff = *a;
    cert.coeffPrecision = cq;
    return cert;
  }
  return std::nullopt;
}

struct RefutationRound {
  std::optional<UppNegative> cert;
  long configurations = 0;
  long subdivisions = 0;
  std::string failure;
};

RefutationRound refutationRound(const LinRec& r, long p, const Fuel& fuel) {
  RefutationRound out;
  auto t = negatedSentences(r, p, fuel, SentenceMode::Cramer);
  if (!t) {
    out.failure = "no clustering";
    return out;
  }
  UppNegative cert;
  cert.round = p;
  cert.precision = t->precision;
  cert.clustering = t->clustering;
  cert.initBox = t->initBox;
  cert.mode = fuel.mode;
  bool useSolver = fuel.solverTimeout > 0 && !fuel.solverPath.empty();
  for (const auto& [cfg, s] : t->sentences) {
    ++out.configurations;
    RefutationResult res = refuteBySubdivision(s, fuel.maxSubdivisions);
    out.subdivisions += res.subdivisions;
    if (res.status == RefuteStatus::Unsat) {
      cert.records.push_back({cfg, "internal", res.subdivisions});
      continue;
    }
    if (useSolver) {
      ConstraintSystem s2 =
          fuel.mode == SentenceMode::Cramer ? s : buildNegatedSentence(cfg, t->clustering, t->initBox, fuel.mode);
      if (externalSolverCheck(s2, fuel.solverPath, fuel.solverTimeout) == SolverVerdict::Unsat) {
        cert.records.push_back({cfg, "smtlib", res.subdivisions});
        continue;
      }
    }
    out.failure = cfg.describe() + ": " + res.reason;
    return out;
  }
  out.cert = std::move(cert);
  return out;
}

std::optional<SkolemNegative> skolemRound(const LinRec& r, long p, const Fuel& fuel, Trace& trace) {
  long q = 0;
  auto c = clusteringAt(r, p, fuel, &q);
  if (!c || c->realCount == 0) return std::nullopt;
  int n = r.order();
  long cq = coeffPrecisionFor(p);
  long tq = q + 16;
  IntervalPoly P = charPoly(r, q);
  auto maxOtherSq = [&](const std::vector<int>& skip) {
    Rational m(0);
    for (int j = 0; j < static_cast<int>(c->clusters.size()); ++j)
      if (std::find(skip.begin(), skip.end(), j) == skip.end())
        m = std::max(m, modulusSq(c->clusters[static_cast<std::size_t>(j)].box).hi());
    return m;
  };
  // Refined root and residue-form coefficient of a count-1 real cluster.
  auto rootAndCoeff = [&](int j) -> std::optional<std::pair<RealInterval, RealInterval>> {
    const Cluster& cl = c->clusters[static_cast<std::size_t>(j)];
    if (cl.count != 1 || cl.box.re().containsZero()) return std::nullopt;
    auto coef = coefficientOfRoot(r, ComplexBox(cl.box.re()), 1, p, spectralFuel(fuel));
    if (!coef || coef->a[0].containsZero()) return std::nullopt;
    RealInterval root = coef->mu.re();
    if (!cl.box.re().contains(root) || !strictSignChange(P, root)) return std::nullopt;
    auto a = simpleRootCoefficient(r, ComplexBox(root), cq);
    if (!a || a->re().containsZero()) return std::nullopt;
    return std::make_pair(root, a->re());
  };
  auto separation = [](const Rational& othersSq, const Rational& R) -> Rational {
    if (sgn(othersSq) == 0) return R / 2;
    return (sqrtUpper(othersSq) + R) / 2;
  };
  auto finish = [&](SkolemNegative cert, const Rational& R, const Rational& delta) -> std::optional<SkolemNegative> {
    auto K = dominantTailIndex(r, cert.roots, cert.coeffs, cert.separationM, R, delta, tq, fuel.maxStride);
    if (!K || *K > fuel.maxTerms) return std::nullopt;
    auto pq = prefixHolds(r, *K, p, [](const RealInterval& v) { return !v.containsZero(); }, &trace);
    if (!pq) return std::nullopt;
    cert.round = p;
    cert.precision = q;
    cert.clustering = *c;
    cert.coeffPrecision = cq;
    cert.K = *K;
    cert.tailPrecision = tq;
    cert.prefixPrecision = *pq;
    return cert;
  };

  // Test (i): one simple real root strictly dominating all others.
  std::vector<int> ends{0};
  if (c->realCount > 1) ends.push_back(c->realCount - 1);
  for (int j : ends) {
    Rational others = maxOtherSq({j});
    if (modulusSq(c->clusters[static_cast<std::size_t>(j)].box).lo() <= others) continue;
    auto rc = rootAndCoeff(j);
    if (!rc) continue;
    Rational R = abs(rc->first).lo();
    SkolemNegative cert;
    cert.test = SkolemTest::OneRoot;
    cert.roots = {rc->first};
    cert.coeffs = {rc->second};
    cert.separationM = separation(others, R);
    if (cert.separationM >= R) continue;
    if (auto done = finish(cert, R, rc->second.mig())) return done;
  }

  // Test (ii): a positive and a negative simple root, both dominating the
  // rest, with coefficients of different absolute values.
  if (c->realCount >= 2 && n >= 2) {
    int jp = 0, jm = c->realCount - 1;
    Rational others = maxOtherSq({jp, jm});
    const ComplexBox &bp = c->clusters[static_cast<std::size_t>(jp)].box, &bm = c->clusters[static_cast<std::size_t>(jm)].box;
    if (bp.re().positive() && bm.re().negative() && modulusSq(bp).lo() > others && modulusSq(bm).lo() > others) {
      auto rp = rootAndCoeff(jp), rm = rootAndCoeff(jm);
      if (rp && rm) {
        RealInterval ap = abs(rp->second), am = abs(rm->second);
        bool plusBig = ap.lo() > am.hi(), minusBig = am.lo() > ap.hi();
        if (plusBig || minusBig) {
          RealInterval big = plusBig ? abs(rp->first) : abs(rm->first);
          RealInterval small = plusBig ? abs(rm->first) : abs(rp->first);
          bool ordered = big.lo() >= small.hi();
          bool equal = !ordered && exactNegativeIsRoot(r, rp->first);
          if (ordered || equal) {
            Rational R = std::min(abs(rp->first).lo(), abs(rm->first).lo());
            Rational delta = plusBig ? ap.lo() - am.hi() : am.lo() - ap.hi();
            SkolemNegative cert;
            cert.test = SkolemTest::TwoRoot;
            cert.roots = {rp->first, rm->first};
            cert.coeffs = {rp->second, rm->second};
            cert.separationM = separation(others, R);
            cert.exactEqualModuli = equal;
            if (cert.separationM < R)
              if (auto done = finish(cert, R, delta)) return done;
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

// ----------------------------------------------------------- public helpers

std::optional<ComplexBox> simpleRootCoefficient(const LinRec& r, const ComplexBox& mu, long q) {
  int n = r.order();
  std::vector<RealInterval> c, u;
  for (const auto& x : r.coeffs()) c.push_back(x.at(q));
  for (const auto& x : r.inits()) u.push_back(x.at(q));
  // N*(z) = sum_j N_j z^(n-1-j), stored low to high.
  std::vector<RealInterval> nstar(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    RealInterval v = u[static_cast<std::size_t>(j)];
    for (int i = 1; i <= j; ++i) v = v - c[static_cast<std::size_t>(i - 1)] * u[static_cast<std::size_t>(j - i)];
    nstar[static_cast<std::size_t>(n - 1 - j)] = v;
  }
  IntervalPoly P = charPoly(r, q);
  ComplexBox num = evalPoly(IntervalPoly(nstar), mu);
  ComplexBox den = mu * evalPoly(P.derivative(), mu);
  if (den.containsZero()) return std::nullopt;
  return num / den;
}

std::optional<long> dominantTailIndex(const LinRec& r, const std::vector<RealInterval>& roots,
                                      const std::vector<RealInterval>& coeffs, const Rational& M, const Rational& R,
                                      const Rational& delta, long termPrecision, long maxStride) {
  if (sgn(R) <= 0 || M >= R || sgn(M) < 0) return std::nullopt;
  int bits = static_cast<int>(termPrecision + 96);
  auto terms = std::make_shared<TermCache>(r, termPrecision, bits);
  auto scaled = scaledResidual([terms](long k) { return terms->at(k); }, roots, coeffs, R, bits);
  return residualTailIndex(scaled, r.order() - static_cast<int>(roots.size()), M / R, delta, maxStride);
}

// ----------------------------------------------------------- deciders

std::optional<NegatedSentences> negatedSentences(const LinRec& r, long p, const Fuel& fuel, SentenceMode mode) {
  NegatedSentences out;
  auto c = clusteringAt(r, p, fuel, &out.precision);
  if (!c) return std::nullopt;
  out.clustering = *c;
  for (const auto& u : r.inits()) out.initBox.push_back(u.at(p + 1));
  for (const auto& cfg : enumerateConfigurations(*c))
    out.sentences.push_back({cfg, buildNegatedSentence(cfg, *c, out.initBox, mode)});
  return out;
}

Verdict positivityDecide(const LinRec& r, const Fuel& fuel) {
  Trace trace;
  for (long p = 1; p <= fuel.maxPrecision; ++p) {
    ++trace.rounds;
    ++trace.negativeAttempts;
    if (auto neg = negativeSearch(r, p, fuel, trace)) {
      trace.events.push_back("round " + std::to_string(p) + ": u_" + std::to_string(neg->k) + " < 0");
      return halted(Problem::Positivity, 0, *neg, std::move(trace));
    }
    ++trace.positiveAttempts;
    if (auto pos = positiveRecognizer(r, p, fuel, trace)) {
      trace.events.push_back("round " + std::to_string(p) + ": dominant root, N = " + std::to_string(pos->N));
      return halted(Problem::Positivity, 1, *pos, std::move(trace));
    }
  }
  return exhausted(Problem::Positivity, std::move(trace));
}

Verdict uppDecide(const LinRec& r, const Fuel& fuel) {
  Trace trace;
  for (long p = 1; p <= fuel.maxPrecision; ++p) {
    ++trace.rounds;
    ++trace.positiveAttempts;
    auto d = dominantWithCoeff(r, p, fuel);
    if (d && d->coeff.positive()) {
      trace.events.push_back("round " + std::to_string(p) + ": dominant root with positive coefficient");
      return halted(Problem::Upp, 1, UppPositive{d->dom, p, d->coeff, d->coeffPrecision}, std::move(trace));
    }
    ++trace.negativeAttempts;
    if (d && d->coeff.negative()) {
      UppSimpleNegative cert;
      cert.condition = 1;
      cert.round = p;
      cert.dominant = d->dom;
      cert.coeff = ComplexBox(d->coeff);
      cert.coeffPrecision = d->coeffPrecision;
      trace.events.push_back("round " + std::to_string(p) + ": dominant root with negative coefficient");
      return halted(Problem::Upp, 0, cert, std::move(trace));
    }
    if (auto c2 = nonpositiveDominates(r, p, fuel)) {
      trace.events.push_back("round " + std::to_string(p) + ": root outside [0, inf) dominates");
      return halted(Problem::Upp, 0, *c2, std::move(trace));
    }
    RefutationRound t = refutationRound(r, p, fuel);
    trace.configurationsTried += t.configurations;
    trace.subdivisions += t.subdivisions;
    if (t.cert) {
      trace.events.push_back("round " + std::to_string(p) + ": all " + std::to_string(t.cert->records.size()) +
                             " configurations refuted");
      return halted(Problem::Upp, 0, *t.cert, std::move(trace));
    }
    trace.events.push_back("round " + std::to_string(p) + ": " + t.failure);
  }
  return exhausted(Problem::Upp, std::move(trace));
}

Verdict skolemDecide(const LinRec& r, const Fuel& fuel) {
  Trace trace;
  for (long p = 1; p <= fuel.maxPrecision; ++p) {
    ++trace.rounds;
    ++trace.negativeAttempts;
    if (auto cert = skolemRound(r, p, fuel, trace)) {
      trace.events.push_back("round " + std::to_string(p) + ": " + toString(cert->test) + " test, K = " +
                             std::to_string(cert->K));
      return halted(Problem::Skolem, 0, *cert, std::move(trace));
    }
  }
  return exhausted(Problem::Skolem, std::move(trace));
}

Verdict decide(Problem problem, const LinRec& r, const Fuel& fuel) {
  switch (problem) {
    case Problem::Skolem: return skolemDecide(r, fuel);
    case Problem::Positivity: return positivityDecide(r, fuel);
    default: return uppDecide(r, fuel);
  }
}

// ----------------------------------------------------------- trichotomy

namespace {

LinRec boxInstance(const std::vector<RealInterval>& box) {
  std::size_t n = box.size() / 2;
  std::vector<RealName> c, u;
  for (std::size_t i = 0; i < n; ++i) c.push_back(RealName::interval(box[i]));
  for (std::size_t i = n; i < 2 * n; ++i) u.push_back(RealName::interval(box[i]));
  return LinRec(std::move(c), std::move(u));
}

}  // namespace

Trichotomy boxTrichotomy(Problem problem, const std::vector<RealInterval>& box, const Fuel& fuel, int maxDepth,
                         long maxBoxes) {
  if (box.empty() || box.size() % 2 != 0) throw std::invalid_argument("box needs 2n coordinates");
  Verdict whole = decide(problem, boxInstance(box), fuel);
  if (whole.halted) return whole.answer == 1 ? Trichotomy::Positive : Trichotomy::Negative;
  long used = 1;
  std::size_t dims = box.size();
  for (int depth = 1; depth <= maxDepth; ++depth) {
    long pieces = 1L << depth;
    long total = 1;
    for (std::size_t i = 0; i < dims && total <= maxBoxes; ++i) total *= pieces;
    if (used + total > maxBoxes) break;
    used += total;
    bool pos = false, neg = false, allPos = true, allNeg = true;
    std::vector<long> idx(dims, 0);
    for (long t = 0; t < total; ++t) {
      long rest = t;
      std::vector<RealInterval> sub(dims);
      for (std::size_t i = 0; i < dims; ++i) {
        idx[i] = rest % pieces;
        rest /= pieces;
        Rational w = box[i].width() / pieces;
        sub[i] = RealInterval(box[i].lo() + w * idx[i], box[i].lo() + w * (idx[i] + 1));
      }
      Verdict v = decide(problem, boxInstance(sub), fuel);
      if (v.halted && v.answer == 1) pos = true;
      if (v.halted && v.answer == 0) neg = true;
      if (!(v.halted && v.answer == 1)) allPos = false;
      if (!(v.halted && v.answer == 0)) allNeg = false;
      if (pos && neg) return Trichotomy::Mixed;
    }
    // Sub-boxes cover the box, so unanimous answers certify it whole.
    if (allPos) return Trichotomy::Positive;
    if (allNeg) return Trichotomy::Negative;
  }
  return Trichotomy::Exhausted;
}

// ----------------------------------------------------------- checker

namespace {

CheckResult invalid(const std::string& why) { return {false, why}; }
CheckResult ok() { return {true, "ok"}; }

// Re-establishes a dominant simple positive root: clustering valid for the
// char poly, root box inside the top real cluster with a sign change, M
// separating it from every other cluster.
std::optional<std::string> checkDominant(const LinRec& r, const DominantRootCertificate& d) {
  IntervalPoly P = charPoly(r, d.precision);
  auto viol = validateClustering(P, d.clustering);
  if (!viol.empty()) return "clustering: " + viol.front();
  const Clustering& c = d.clustering;
  if (c.realCount < 1 || c.clusters[0].count != 1) return "top cluster is not a simple real root";
  if (!d.rootBox.positive()) return "root box not positive";
  if (!c.clusters[0].box.re().contains(d.rootBox)) return "root box outside the top cluster";
  if (!strictSignChange(P, d.rootBox)) return "no sign change on the root box";
  if (sgn(d.separationM) <= 0 || d.separationM >= d.rootBox.lo()) return "separation M not below the root";
  Rational M2 = d.separationM * d.separationM;
  for (std::size_t j = 1; j < c.clusters.size(); ++j)
    if (modulusSq(c.clusters[j].box).hi() >= M2) return "cluster " + std::to_string(j) + " reaches modulus M";
  return std::nullopt;
}

std::optional<RealInterval> recomputeCoeff(const LinRec& r, const RealInterval& root, long q,
                                           const RealInterval& claimed, std::string& why) {
  auto a = simpleRootCoefficient(r, ComplexBox(root), q);
  if (!a) {
    why = "coefficient not recomputable";
    return std::nullopt;
  }
  if (!a->re().intersects(claimed)) {
    why = "recorded coefficient disagrees with recomputation";
    return std::nullopt;
  }
  return a->re();
}

CheckResult checkPositivityPositive(const LinRec& r, const PositivityPositive& c) {
  if (auto why = checkDominant(r, c.dominant)) return invalid(*why);
  std::string why;
  auto a = recomputeCoeff(r, c.dominant.rootBox, c.coeffPrecision, c.coeff, why);
  if (!a) return invalid(why);
  if (!a->positive()) return invalid("coefficient not positive");
  auto N = dominantTailIndex(r, {c.dominant.rootBox}, {*a}, c.dominant.separationM, c.dominant.rootBox.lo(), a->mig(),
                             c.tailPrecision, 1L << 20);
  if (!N) return invalid("tail bound not reproducible");
  if (c.N < *N) return invalid("prefix bound N=" + std::to_string(c.N) + " below the tail index " + std::to_string(*N));
  if (!prefixReplays(r, c.N, c.prefixPrecision, [](const RealInterval& v) { return v.positive(); }))
    return invalid("a prefix term is not certainly positive");
  return ok();
}

CheckResult checkSkolem(const LinRec& r, const SkolemNegative& c) {
  IntervalPoly P = charPoly(r, c.precision);
  auto viol = validateClustering(P, c.clustering);
  if (!viol.empty()) return invalid("clustering: " + viol.front());
  std::size_t want = c.test == SkolemTest::OneRoot ? 1 : 2;
  if (c.roots.size() != want || c.coeffs.size() != want) return invalid("wrong number of roots");
  std::vector<std::size_t> owner;
  for (const auto& root : c.roots) {
    if (root.containsZero()) return invalid("root box contains zero");
    if (!strictSignChange(P, root)) return invalid("no sign change on a root box");
    std::size_t found = c.clustering.clusters.size();
    for (std::size_t j = 0; j < static_cast<std::size_t>(c.clustering.realCount); ++j)
      if (c.clustering.clusters[j].box.re().contains(root)) found = j;
    if (found == c.clustering.clusters.size() || c.clustering.clusters[found].count != 1)
      return invalid("root not isolated by a simple real cluster");
    owner.push_back(found);
  }
  if (want == 2 && (owner[0] == owner[1] || !c.roots[0].positive() || !c.roots[1].negative()))
    return invalid("two-root test needs a positive and a negative root");
  Rational R = abs(c.roots[0]).lo();
  for (const auto& root : c.roots) R = std::min(R, abs(root).lo());
  if (sgn(c.separationM) < 0 || c.separationM >= R) return invalid("separation M not below the roots");
  Rational M2 = c.separationM * c.separationM;
  for (std::size_t j = 0; j < c.clustering.clusters.size(); ++j)
    if (std::find(owner.begin(), owner.end(), j) == owner.end() && modulusSq(c.clustering.clusters[j].box).hi() >= M2)
      return invalid("cluster " + std::to_string(j) + " reaches modulus M");
  std::vector<RealInterval> a;
  for (std::size_t i = 0; i < want; ++i) {
    std::string why;
    auto ai = recomputeCoeff(r, c.roots[i], c.coeffPrecision, c.coeffs[i], why);
    if (!ai) return invalid(why);
    if (ai->containsZero()) return invalid("coefficient may vanish");
    a.push_back(*ai);
  }
  Rational delta;
  if (want == 1) {
    delta = a[0].mig();
  } else {
    RealInterval ap = abs(a[0]), am = abs(a[1]);
    bool plusBig = ap.lo() > am.hi(), minusBig = am.lo() > ap.hi();
    if (!plusBig && !minusBig) return invalid("coefficients not of distinct absolute value");
    RealInterval big = plusBig ? abs(c.roots[0]) : abs(c.roots[1]);
    RealInterval small = plusBig ? abs(c.roots[1]) : abs(c.roots[0]);
    if (c.exactEqualModuli) {
      if (!exactNegativeIsRoot(r, c.roots[0])) return invalid("moduli not certified equal");
    } else if (big.lo() < small.hi()) {
      return invalid("larger coefficient not on the larger root");
    }
    delta = plusBig ? ap.lo() - am.hi() : am.lo() - ap.hi();
  }
  auto K = dominantTailIndex(r, c.roots, a, c.separationM, R, delta, c.tailPrecision, 1L << 20);
  if (!K) return invalid("tail bound not reproducible");
  if (c.K < *K) return invalid("prefix bound K=" + std::to_string(c.K) + " below the tail index " + std::to_string(*K));
  if (!prefixReplays(r, c.K, c.prefixPrecision, [](const RealInterval& v) { return !v.containsZero(); }))
    return invalid("a prefix term may vanish");
  return ok();
}

CheckResult checkUppSimpleNegative(const LinRec& r, const UppSimpleNegative& c) {
  if (c.condition == 1) {
    if (!c.dominant) return invalid("missing dominant root");
    if (auto why = checkDominant(r, *c.dominant)) return invalid(*why);
    std::string why;
    auto a = recomputeCoeff(r, c.dominant->rootBox, c.coeffPrecision, c.coeff.re(), why);
    if (!a) return invalid(why);
    if (!a->negative()) return invalid("coefficient not negative");
    return ok();
  }
  if (c.condition != 2) return invalid("unknown condition");
  IntervalPoly P = charPoly(r, c.precision);
  auto viol = validateClustering(P, c.clustering);
  if (!viol.empty()) return invalid("clustering: " + viol.front());
  bool real = c.root.isReal();
  if (real) {
    if (!c.root.re().negative()) return invalid("real root not negative");
    if (!strictSignChange(P, c.root.re())) return invalid("no sign change on the root box");
  } else {
    if (!c.root.im().positive()) return invalid("root box meets the real axis");
    auto cnt = countRootsInBox(P, c.root);
    if (!cnt || *cnt != 1) return invalid("root box does not isolate one root");
  }
  Rational posMaxSq(0);
  for (int j = 0; j < c.clustering.realCount; ++j) {
    const ComplexBox& b = c.clustering.clusters[static_cast<std::size_t>(j)].box;
    if (sgn(b.re().hi()) > 0) posMaxSq = std::max(posMaxSq, modulusSq(b).hi());
  }
  if (modulusSq(c.root).lo() <= posMaxSq) return invalid("root does not dominate the positive roots");
  auto a = simpleRootCoefficient(r, c.root, c.coeffPrecision);
  if (!a) return invalid("coefficient not recomputable");
  if (!a->intersects(c.coeff)) return invalid("recorded coefficient disagrees with recomputation");
  if (a->containsZero()) return invalid("coefficient may vanish");
  return ok();
}

CheckResult checkUppNegative(const LinRec& r, const UppNegative& c, const CheckOptions& o) {
  IntervalPoly P = charPoly(r, c.precision);
  auto viol = validateClustering(P, c.clustering);
  if (!viol.empty()) return invalid("clustering: " + viol.front());
  if (c.initBox.size() != static_cast<std::size_t>(r.order())) return invalid("initial box has the wrong size");
  for (std::size_t k = 0; k < c.initBox.size(); ++k) {
    bool inside = false;
    for (long q = c.round + 1; q <= c.round + 64 && !inside; q += 21) {
      Enclosure e = r.inits()[k].query(q);
      inside = c.initBox[k].contains(e.value);
      if (e.exhausted) break;
    }
    if (!inside) return invalid("u_" + std::to_string(k + 1) + " not inside the initial box");
  }
  auto configs = enumerateConfigurations(c.clustering);
  if (configs.size() != c.records.size())
    return invalid("certificate covers " + std::to_string(c.records.size()) + " of " + std::to_string(configs.size()) +
                   " configurations");
  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (!(configs[i] == c.records[i].configuration)) return invalid("configuration " + std::to_string(i) + " differs");
    ConstraintSystem s = buildNegatedSentence(configs[i], c.clustering, c.initBox, SentenceMode::Cramer);
    if (c.records[i].backend == "internal") {
      if (refuteBySubdivision(s, o.maxSubdivisions).status != RefuteStatus::Unsat)
        return invalid("configuration " + configs[i].describe() + " not refuted on replay");
    } else if (c.records[i].backend == "smtlib") {
      if (o.solverPath.empty()) return invalid("configuration " + configs[i].describe() + " needs a solver to replay");
      ConstraintSystem s2 = c.mode == SentenceMode::Cramer ? s : buildNegatedSentence(configs[i], c.clustering, c.initBox, c.mode);
      if (externalSolverCheck(s2, o.solverPath, o.solverTimeout) != SolverVerdict::Unsat)
        return invalid("configuration " + configs[i].describe() + " not unsat on replay");
    } else {
      return invalid("unknown backend " + c.records[i].backend);
    }
  }
  return ok();
}

}  // namespace

CheckResult checkCertificate(const LinRec& r, const Verdict& v, const CheckOptions& options) {
  if (!v.halted) return invalid("verdict did not halt");
  try {
    return std::visit(
        [&](const auto& c) -> CheckResult {
          using T = std::decay_t<decltype(c)>;
          if constexpr (std::is_same_v<T, std::monostate>) {
            return invalid("no certificate");
          } else if constexpr (std::is_same_v<T, PositivityPositive>) {
            if (v.problem != Problem::Positivity || v.answer != 1) return invalid("certificate does not match verdict");
            return checkPositivityPositive(r, c);
          } else if constexpr (std::is_same_v<T, PositivityNegative>) {
            if (v.problem != Problem::Positivity || v.answer != 0) return invalid("certificate does not match verdict");
            if (c.k < 1) return invalid("term index below 1");
            if (!termEnclosures(r, c.k, c.precision, prefixBits(c.precision)).back().negative())
              return invalid("u_" + std::to_string(c.k) + " not certainly negative");
            return ok();
          } else if constexpr (std::is_same_v<T, SkolemNegative>) {
            if (v.problem != Problem::Skolem || v.answer != 0) return invalid("certificate does not match verdict");
            return checkSkolem(r, c);
          } else if constexpr (std::is_same_v<T, UppPositive>) {
            if (v.problem != Problem::Upp || v.answer != 1) return invalid("certificate does not match verdict");
            if (auto why = checkDominant(r, c.dominant)) return invalid(*why);
            std::string why;
            auto a = recomputeCoeff(r, c.dominant.rootBox, c.coeffPrecision, c.coeff, why);
            if (!a) return invalid(why);
            if (!a->positive()) return invalid("coefficient not positive");
            return ok();
          } else if constexpr (std::is_same_v<T, UppSimpleNegative>) {
            if (v.problem != Problem::Upp || v.answer != 0) return invalid("certificate does not match verdict");
            return checkUppSimpleNegative(r, c);
          } else {
            if (v.problem != Problem::Upp || v.answer != 0) return invalid("certificate does not match verdict");
            return checkUppNegative(r, c, options);
          }
        },
        v.certificate);
  } catch (const SolverNotFound& e) {
    return invalid(e.what());
  } catch (const std::exception& e) {
    return invalid(std::string("check failed: ") + e.what());
  }
}

}  // namespace lrs
