#pragma once

// Glue between the library types and the oracle, shared by the unit tests and
// the acceptance binary.

#include <lrs/configs.hpp>
#include <lrs/fodecide.hpp>
#include <lrs/poly.hpp>
#include <lrs/problems.hpp>

#include "oracle.hpp"

#include <random>

namespace support {

inline oracle::OClustering toOracle(const lrs::Clustering& c) {
  oracle::OClustering o;
  for (const auto& cl : c.clusters)
    o.boxes.push_back({cl.box.re().lo(), cl.box.re().hi(), cl.box.im().lo(), cl.box.im().hi(), cl.count});
  o.realCount = c.realCount;
  o.upperCount = c.upperCount;
  return o;
}

inline lrs::LinRec toLinRec(const oracle::ExactInstance& e) { return lrs::LinRec::fromRationals(e.coeffs, e.inits); }

// Uniform over {k / den : |k / den| <= bound}, den drawn from 1..maxDen.
inline oracle::Q randomRational(std::mt19937_64& rng, long bound, long maxDen) {
  long den = 1 + static_cast<long>(rng() % static_cast<unsigned long>(maxDen));
  long span = 2 * bound * den + 1;
  long num = static_cast<long>(rng() % static_cast<unsigned long>(span)) - bound * den;
  oracle::Q q(num, den);
  q.canonicalize();
  return q;
}

inline oracle::ExactInstance randomInstance(std::mt19937_64& rng, int order, long bound, long maxDen) {
  oracle::ExactInstance e;
  for (int i = 0; i < order; ++i) e.coeffs.push_back(randomRational(rng, bound, maxDen));
  for (int i = 0; i < order; ++i) e.inits.push_back(randomRational(rng, bound, maxDen));
  return e;
}

// Equality of a + b sqrt(d) values whose d are square-free multiples of 1/4.
inline bool sameValue(const oracle::QuadReal& x, const oracle::QuadReal& y) {
  bool xr = sgn(x.b) == 0 || sgn(x.d) == 0, yr = sgn(y.b) == 0 || sgn(y.d) == 0;
  if (xr && yr) return x.a == y.a;
  if (xr != yr || x.d != y.d) return false;
  return x.a == y.a && x.b == y.b;
}

struct KnownPoly {
  std::vector<oracle::Q> poly;  // low to high
  std::vector<oracle::KnownRoot> roots;
};

// Product of random linear and quadratic factors of total degree <= maxDegree.
// Repeated factors are allowed so that clusters with multiplicity occur.
inline KnownPoly randomFactoredPoly(std::mt19937_64& rng, int maxDegree) {
  KnownPoly k;
  k.poly = {oracle::Q(1)};
  int degree = 1 + static_cast<int>(rng() % static_cast<unsigned long>(maxDegree));
  std::vector<oracle::Factor> used;
  while (static_cast<int>(k.poly.size()) - 1 < degree) {
    int left = degree - (static_cast<int>(k.poly.size()) - 1);
    oracle::Factor f;
    if (!used.empty() && rng() % 4 == 0 && static_cast<int>(used.back().poly.size()) - 1 <= left) {
      f = used.back();  // repeat the previous factor
    } else if (left >= 2 && rng() % 2 == 0) {
      // square-free t, so roots from different factors differ unless the factors are equal
      static const long ts[] = {2, 3, 5, 6, 7, -1, -2, -3, -5};
      oracle::Q s = randomRational(rng, 2, 4);
      f = oracle::quadraticFactor(s, oracle::Q(ts[rng() % 9]) / 4);
    } else {
      f = oracle::linearFactor(randomRational(rng, 2, 4));
    }
    used.push_back(f);
    k.poly = oracle::multiply(k.poly, f.poly);
    // merge equal roots into multiplicities
    for (const auto& r : f.roots) {
      bool merged = false;
      for (auto& e : k.roots) {
        if (sameValue(e.re, r.re) && sameValue(e.im, r.im)) {
          e.multiplicity += r.multiplicity;
          merged = true;
          break;
        }
      }
      if (!merged) k.roots.push_back(r);
    }
  }
  return k;
}

inline lrs::Clustering singleRealCluster(int count) {
  lrs::Clustering c;
  lrs::Rational e = lrs::pow2(-6);
  c.clusters.push_back({lrs::ComplexBox(lrs::RealInterval(1 - e, 1 + e), lrs::RealInterval(-e, e)), count});
  c.realCount = 1;
  return c;
}

// One random point of a configuration domain: distinct reals in descending
// order, complex roots with y > 0 and distinct from each other, random u.
inline std::vector<oracle::Q> randomDomainPoint(std::mt19937_64& rng, const lrs::RootConfiguration& r) {
  std::vector<oracle::Q> point(r.varCount(), oracle::Q(0));
  oracle::Q prev = 3;
  for (std::size_t i = 0; i < r.reals.size(); ++i) {
    do {
      prev -= oracle::Q(1 + static_cast<long>(rng() % 8), 8);
      prev.canonicalize();
    } while (sgn(prev) == 0);  // a zero root makes the system singular
    point[r.rhoVar(i)] = prev;
  }
  for (std::size_t j = 0; j < r.complexes.size(); ++j) {
    point[r.xVar(j)] = randomRational(rng, 2, 8);
    point[r.yVar(j)] = oracle::Q(static_cast<long>(j) + 1, 2) + oracle::Q(static_cast<long>(rng() % 4), 16);
    point[r.yVar(j)].canonicalize();
  }
  for (int k = 1; k <= r.order(); ++k) point[r.uVar(static_cast<std::size_t>(k))] = randomRational(rng, 2, 16);
  return point;
}

// Roots of the configuration at a point, in the order reals, then each
// complex root followed by its conjugate.
inline std::vector<oracle::ExactRoot> exactConfigurationRoots(const lrs::RootConfiguration& r,
                                                              const std::vector<oracle::Q>& point) {
  std::vector<oracle::ExactRoot> roots;
  for (std::size_t i = 0; i < r.reals.size(); ++i) roots.push_back({oracle::QF(point[r.rhoVar(i)]), r.reals[i].multiplicity});
  for (std::size_t j = 0; j < r.complexes.size(); ++j) {
    oracle::QF lam(point[r.xVar(j)], point[r.yVar(j)], oracle::Q(-1));
    roots.push_back({lam, r.complexes[j].multiplicity});
    roots.push_back({lam.conj(), r.complexes[j].multiplicity});
  }
  return roots;
}

struct CramerSample {
  bool compared = false;
  bool agree = true;
  std::string describe;
};

// Sign of the Cramer polynomial against the exactly interpolated leading
// coefficient of the largest real root, skipped when |a| <= 2^-40.
inline CramerSample cramerSample(std::mt19937_64& rng, int maxOrder) {
  static std::vector<std::vector<lrs::RootConfiguration>> byOrder;
  static std::vector<std::vector<lrs::SymPoly>> polys;
  if (byOrder.empty()) {
    for (int n = 1; n <= maxOrder; ++n) {
      std::vector<lrs::RootConfiguration> keep;
      std::vector<lrs::SymPoly> ps;
      for (const auto& cfg : lrs::enumerateConfigurations(singleRealCluster(n))) {
        auto p = lrs::cramerSignPoly(cfg);
        if (!p) continue;
        keep.push_back(cfg);
        ps.push_back(*p);
      }
      byOrder.push_back(keep);
      polys.push_back(ps);
    }
  }
  CramerSample out;
  std::size_t n = rng() % byOrder.size();
  std::size_t idx = rng() % byOrder[n].size();
  const auto& cfg = byOrder[n][idx];
  auto point = randomDomainPoint(rng, cfg);
  auto coeffs = oracle::exactInterpolate(exactConfigurationRoots(cfg, point), [&] {
    std::vector<oracle::Q> u;
    for (int k = 1; k <= cfg.order(); ++k) u.push_back(point[cfg.uVar(static_cast<std::size_t>(k))]);
    return u;
  }());
  oracle::QF lead = coeffs[0][static_cast<std::size_t>(cfg.reals[0].multiplicity - 1)];
  oracle::Q a = lead.a;  // real for real data
  if (abs(a) <= lrs::pow2(-40)) return out;
  out.compared = true;
  int expected = sgn(a);
  int got = sgn(polys[n][idx].evalExact(point));
  out.agree = expected == got && lead.isReal() && sgn(lead.b) == 0;
  out.describe = cfg.describe();
  return out;
}

}  // namespace support
