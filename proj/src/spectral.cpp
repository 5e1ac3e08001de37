#include "lrs/spectral.hpp"

#include <algorithm>
#include <list>
#include <mutex>

namespace lrs {

namespace {

std::string polyKey(const IntervalPoly& p, const ClusteringFuel& f) {
  std::string k = std::to_string(f.maxLevel) + ":" + std::to_string(f.maxCells) + ":" + std::to_string(f.maxSegments);
  for (const auto& c : p.coeffs()) k += "|" + toString(c.lo()) + "," + toString(c.hi());
  return k;
}

}  // namespace

std::shared_ptr<RootIsolator> sharedIsolator(const IntervalPoly& p, const ClusteringFuel& fuel) {
  static std::mutex mu;
  static std::list<std::pair<std::string, std::shared_ptr<RootIsolator>>> cache;
  std::string key = polyKey(p, fuel);
  std::lock_guard<std::mutex> lock(mu);
  for (auto it = cache.begin(); it != cache.end(); ++it) {
    if (it->first == key) {
      cache.splice(cache.begin(), cache, it);
      return cache.front().second;
    }
  }
  auto iso = std::make_shared<RootIsolator>(p, fuel);
  cache.emplace_front(key, iso);
  if (cache.size() > 32) cache.pop_back();
  return iso;
}

long charPrecision(const LinRec& r, long p) { return static_cast<long>(r.order()) * (p + 2) + 16; }

std::optional<DominantRootCertificate> dominantSimplePositiveRoot(const LinRec& r, long p, const SpectralFuel& fuel) {
  long q = charPrecision(r, p);
  IntervalPoly P = charPoly(r, q);
  auto iso = sharedIsolator(P, fuel.clustering);
  if (!iso->valid()) return std::nullopt;
  auto c = iso->withWidth(pow2(-p));
  if (!c || c->realCount == 0) return std::nullopt;
  const Cluster& top = c->clusters[0];
  if (top.count != 1 || !top.box.re().positive()) return std::nullopt;
  Rational rhoLo = top.box.re().lo();
  Rational maxSq(0);
  for (std::size_t j = 1; j < c->clusters.size(); ++j) maxSq = std::max(maxSq, modulusSq(c->clusters[j].box).hi());
  if (maxSq >= rhoLo * rhoLo) return std::nullopt;
  Rational M;
  if (c->clusters.size() == 1) {
    M = rhoLo / 2;
  } else {
    Rational s = sqrtUpper(maxSq, 64);
    if (s >= rhoLo) return std::nullopt;
    M = (s + rhoLo) / 2;
  }
  RealInterval root = refineRealRoot(P, top.box.re(), pow2(-(p + 8)));
  auto coef = coefficientOfRoot(r, ComplexBox(root), 1, p, fuel);
  if (!coef) return std::nullopt;
  DominantRootCertificate cert;
  cert.rootBox = coef->mu.re();
  cert.coeffBox = coef->a[0].re();
  cert.separationM = M;
  cert.clustering = *c;
  cert.precision = q;
  return cert;
}

std::optional<std::vector<ComplexBox>> coefficientsFrom(const std::vector<RealInterval>& coeffs,
                                                        const std::vector<RealInterval>& inits, const ComplexBox& mu,
                                                        int m, int bits) {
  int n = static_cast<int>(coeffs.size());
  if (m < 1 || m > n || static_cast<int>(inits.size()) != n || mu.containsZero()) return std::nullopt;
  auto N = static_cast<std::size_t>(n);
  auto rnd = [bits](const ComplexBox& z) { return roundRelative(z, bits); };
  using Mat = std::vector<std::vector<ComplexBox>>;
  Mat am(N, std::vector<ComplexBox>(N, ComplexBox(RealInterval(0))));
  for (std::size_t j = 0; j < N; ++j) am[0][j] = ComplexBox(coeffs[j]);
  for (std::size_t i = 1; i < N; ++i) am[i][i - 1] = ComplexBox(RealInterval(1));
  for (std::size_t i = 0; i < N; ++i) am[i][i] = am[i][i] - mu;
  Mat b = am;
  for (int e = 1; e < m; ++e) {
    Mat nb(N, std::vector<ComplexBox>(N, ComplexBox(RealInterval(0))));
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) {
        ComplexBox s(RealInterval(0));
        for (std::size_t k = 0; k < N; ++k) s = s + b[i][k] * am[k][j];
        nb[i][j] = rnd(s);
      }
    b = std::move(nb);
  }

  // Columns: v_1..v_m, then the n columns of (A - mu I)^m, then x_1.
  std::size_t cols = static_cast<std::size_t>(m) + N + 1;
  Mat mat(N, std::vector<ComplexBox>(cols, ComplexBox(RealInterval(0))));
  std::vector<ComplexBox> mupow(N + 1, ComplexBox(RealInterval(1)));
  for (std::size_t e = 1; e <= N; ++e) mupow[e] = rnd(mupow[e - 1] * mu);
  for (int i = 1; i <= m; ++i) {
    for (int row = 1; row <= n; ++row) {
      int e = n - row;
      if (e < i - 1) continue;
      // binomial(e, i-1) * mu^(e-i+1)
      Integer binom;
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(e), static_cast<unsigned long>(i - 1));
      mat[static_cast<std::size_t>(row - 1)][static_cast<std::size_t>(i - 1)] =
          RealInterval(Rational(binom)) * mupow[static_cast<std::size_t>(e - i + 1)];
    }
  }
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) mat[i][static_cast<std::size_t>(m) + j] = b[i][j];
  for (int row = 1; row <= n; ++row)
    mat[static_cast<std::size_t>(row - 1)][cols - 1] = ComplexBox(inits[static_cast<std::size_t>(n - row)]);

  std::vector<bool> rowUsed(N, false), colUsed(cols, false);
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  for (std::size_t t = 0; t < N; ++t) {
    Rational best(0);
    std::size_t br = N, bc = cols;
    std::size_t c0 = t < static_cast<std::size_t>(m) ? t : static_cast<std::size_t>(m);
    std::size_t c1 = t < static_cast<std::size_t>(m) ? t + 1 : static_cast<std::size_t>(m) + N;
    for (std::size_t c = c0; c < c1; ++c) {
      if (colUsed[c]) continue;
      for (std::size_t r = 0; r < N; ++r) {
        if (rowUsed[r]) continue;
        Rational g = modulusSq(mat[r][c]).lo();
        if (g > best) {
          best = g;
          br = r;
          bc = c;
        }
      }
    }
    if (br == N) return std::nullopt;
    rowUsed[br] = true;
    colUsed[bc] = true;
    pivots.emplace_back(br, bc);
    ComplexBox inv = reciprocal(mat[br][bc]);
    for (std::size_t r = 0; r < N; ++r) {
      if (rowUsed[r]) continue;
      ComplexBox f = rnd(mat[r][bc] * inv);
      for (std::size_t c = 0; c < cols; ++c) {
        if (colUsed[c] && c != bc) continue;
        mat[r][c] = c == bc ? ComplexBox(RealInterval(0)) : rnd(mat[r][c] - f * mat[br][c]);
      }
    }
  }
  std::vector<ComplexBox> w(N);
  for (std::size_t t = N; t-- > 0;) {
    auto [r, c] = pivots[t];
    ComplexBox s = mat[r][cols - 1];
    for (std::size_t t2 = t + 1; t2 < N; ++t2) s = s - mat[r][pivots[t2].second] * w[t2];
    w[t] = rnd(s / mat[r][c]);
  }

  // u_k restricted to mu is mu^k * sum_l w_{l+1} mu^{-1-l} binom(k-1, l).
  ComplexBox muInv = reciprocal(mu);
  std::vector<ComplexBox> a(static_cast<std::size_t>(m), ComplexBox(RealInterval(0)));
  ComplexBox muInvPow = muInv;
  std::vector<Rational> binomPoly{Rational(1)};  // coefficients of prod_{j<=l} (k - j), in k
  Rational fact(1);
  for (int l = 0; l < m; ++l) {
    if (l > 0) {
      std::vector<Rational> next(binomPoly.size() + 1, Rational(0));
      for (std::size_t d = 0; d < binomPoly.size(); ++d) {
        next[d + 1] += binomPoly[d];
        next[d] -= binomPoly[d] * l;
      }
      binomPoly = std::move(next);
      fact *= l;
      muInvPow = rnd(muInvPow * muInv);
    }
    ComplexBox s = rnd(w[static_cast<std::size_t>(l)] * muInvPow);
    for (std::size_t d = 0; d < binomPoly.size(); ++d)
      a[d] = rnd(a[d] + RealInterval(binomPoly[d] / fact) * s);
  }
  return a;
}

std::optional<CoeffVector> coefficientOfRoot(const LinRec& r, const ComplexBox& muBox, int m, long p,
                                             const SpectralFuel& fuel) {
  std::optional<CoeffVector> best;
  Rational target = pow2(-p);
  for (int t = 0; t < fuel.coefficientAttempts; ++t) {
    long extra = 16 + 32L * t;
    long qi = p + extra, qc = static_cast<long>(m) * (p + extra) + 8;
    IntervalPoly P = charPoly(r, qc);
    ComplexBox mu = muBox;
    Rational muTarget = pow2(-(p + extra));
    if (mu.isReal()) {
      if (m == 1) mu = ComplexBox(refineRealRoot(P, mu.re(), muTarget));
    } else if (sgn(mu.re().width()) > 0 && sgn(mu.im().width()) > 0) {
      mu = refineClusterBox(P, mu, m, muTarget);
    }
    std::vector<RealInterval> c, u;
    bool stuck = false;
    for (const auto& x : r.coeffs()) {
      c.push_back(x.at(qc));
      stuck = stuck || x.query(qc).exhausted;
    }
    for (const auto& x : r.inits()) {
      u.push_back(x.at(qi));
      stuck = stuck || x.query(qi).exhausted;
    }
    auto a = coefficientsFrom(c, u, mu, m, static_cast<int>(2 * (p + extra) + 64));
    if (a) {
      bool narrow = std::all_of(a->begin(), a->end(), [&](const ComplexBox& z) { return z.width() <= target; });
      best = CoeffVector{*a, mu, narrow};
      if (narrow) return best;
    }
    if (stuck) break;
  }
  return best;
}

std::optional<RealInterval> largestSimpleRealRoot(const IntervalPoly& p, const Rational& eps, const ClusteringFuel& fuel) {
  auto iso = sharedIsolator(p, fuel);
  if (!iso->valid()) return std::nullopt;
  IntervalPoly dp = p.derivative();
  for (int level = 1; level <= fuel.maxLevel; ++level) {
    auto c = iso->atLevel(level);
    if (!c) continue;
    if (c->realCount == 0) return std::nullopt;
    const Cluster& top = c->clusters[0];
    if (top.count != 1) continue;
    if (evalPoly(dp, top.box.re()).containsZero()) continue;
    RealInterval root = refineRealRoot(p, top.box.re(), eps);
    if (root.width() <= eps) return root;
    return std::nullopt;
  }
  return std::nullopt;
}

std::optional<long> residualTailIndex(const std::function<RealInterval(long)>& scaled, int order, const Rational& ratio,
                                      const Rational& delta, long maxStride) {
  if (order == 0) return 1;
  if (ratio >= 1 || sgn(delta) <= 0) return std::nullopt;
  Rational r = ceilToGrid(ratio, approxLog2(ratio) - 64);
  if (r >= 1) r = ratio;
  // Smallest stride s with order * r^s * (1 + r^s)^(order-1) < 1/2.
  long stride = 0;
  Rational rs(1);
  for (long s = 1; s <= maxStride; ++s) {
    rs = ceilToGrid(rs * r, approxLog2(rs * r) - 64);
    Rational lhs = rs * order;
    Rational onePlus = rs + 1;
    for (int i = 1; i < order; ++i) lhs = ceilToGrid(lhs * onePlus, approxLog2(lhs * onePlus) - 64);
    if (lhs * 2 < 1) {
      stride = s;
      break;
    }
  }
  if (stride == 0) return std::nullopt;
  long N = 0;
  for (long q = 0; q < stride; ++q) {
    Rational W(0);
    for (long i = 1; i <= order; ++i) W = std::max(W, scaled(stride * i + q).mag());
    // |v_i| <= 2^-b W on the b-th block of `order` consecutive indices.
    long b = 0;
    Rational lim = delta;
    while (W >= lim) {
      lim *= 2;
      if (++b > 100000) return std::nullopt;
    }
    N = std::max(N, stride * (static_cast<long>(order) * b + 1) + q);
  }
  return N;
}

std::function<RealInterval(long)> scaledResidual(std::function<RealInterval(long)> term,
                                                 const std::vector<RealInterval>& roots,
                                                 const std::vector<RealInterval>& coeffs, const Rational& R, int bits) {
  struct State {
    std::function<RealInterval(long)> term;
    std::vector<RealInterval> ratio, coeffs;
    RealInterval invR;
    std::vector<std::vector<RealInterval>> pow;  // pow[j][k] = ratio_j^k, last row = (1/R)^k
    int bits;
  };
  auto st = std::make_shared<State>();
  st->term = std::move(term);
  st->coeffs = coeffs;
  st->bits = bits;
  st->invR = RealInterval(1 / R);
  for (const auto& rho : roots) st->ratio.push_back(roundRelative(rho / RealInterval(R), bits));
  st->ratio.push_back(st->invR);
  st->pow.assign(st->ratio.size(), std::vector<RealInterval>{RealInterval(1)});
  return [st](long k) {
    for (std::size_t j = 0; j < st->ratio.size(); ++j) {
      auto& pw = st->pow[j];
      while (static_cast<long>(pw.size()) <= k) pw.push_back(roundRelative(pw.back() * st->ratio[j], st->bits));
    }
    RealInterval v = roundRelative(st->term(k) * st->pow.back()[static_cast<std::size_t>(k)], st->bits);
    for (std::size_t j = 0; j + 1 < st->ratio.size(); ++j)
      v = v - st->coeffs[j] * st->pow[j][static_cast<std::size_t>(k)];
    return roundRelative(v, st->bits);
  };
}

std::optional<long> tailIndex(const LinRec& r, const DominantRootCertificate& cert, long maxStride) {
  if (!cert.rootBox.positive() || cert.coeffBox.containsZero()) return std::nullopt;
  Rational R = cert.rootBox.lo();
  int bits = static_cast<int>(cert.precision + 96);
  auto terms = std::make_shared<TermCache>(r, cert.precision + 16, bits);
  auto scaled = scaledResidual([terms](long k) { return terms->at(k); }, {cert.rootBox}, {cert.coeffBox}, R, bits);
  return residualTailIndex(scaled, r.order() - 1, cert.separationM / R, cert.coeffBox.mig(), maxStride);
}

bool companionRankAtLeast(const LinRec& r, const ComplexBox& lambda, long p, int rank) {
  auto a = companionMatrix(r, p);
  std::size_t n = a.size();
  std::vector<std::vector<ComplexBox>> m(n, std::vector<ComplexBox>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = ComplexBox(a[i][j]) - (i == j ? lambda : ComplexBox(RealInterval(0)));
  std::vector<bool> rowUsed(n, false), colUsed(n, false);
  int found = 0;
  for (std::size_t t = 0; t < n; ++t) {
    Rational best(0);
    std::size_t br = n, bc = n;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (rowUsed[i] || colUsed[j]) continue;
        Rational g = modulusSq(m[i][j]).lo();
        if (g > best) {
          best = g;
          br = i;
          bc = j;
        }
      }
    if (br == n) break;
    ++found;
    rowUsed[br] = colUsed[bc] = true;
    ComplexBox inv = reciprocal(m[br][bc]);
    for (std::size_t i = 0; i < n; ++i) {
      if (rowUsed[i]) continue;
      ComplexBox f = m[i][bc] * inv;
      for (std::size_t j = 0; j < n; ++j)
        if (!colUsed[j]) m[i][j] = roundRelative(m[i][j] - f * m[br][j], 256);
      m[i][bc] = ComplexBox(RealInterval(0));
    }
  }
  return found >= rank;
}

}  // namespace lrs
