#include "lrs/poly.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace lrs {

IntervalPoly::IntervalPoly(std::vector<RealInterval> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.emplace_back(0);
}

IntervalPoly IntervalPoly::fromRationals(const std::vector<Rational>& coeffs) {
  std::vector<RealInterval> c;
  c.reserve(coeffs.size());
  for (const auto& q : coeffs) c.emplace_back(q);
  return IntervalPoly(std::move(c));
}

bool IntervalPoly::isExact() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const RealInterval& c) { return c.isPoint(); });
}

IntervalPoly IntervalPoly::derivative() const {
  if (degree() == 0) return IntervalPoly({RealInterval(0)});
  std::vector<RealInterval> d;
  for (int i = 1; i <= degree(); ++i) d.push_back(RealInterval(i) * coeffs_[static_cast<std::size_t>(i)]);
  return IntervalPoly(std::move(d));
}

ComplexBox evalPoly(const IntervalPoly& p, const ComplexBox& z) {
  ComplexBox acc(p[p.degree()]);
  for (int i = p.degree() - 1; i >= 0; --i) acc = acc * z + ComplexBox(p[i]);
  return acc;
}

RealInterval evalPoly(const IntervalPoly& p, const RealInterval& x) {
  RealInterval acc = p[p.degree()];
  for (int i = p.degree() - 1; i >= 0; --i) acc = acc * x + p[i];
  return acc;
}

std::vector<ComplexBox> taylorShift(const IntervalPoly& p, const ComplexBox& c, int bits) {
  int n = p.degree();
  std::vector<ComplexBox> a;
  a.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) a.emplace_back(p[i]);
  for (int i = 0; i < n; ++i) {
    for (int j = n - 1; j >= i; --j) {
      a[static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(j)] + c * a[static_cast<std::size_t>(j) + 1];
      if (bits > 0) a[static_cast<std::size_t>(j)] = roundRelative(a[static_cast<std::size_t>(j)], bits);
    }
  }
  return a;
}

namespace {

ComplexBox centerOf(const ComplexBox& b) { return ComplexBox(RealInterval(b.re().mid()), RealInterval(b.im().mid())); }

// Upper bound of sum_{k>=1} |T_k| r^k.
Rational tailBound(const std::vector<ComplexBox>& t, const Rational& r) {
  Rational s(0), rk(1);
  for (std::size_t k = 1; k < t.size(); ++k) {
    rk *= r;
    s += sqrtUpper(modulusSq(t[k]).hi(), 24) * rk;
  }
  return s;
}

enum Half { None = -1, Right = 0, Up = 1, Left = 2, Down = 3 };

Half halfPlane(const ComplexBox& b) {
  if (b.re().positive()) return Right;
  if (b.re().negative()) return Left;
  if (b.im().positive()) return Up;
  if (b.im().negative()) return Down;
  return None;
}

// Quadrants: 0 {re>0, im>=0}, 1 {re<=0, im>0}, 2 {re<0, im<=0}, 3 {re>=0, im<0}.
std::vector<int> quadrantsMeeting(const ComplexBox& b) {
  std::vector<int> q;
  if (sgn(b.re().hi()) > 0 && sgn(b.im().hi()) >= 0) q.push_back(0);
  if (sgn(b.re().lo()) <= 0 && sgn(b.im().hi()) > 0) q.push_back(1);
  if (sgn(b.re().lo()) < 0 && sgn(b.im().lo()) <= 0) q.push_back(2);
  if (sgn(b.re().hi()) >= 0 && sgn(b.im().lo()) < 0) q.push_back(3);
  return q;
}

bool inChart(Half h, int q) {
  switch (h) {
    case Right: return q == 3 || q == 0;
    case Up: return q == 0 || q == 1;
    case Left: return q == 1 || q == 2;
    case Down: return q == 2 || q == 3;
    default: return false;
  }
}

int lift(Half h, int q) {
  if (h == Right && q == 3) return -1;
  return q;
}

struct Segment {
  ComplexBox from, to, image;
  Half half;
};

// Enclosure of P on the axis-parallel segment [a, b].
ComplexBox segmentImage(const IntervalPoly& p, const ComplexBox& a, const ComplexBox& b, bool horizontal, int bits) {
  ComplexBox m = ComplexBox(RealInterval((a.re().lo() + b.re().lo()) / 2), RealInterval((a.im().lo() + b.im().lo()) / 2));
  Rational r = horizontal ? abs(b.re().lo() - a.re().lo()) / 2 : abs(b.im().lo() - a.im().lo()) / 2;
  std::vector<ComplexBox> t = taylorShift(p, m, bits);
  ComplexBox acc = t[0];
  Rational rk(1);
  for (std::size_t k = 1; k < t.size(); ++k) {
    rk *= r;
    RealInterval tk = (k % 2 == 1) ? RealInterval(-rk, rk) : RealInterval(Rational(0), rk);
    ComplexBox coef = t[k];
    if (!horizontal) {
      // multiply by i^k
      for (std::size_t j = 0; j < k % 4; ++j) coef = ComplexBox(-coef.im(), coef.re());
    }
    acc = acc + tk * coef;
  }
  return acc;
}

ComplexBox point(const Rational& x, const Rational& y) { return ComplexBox(RealInterval(x), RealInterval(y)); }

int defaultBits(const IntervalPoly& p, const ComplexBox& box) {
  long w = sgn(box.width()) == 0 ? 0 : -approxLog2(box.width());
  return static_cast<int>(96 + (p.degree() + 1) * std::max(8L, w + 8));
}

}  // namespace

bool excludesZero(const IntervalPoly& p, const ComplexBox& box, int bits) {
  if (bits == 0) bits = defaultBits(p, box);
  ComplexBox c = centerOf(box);
  Rational hx = box.re().width() / 2, hy = box.im().width() / 2;
  Rational r = sqrtUpper(hx * hx + hy * hy, 24);
  std::vector<ComplexBox> t = taylorShift(p, c, bits);
  Rational s = tailBound(t, r);
  return modulusSq(t[0]).lo() > s * s;
}

std::optional<int> countRootsInBox(const IntervalPoly& p, const ComplexBox& box, long maxSegments) {
  if (sgn(box.re().width()) == 0 || sgn(box.im().width()) == 0) return std::nullopt;
  if (p.degree() == 0) {
    if (p[0].containsZero()) return std::nullopt;
    return 0;
  }
  int bits = defaultBits(p, box) + 32;
  const Rational &x0 = box.re().lo(), &x1 = box.re().hi(), &y0 = box.im().lo(), &y1 = box.im().hi();
  ComplexBox corners[4] = {point(x0, y0), point(x1, y0), point(x1, y1), point(x0, y1)};

  std::vector<Segment> segs;
  long budget = maxSegments;
  bool failed = false;
  auto walk = [&](auto&& self, const ComplexBox& a, const ComplexBox& b, bool horizontal, int depth) -> void {
    if (failed) return;
    ComplexBox img = segmentImage(p, a, b, horizontal, bits);
    Half h = halfPlane(img);
    if (h != None) {
      segs.push_back({a, b, img, h});
      return;
    }
    if (--budget <= 0 || depth > 200) {
      failed = true;
      return;
    }
    ComplexBox m = point((a.re().lo() + b.re().lo()) / 2, (a.im().lo() + b.im().lo()) / 2);
    self(self, a, m, horizontal, depth + 1);
    self(self, m, b, horizontal, depth + 1);
  };
  for (int e = 0; e < 4 && !failed; ++e) walk(walk, corners[e], corners[(e + 1) % 4], e % 2 == 0, 0);
  if (failed) return std::nullopt;

  std::size_t n = segs.size();
  std::vector<int> quad(n);  // quadrant of the value at the start of segment i
  for (std::size_t i = 0; i < n; ++i) {
    const Segment& prev = segs[(i + n - 1) % n];
    const Segment& cur = segs[i];
    ComplexBox e = evalPoly(p, cur.from);
    if (!e.intersects(prev.image) || !e.intersects(cur.image) || !prev.image.intersects(cur.image)) return std::nullopt;
    ComplexBox region(intersect(intersect(e.re(), prev.image.re()), cur.image.re()),
                      intersect(intersect(e.im(), prev.image.im()), cur.image.im()));
    std::vector<int> cand = quadrantsMeeting(region);
    int chosen = -1;
    for (int q : cand) {
      if (inChart(prev.half, q) && inChart(cur.half, q)) {
        if (chosen >= 0 && prev.half != cur.half) return std::nullopt;
        if (chosen < 0) chosen = q;
      }
    }
    if (chosen < 0) return std::nullopt;
    quad[i] = chosen;
  }
  long total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Half h = segs[i].half;
    total += lift(h, quad[(i + 1) % n]) - lift(h, quad[i]);
  }
  if (total % 4 != 0 || total < 0) return std::nullopt;
  return static_cast<int>(total / 4);
}

std::optional<Rational> cauchyBound(const IntervalPoly& p) {
  int n = p.degree();
  if (p[n].containsZero()) return std::nullopt;
  Rational lead = p[n].mig(), best(0);
  for (int i = 0; i < n; ++i) {
    Rational r = p[i].mag() / lead;
    if (r > best) best = r;
  }
  return best + 1;
}

// ---------------------------------------------------------------- Clustering

int Clustering::partner(int j) const {
  if (j < realCount) return j;
  if (j < lowerBegin()) return j + upperCount;
  return j - upperCount;
}

Rational Clustering::maxWidth() const {
  Rational w(0);
  for (const auto& c : clusters)
    if (c.box.width() > w) w = c.box.width();
  return w;
}

RootIsolator::RootIsolator(IntervalPoly p, ClusteringFuel fuel) : p_(std::move(p)), fuel_(fuel) {
  auto b = cauchyBound(p_);
  if (!b || p_.degree() < 1) return;
  long e = approxLog2(*b) + 2;
  radius_ = pow2(std::max(e, 0L));
  valid_ = true;
  levels_.push_back({Cell{0, 0}});
}

int RootIsolator::bits(int level) const { return 96 + (p_.degree() + 1) * (level + 8); }

ComplexBox RootIsolator::cellBox(int level, long x, long y) const {
  Rational s = radius_ * 2 / pow2(level);
  Rational x0 = -radius_ + s * x, y0 = -radius_ + s * y;
  return ComplexBox(RealInterval(x0, x0 + s), RealInterval(y0, y0 + s));
}

const std::vector<RootIsolator::Cell>* RootIsolator::candidates(int level) {
  if (!valid_) return nullptr;
  while (static_cast<int>(levels_.size()) <= level) {
    if (overflow_) return nullptr;
    int next = static_cast<int>(levels_.size());
    std::vector<Cell> out;
    for (const Cell& c : levels_.back()) {
      for (long dx = 0; dx < 2; ++dx)
        for (long dy = 0; dy < 2; ++dy) {
          long x = 2 * c.x + dx, y = 2 * c.y + dy;
          if (!excludesZero(p_, cellBox(next, x, y), bits(next))) out.push_back({x, y});
        }
    }
    if (static_cast<long>(out.size()) > fuel_.maxCells) {
      overflow_ = true;
      return nullptr;
    }
    levels_.push_back(std::move(out));
  }
  return &levels_[static_cast<std::size_t>(level)];
}

std::optional<Clustering> RootIsolator::atLevel(int level) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = built_.find(level);
  if (it != built_.end()) return it->second;
  auto c = build(level);
  built_.emplace(level, c);
  return c;
}

std::optional<Clustering> RootIsolator::withWidth(const Rational& target, int fromLevel) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  for (int j = std::max(1, fromLevel); j <= fuel_.maxLevel; ++j) {
    auto gs = groups(j);
    if (!gs) {
      if (candidates(j) == nullptr) return std::nullopt;
      continue;
    }
    long cellsWide = 0;
    for (const Group& g : *gs) cellsWide = std::max({cellsWide, g.x1 - g.x0 + 2, g.y1 - g.y0 + 2});
    if (radius_ * 2 / pow2(j) * cellsWide > target) continue;
    auto c = atLevel(j);
    if (c && c->maxWidth() <= target) return c;
  }
  return std::nullopt;
}

namespace {

template <class Group>
bool inflatedOverlap(const Group& a, const Group& b) {
  // inflated by half a cell: in half-cell units [2*x0-1, 2*x1+3]
  return 2 * a.x0 - 1 <= 2 * b.x1 + 3 && 2 * b.x0 - 1 <= 2 * a.x1 + 3 && 2 * a.y0 - 1 <= 2 * b.y1 + 3 &&
         2 * b.y0 - 1 <= 2 * a.y1 + 3;
}

std::size_t findRoot(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) i = parent[i] = parent[parent[i]];
  return i;
}

bool isRealBox(const ComplexBox& b) { return b.im().containsZero(); }

}  // namespace

std::optional<std::vector<RootIsolator::Group>> RootIsolator::groups(int level) {
  const std::vector<Cell>* cells = candidates(level);
  if (cells == nullptr || cells->empty()) return std::nullopt;
  std::unordered_map<long long, std::size_t> index;
  auto key = [](long x, long y) { return (static_cast<long long>(x) << 32) ^ static_cast<long long>(y & 0xffffffffL); };
  for (std::size_t i = 0; i < cells->size(); ++i) index[key((*cells)[i].x, (*cells)[i].y)] = i;
  std::vector<std::size_t> parent(cells->size());
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < cells->size(); ++i) {
    for (long dx = -1; dx <= 1; ++dx)
      for (long dy = -1; dy <= 1; ++dy) {
        auto f = index.find(key((*cells)[i].x + dx, (*cells)[i].y + dy));
        if (f != index.end()) parent[findRoot(parent, i)] = findRoot(parent, f->second);
      }
  }
  std::map<std::size_t, Group> byRoot;
  for (std::size_t i = 0; i < cells->size(); ++i) {
    const Cell& c = (*cells)[i];
    auto [it, fresh] = byRoot.try_emplace(findRoot(parent, i), Group{c.x, c.x, c.y, c.y});
    if (!fresh) {
      Group& g = it->second;
      g.x0 = std::min(g.x0, c.x);
      g.x1 = std::max(g.x1, c.x);
      g.y0 = std::min(g.y0, c.y);
      g.y1 = std::max(g.y1, c.y);
    }
  }
  std::vector<Group> gs;
  for (auto& [k, g] : byRoot) gs.push_back(g);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < gs.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < gs.size() && !changed; ++j)
        if (inflatedOverlap(gs[i], gs[j])) {
          gs[i] = {std::min(gs[i].x0, gs[j].x0), std::max(gs[i].x1, gs[j].x1), std::min(gs[i].y0, gs[j].y0),
                   std::max(gs[i].y1, gs[j].y1)};
          gs.erase(gs.begin() + static_cast<long>(j));
          changed = true;
        }
  }
  return gs;
}

std::optional<Clustering> RootIsolator::build(int level) {
  auto grouped = groups(level);
  if (!grouped) return std::nullopt;
  const std::vector<Group>& gs = *grouped;
  Rational s = radius_ * 2 / pow2(level), h = s / 2;
  Clustering out;
  out.delta = s;
  out.level = level;
  std::vector<Cluster> real, upper, lower;
  int total = 0;
  for (const Group& g : gs) {
    ComplexBox b(RealInterval(-radius_ + s * g.x0 - h, -radius_ + s * (g.x1 + 1) + h),
                 RealInterval(-radius_ + s * g.y0 - h, -radius_ + s * (g.y1 + 1) + h));
    auto n = countRootsInBox(p_, b, fuel_.maxSegments);
    if (!n) return std::nullopt;
    if (*n == 0) continue;
    total += *n;
    Cluster c{b, *n};
    if (isRealBox(b))
      real.push_back(c);
    else if (b.im().positive())
      upper.push_back(c);
    else
      lower.push_back(c);
  }
  if (total != p_.degree() || upper.size() != lower.size()) return std::nullopt;
  auto byRe = [](const Cluster& a, const Cluster& b) { return a.box.re().mid() > b.box.re().mid(); };
  std::sort(real.begin(), real.end(), byRe);
  std::sort(upper.begin(), upper.end(), byRe);
  std::vector<Cluster> lowerSorted;
  for (const Cluster& u : upper) {
    int hits = 0;
    for (const Cluster& l : lower)
      if (reflect(u.box).intersects(l.box)) {
        ++hits;
        lowerSorted.push_back(l);
      }
    if (hits != 1) return std::nullopt;
  }
  out.realCount = static_cast<int>(real.size());
  out.upperCount = static_cast<int>(upper.size());
  out.clusters = real;
  out.clusters.insert(out.clusters.end(), upper.begin(), upper.end());
  out.clusters.insert(out.clusters.end(), lowerSorted.begin(), lowerSorted.end());
  if (!clusteringStructureViolations(out).empty()) return std::nullopt;
  return out;
}

std::optional<Clustering> computeClustering(const IntervalPoly& p, const Rational& targetWidth,
                                            const ClusteringFuel& fuel) {
  RootIsolator iso(p, fuel);
  if (!iso.valid()) return std::nullopt;
  return iso.withWidth(targetWidth);
}

std::vector<std::string> clusteringStructureViolations(const Clustering& c) {
  std::vector<std::string> v;
  const auto& cl = c.clusters;
  int s = static_cast<int>(cl.size());
  int a = c.realCount, b = c.lowerBegin();
  if (a < 0 || c.upperCount < 0 || b > s || s - b != c.upperCount) v.push_back("layout: counts do not add up");
  for (int j = 0; j < s; ++j) {
    if (cl[static_cast<std::size_t>(j)].count < 1) v.push_back("box " + std::to_string(j) + " has no root");
    for (int k = j + 1; k < s; ++k)
      if (cl[static_cast<std::size_t>(j)].box.intersects(cl[static_cast<std::size_t>(k)].box))
        v.push_back("boxes " + std::to_string(j) + " and " + std::to_string(k) + " overlap");
  }
  if (!v.empty()) return v;
  for (int j = 0; j < s; ++j) {
    const ComplexBox& bj = cl[static_cast<std::size_t>(j)].box;
    bool real = bj.im().containsZero();
    if (j < a && !real) v.push_back("box " + std::to_string(j) + " listed as real but misses the axis");
    if (j >= a && j < b && !bj.im().positive()) v.push_back("box " + std::to_string(j) + " is not in the upper half plane");
    if (j >= b && !bj.im().negative()) v.push_back("box " + std::to_string(j) + " is not in the lower half plane");
    std::vector<int> hits;
    for (int k = 0; k < s; ++k)
      if (k != j && reflect(bj).intersects(cl[static_cast<std::size_t>(k)].box)) hits.push_back(k);
    if (real && !hits.empty()) v.push_back("reflection of real box " + std::to_string(j) + " meets another box");
    if (!real) {
      if (hits.size() != 1)
        v.push_back("non-real box " + std::to_string(j) + " does not have exactly one mirror partner");
      else if (cl[static_cast<std::size_t>(hits[0])].count != cl[static_cast<std::size_t>(j)].count)
        v.push_back("box " + std::to_string(j) + " and its mirror have different counts");
      else if (j < b && hits[0] != c.partner(j))
        v.push_back("lower boxes are not in the order of their upper partners");
    }
  }
  for (int j = 0; j + 1 < a; ++j)
    if (!(cl[static_cast<std::size_t>(j)].box.re().lo() > cl[static_cast<std::size_t>(j) + 1].box.re().hi()))
      v.push_back("real boxes " + std::to_string(j) + " and " + std::to_string(j + 1) + " out of order");
  for (int j = a; j + 1 < b; ++j)
    if (cl[static_cast<std::size_t>(j)].box.re().mid() < cl[static_cast<std::size_t>(j) + 1].box.re().mid())
      v.push_back("upper boxes " + std::to_string(j) + " and " + std::to_string(j + 1) + " out of order");
  return v;
}

std::vector<std::string> validateClustering(const IntervalPoly& p, const Clustering& c, long maxSegments) {
  std::vector<std::string> v = clusteringStructureViolations(c);
  if (!v.empty()) return v;
  int total = 0;
  for (std::size_t j = 0; j < c.clusters.size(); ++j) {
    auto n = countRootsInBox(p, c.clusters[j].box, maxSegments);
    if (!n)
      v.push_back("could not recount box " + std::to_string(j));
    else if (*n != c.clusters[j].count)
      v.push_back("box " + std::to_string(j) + " holds " + std::to_string(*n) + " roots, not " +
                  std::to_string(c.clusters[j].count));
    else
      total += *n;
  }
  if (v.empty() && total != p.degree()) v.push_back("boxes hold " + std::to_string(total) + " roots, degree is " + std::to_string(p.degree()));
  return v;
}

RealInterval refineRealRoot(const IntervalPoly& p, const RealInterval& bracket, const Rational& target, int maxSteps) {
  auto sign = [&](const Rational& x) { return evalPoly(p, RealInterval(x)).certainSign(); };
  Rational lo = bracket.lo(), hi = bracket.hi();
  int slo = sign(lo), shi = sign(hi);
  if (slo == 0 || shi == 0 || slo == shi) return bracket;
  for (int step = 0; step < maxSteps && hi - lo > target; ++step) {
    Rational w = hi - lo;
    Rational m = lo + w / 2;
    int sm = sign(m);
    if (sm == 0) {
      m = lo + w * 3 / 8;
      sm = sign(m);
    }
    if (sm == 0) {
      m = lo + w * 5 / 8;
      sm = sign(m);
    }
    if (sm == 0) break;
    if (sm == slo)
      lo = m;
    else
      hi = m;
  }
  return RealInterval(lo, hi);
}

ComplexBox refineClusterBox(const IntervalPoly& p, const ComplexBox& box, int count, const Rational& target,
                            int maxLevels, long maxCells) {
  if (box.width() <= target) return box;
  struct C {
    long x, y;
  };
  std::vector<C> cells{{0, 0}};
  ComplexBox best = box;
  const Rational &x0 = box.re().lo(), &y0 = box.im().lo();
  Rational wx = box.re().width(), wy = box.im().width();
  for (int level = 1; level <= maxLevels; ++level) {
    Rational sx = wx / pow2(level), sy = wy / pow2(level);
    std::vector<C> next;
    for (const C& c : cells)
      for (long dx = 0; dx < 2; ++dx)
        for (long dy = 0; dy < 2; ++dy) {
          long x = 2 * c.x + dx, y = 2 * c.y + dy;
          ComplexBox cb(RealInterval(x0 + sx * x, x0 + sx * (x + 1)), RealInterval(y0 + sy * y, y0 + sy * (y + 1)));
          if (!excludesZero(p, cb)) next.push_back({x, y});
        }
    if (next.empty() || static_cast<long>(next.size()) > maxCells) break;
    cells = std::move(next);
    long ax = cells[0].x, bx = ax, ay = cells[0].y, by = ay;
    for (const C& c : cells) {
      ax = std::min(ax, c.x);
      bx = std::max(bx, c.x);
      ay = std::min(ay, c.y);
      by = std::max(by, c.y);
    }
    RealInterval re(x0 + sx * ax - sx / 2, x0 + sx * (bx + 1) + sx / 2);
    RealInterval im(y0 + sy * ay - sy / 2, y0 + sy * (by + 1) + sy / 2);
    ComplexBox nb(intersect(re, box.re()), intersect(im, box.im()));
    if (nb.width() <= target || level == maxLevels) {
      auto n = countRootsInBox(p, nb);
      if (n && *n == count) return nb;
      if (nb.width() <= target) break;
    }
  }
  return best;
}

}  // namespace lrs
