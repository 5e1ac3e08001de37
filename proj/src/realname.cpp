#include "lrs/realname.hpp"

#include <functional>

namespace lrs {

namespace detail {

Enclosure NameNode::query(long p) {
  if (auto q = exact()) return {RealInterval(*q), false};
  std::lock_guard<std::mutex> lock(mu_);
  auto hit = memo_.find(p);
  if (hit != memo_.end()) return hit->second;

  // Compute one bit finer than asked so that a hull with an already cached
  // finer answer still fits into 2^-p.
  Enclosure fresh = compute(p + 1);
  RealInterval v = fresh.value;
  auto finer = memo_.upper_bound(p);
  if (finer != memo_.end()) v = hull(v, finer->second.value);
  auto coarser = memo_.lower_bound(p);
  if (coarser != memo_.begin()) {
    --coarser;
    v = intersect(v, coarser->second.value);
  }
  Enclosure out{v, fresh.exhausted || v.width() > pow2(-p)};
  memo_.emplace(p, out);
  return out;
}

namespace {

class RationalNode final : public NameNode {
 public:
  explicit RationalNode(Rational q) : q_(std::move(q)) {}
  std::optional<Rational> exact() const override { return q_; }

 protected:
  Enclosure compute(long) override { return {RealInterval(q_), false}; }

 private:
  Rational q_;
};

class IntervalNode final : public NameNode {
 public:
  explicit IntervalNode(RealInterval r) : r_(std::move(r)) {}
  std::optional<RealInterval> fixed() const override { return r_; }

 protected:
  Enclosure compute(long p) override { return {r_, r_.width() > pow2(-p)}; }

 private:
  RealInterval r_;
};

class PiNode final : public NameNode {
 public:
  explicit PiNode(Rational q) : q_(std::move(q)) {}

 protected:
  Enclosure compute(long p) override {
    long extra = sgn(q_) == 0 ? 0 : std::max(0L, approxLog2(q_) + 2);
    RealInterval v = RealInterval(q_) * piEnclosure(p + extra + 2);
    return {tighten(v, p + 2), false};
  }

 private:
  Rational q_;
};

// Combines child enclosures; retried with more input precision until the
// result is narrow enough or a child cannot be refined any more.
class DerivedNode final : public NameNode {
 public:
  using Combine = std::function<RealInterval(long q)>;
  using Exhausted = std::function<bool(long q)>;
  DerivedNode(Combine f, Exhausted e) : f_(std::move(f)), e_(std::move(e)) {}

 protected:
  Enclosure compute(long p) override {
    Rational target = pow2(-(p + 1));
    long q = p + 4;
    RealInterval v;
    for (int attempt = 0; attempt < 24; ++attempt) {
      v = f_(q);
      if (v.width() <= target) return {tighten(v, p + 2), false};
      if (e_(q)) return {v, true};
      q += std::max(8L, q - p);
    }
    return {v, true};
  }

 private:
  Combine f_;
  Exhausted e_;
};

}  // namespace

}  // namespace detail

RealName::RealName() : RealName(std::make_shared<detail::RationalNode>(Rational(0)), NameKind::Rational) {}

RealName RealName::rational(const Rational& q) {
  return RealName(std::make_shared<detail::RationalNode>(q), NameKind::Rational);
}

RealName RealName::interval(const RealInterval& range) {
  if (range.isPoint()) return rational(range.lo());
  return RealName(std::make_shared<detail::IntervalNode>(range), NameKind::Interval);
}

RealName RealName::piMultiple(const Rational& q) {
  RealName r(std::make_shared<detail::PiNode>(q), NameKind::PiMultiple);
  r.piFactor_ = q;
  return r;
}

Enclosure RealName::query(long p) const { return node_->query(p); }

RealName RealName::derived(std::function<RealInterval(long)> combine, std::function<bool(long)> exhausted) {
  return RealName(std::make_shared<detail::DerivedNode>(std::move(combine), std::move(exhausted)), NameKind::Derived);
}

namespace {

template <class Op>
RealName binary(const RealName& a, const RealName& b, Op op) {
  auto x = a.exactValue(), y = b.exactValue();
  if (x && y) return RealName::rational(op(RealInterval(*x), RealInterval(*y)).lo());
  return RealName::derived([a, b, op](long q) { return op(a.at(q), b.at(q)); },
                           [a, b](long q) { return a.query(q).exhausted || b.query(q).exhausted; });
}

}  // namespace

RealName operator+(const RealName& a, const RealName& b) {
  return binary(a, b, [](const RealInterval& x, const RealInterval& y) { return x + y; });
}

RealName operator-(const RealName& a, const RealName& b) {
  return binary(a, b, [](const RealInterval& x, const RealInterval& y) { return x - y; });
}

RealName operator*(const RealName& a, const RealName& b) {
  return binary(a, b, [](const RealInterval& x, const RealInterval& y) { return x * y; });
}

RealName operator-(const RealName& a) { return RealName() - a; }

RealName RealName::quotient(const RealName& a, const RealName& b, long witnessPrecision) {
  if (b.at(witnessPrecision).containsZero()) throw DivisorStraddlesZero();
  auto x = a.exactValue(), y = b.exactValue();
  if (x && y) return rational(*x / *y);
  return derived(
      [a, b, witnessPrecision](long q) {
        RealInterval d = b.at(std::max(q, witnessPrecision));
        return a.at(q) / d;
      },
      [a, b](long q) { return a.query(q).exhausted || b.query(q).exhausted; });
}

RealInterval piEnclosure(long p) {
  // pi = 16 atan(1/5) - 4 atan(1/239), each series alternating.
  auto atanInv = [](long x, long bits) {
    Rational sum(0), xsq(x * x), power(1, x);  // 1/x^(2j+1)
    Rational tol = pow2(-bits);
    for (long j = 0;; ++j) {
      Rational term = power / (2 * j + 1);
      if (term <= tol) {
        // Remainder has the sign of this term and is bounded by it.
        return j % 2 == 0 ? RealInterval(sum, sum + term) : RealInterval(sum - term, sum);
      }
      sum += (j % 2 == 0) ? term : Rational(-term);
      power /= xsq;
    }
  };
  RealInterval v = RealInterval(16) * atanInv(5, p + 7) - RealInterval(4) * atanInv(239, p + 5);
  return tighten(v, p + 2);
}

Ordering3 semiCompare(const RealName& a, const RealName& b, long p) {
  RealInterval x = a.at(p), y = b.at(p);
  if (x.hi() < y.lo()) return Ordering3::Less;
  if (y.hi() < x.lo()) return Ordering3::Greater;
  return Ordering3::Unknown;
}

std::string toString(Ordering3 o) {
  switch (o) {
    case Ordering3::Less: return "Less";
    case Ordering3::Greater: return "Greater";
    default: return "Unknown";
  }
}

}  // namespace lrs
