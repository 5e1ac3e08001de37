#pragma once

// Exact rational interval and complex-box arithmetic.
//
// Every operation returns an interval that contains the exact result set.
// Endpoints are GMP rationals, so there is no floating point anywhere in
// here; precision control is done with explicit outward dyadic rounding.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace lrs {

using Rational = mpq_class;
using Integer = mpz_class;

struct DivisorStraddlesZero : std::domain_error {
  DivisorStraddlesZero() : std::domain_error("divisor interval contains zero") {}
};

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Accepts "a/b", integers and plain decimals such as "-0.125" or "1e-3".
Rational parseRational(std::string_view text);
// Always "num/den" with den > 0 (den may be 1).
std::string toString(const Rational& q);

Rational pow2(long e);
// floor / ceil of x on the grid 2^g * Z.
Rational floorToGrid(const Rational& x, long g);
Rational ceilToGrid(const Rational& x, long g);
// floor(log2|x|) up to one unit; x != 0.
long approxLog2(const Rational& x);
// Rational bounds for sqrt(x), x >= 0, with roughly `bits` relative bits.
Rational sqrtLower(const Rational& x, int bits = 64);
Rational sqrtUpper(const Rational& x, int bits = 64);

class RealInterval {
 public:
  RealInterval() = default;
  RealInterval(const Rational& point) : lo_(point), hi_(point) {}  // NOLINT
  RealInterval(long point) : lo_(point), hi_(point) {}             // NOLINT
  RealInterval(Rational lo, Rational hi);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational mid() const;
  Rational mag() const;     // max |x|
  Rational mig() const;     // min |x|

  bool isPoint() const { return lo_ == hi_; }
  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const RealInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool intersects(const RealInterval& o) const { return !(hi_ < o.lo_ || o.hi_ < lo_); }
  bool containsZero() const { return sgn(lo_) <= 0 && sgn(hi_) >= 0; }
  bool positive() const { return sgn(lo_) > 0; }
  bool negative() const { return sgn(hi_) < 0; }
  // +1 / -1 when the sign is certain, 0 otherwise (including the exact point 0).
  int certainSign() const { return positive() ? 1 : (negative() ? -1 : 0); }

  friend bool operator==(const RealInterval& a, const RealInterval& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  Rational lo_{0}, hi_{0};
};

RealInterval operator+(const RealInterval& a, const RealInterval& b);
RealInterval operator-(const RealInterval& a, const RealInterval& b);
RealInterval operator*(const RealInterval& a, const RealInterval& b);
RealInterval operator-(const RealInterval& a);
RealInterval operator/(const RealInterval& a, const RealInterval& b);  // may throw
RealInterval abs(const RealInterval& a);
RealInterval sq(const RealInterval& a);
RealInterval pow(const RealInterval& a, unsigned e);
RealInterval hull(const RealInterval& a, const RealInterval& b);
// Caller guarantees the intervals intersect.
RealInterval intersect(const RealInterval& a, const RealInterval& b);
RealInterval scale2(const RealInterval& a, long e);  // a * 2^e

// Outward rounding of the endpoints to the grid 2^-p.
RealInterval tighten(const RealInterval& a, long p);
// Outward rounding keeping about `bits` significant bits per endpoint.
// Endpoints that are already short are left alone.
RealInterval roundRelative(const RealInterval& a, int bits);

std::string toString(const RealInterval& a);

class ComplexBox {
 public:
  ComplexBox() = default;
  ComplexBox(RealInterval re, RealInterval im = RealInterval(0)) : re_(std::move(re)), im_(std::move(im)) {}
  ComplexBox(const Rational& re) : re_(re), im_(0) {}  // NOLINT

  const RealInterval& re() const { return re_; }
  const RealInterval& im() const { return im_; }
  RealInterval& re() { return re_; }
  RealInterval& im() { return im_; }

  bool containsZero() const { return re_.containsZero() && im_.containsZero(); }
  bool contains(const ComplexBox& o) const { return re_.contains(o.re_) && im_.contains(o.im_); }
  bool intersects(const ComplexBox& o) const { return re_.intersects(o.re_) && im_.intersects(o.im_); }
  Rational width() const;  // max of the two side lengths
  bool isReal() const { return im_.isPoint() && sgn(im_.lo()) == 0; }

  friend bool operator==(const ComplexBox& a, const ComplexBox& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

 private:
  RealInterval re_, im_;
};

ComplexBox operator+(const ComplexBox& a, const ComplexBox& b);
ComplexBox operator-(const ComplexBox& a, const ComplexBox& b);
ComplexBox operator*(const ComplexBox& a, const ComplexBox& b);
ComplexBox operator*(const RealInterval& a, const ComplexBox& b);
ComplexBox operator-(const ComplexBox& a);
ComplexBox operator/(const ComplexBox& a, const ComplexBox& b);  // throws if b may be 0
ComplexBox conj(const ComplexBox& a);
RealInterval modulusSq(const ComplexBox& a);
ComplexBox reciprocal(const ComplexBox& a);
ComplexBox pow(const ComplexBox& a, unsigned e);
ComplexBox hull(const ComplexBox& a, const ComplexBox& b);
ComplexBox tighten(const ComplexBox& a, long p);
ComplexBox roundRelative(const ComplexBox& a, int bits);
// Interval reflection of a box in the real axis.
inline ComplexBox reflect(const ComplexBox& a) { return conj(a); }

}  // namespace lrs
