#include "lrs/numeric.hpp"

#include <algorithm>
#include <cctype>

namespace lrs {

namespace {

Integer parseInteger(std::string_view s) {
  if (s.empty()) throw ParseError("empty integer");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw ParseError("bad integer: " + std::string(s));
  for (std::size_t i = start; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw ParseError("bad integer: " + std::string(s));
  std::string t(s[0] == '+' ? s.substr(1) : s);
  return Integer(t, 10);
}

Rational parseDecimal(std::string_view s) {
  std::size_t epos = s.find_first_of("eE");
  long exp10 = 0;
  if (epos != std::string_view::npos) {
    exp10 = parseInteger(s.substr(epos + 1)).get_si();
    s = s.substr(0, epos);
  }
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  std::size_t dot = s.find('.');
  std::string digits(s.substr(0, dot));
  if (dot != std::string_view::npos) {
    std::string_view frac = s.substr(dot + 1);
    digits += frac;
    exp10 -= static_cast<long>(frac.size());
  }
  if (digits.empty()) throw ParseError("bad decimal");
  Rational q(parseInteger(digits));
  Integer ten(10), p;
  mpz_pow_ui(p.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  if (exp10 >= 0)
    q *= p;
  else
    q /= p;
  return neg ? Rational(-q) : q;
}

long bitlen(const Integer& z) { return sgn(z) == 0 ? 0 : static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 2)); }

}  // namespace

Rational parseRational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty rational");
  std::size_t slash = text.find('/');
  if (slash != std::string_view::npos) {
    Integer num = parseInteger(text.substr(0, slash));
    Integer den = parseInteger(text.substr(slash + 1));
    if (sgn(den) == 0) throw ParseError("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  if (text.find_first_of(".eE") != std::string_view::npos) return parseDecimal(text);
  return Rational(parseInteger(text));
}

std::string toString(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational pow2(long e) {
  Integer one(1), p;
  mpz_mul_2exp(p.get_mpz_t(), one.get_mpz_t(), static_cast<mp_bitcnt_t>(e < 0 ? -e : e));
  if (e >= 0) return Rational(p);
  Rational r(one, p);
  return r;
}

Rational floorToGrid(const Rational& x, long g) {
  Integer num = x.get_num(), den = x.get_den(), q;
  if (g >= 0) {
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(g));
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_mul_2exp(q.get_mpz_t(), q.get_mpz_t(), static_cast<mp_bitcnt_t>(g));
    return Rational(q);
  }
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(-g));
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  Rational r(q);
  mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-g));
  return r;
}

Rational ceilToGrid(const Rational& x, long g) {
  Rational neg = -x;
  return -floorToGrid(neg, g);
}

long approxLog2(const Rational& x) { return bitlen(x.get_num()) - bitlen(x.get_den()); }

namespace {

// x * 4^e as a rational, e may be negative.
Rational times4(const Rational& x, long e) {
  Rational r = x;
  if (e >= 0)
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(2 * e));
  else
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-2 * e));
  return r;
}

Rational over2(const Integer& s, long e) {
  Rational r(s);
  if (e >= 0)
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  else
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  return r;
}

}  // namespace

Rational sqrtLower(const Rational& x, int bits) {
  if (sgn(x) <= 0) return Rational(0);
  long e = bits - approxLog2(x) / 2;
  Rational y = times4(x, e);
  Integer t, s;
  mpz_fdiv_q(t.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
  mpz_sqrt(s.get_mpz_t(), t.get_mpz_t());
  return over2(s, e);
}

Rational sqrtUpper(const Rational& x, int bits) {
  if (sgn(x) <= 0) return Rational(0);
  long e = bits - approxLog2(x) / 2;
  Rational y = times4(x, e);
  Integer t, s;
  mpz_cdiv_q(t.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
  mpz_sqrt(s.get_mpz_t(), t.get_mpz_t());
  if (s * s < t) s += 1;
  return over2(s, e);
}

// ---------------------------------------------------------------- RealInterval

RealInterval::RealInterval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (hi_ < lo_) throw std::invalid_argument("interval with lo > hi");
}

Rational RealInterval::mid() const {
  Rational m = lo_ + hi_;
  mpq_div_2exp(m.get_mpq_t(), m.get_mpq_t(), 1);
  return m;
}

Rational RealInterval::mag() const {
  Rational a = abs(lo_), b = abs(hi_);
  return a < b ? b : a;
}

Rational RealInterval::mig() const {
  if (containsZero()) return Rational(0);
  return positive() ? lo_ : Rational(-hi_);
}

RealInterval operator+(const RealInterval& a, const RealInterval& b) {
  return RealInterval(a.lo() + b.lo(), a.hi() + b.hi());
}

RealInterval operator-(const RealInterval& a, const RealInterval& b) {
  return RealInterval(a.lo() - b.hi(), a.hi() - b.lo());
}

RealInterval operator-(const RealInterval& a) { return RealInterval(-a.hi(), -a.lo()); }

RealInterval operator*(const RealInterval& a, const RealInterval& b) {
  if (a.isPoint()) {
    if (sgn(a.lo()) >= 0) return RealInterval(a.lo() * b.lo(), a.lo() * b.hi());
    return RealInterval(a.lo() * b.hi(), a.lo() * b.lo());
  }
  if (b.isPoint()) return b * a;
  int al = sgn(a.lo()), ah = sgn(a.hi()), bl = sgn(b.lo()), bh = sgn(b.hi());
  if (al >= 0) {
    if (bl >= 0) return RealInterval(a.lo() * b.lo(), a.hi() * b.hi());
    if (bh <= 0) return RealInterval(a.hi() * b.lo(), a.lo() * b.hi());
    return RealInterval(a.hi() * b.lo(), a.hi() * b.hi());
  }
  if (ah <= 0) {
    if (bl >= 0) return RealInterval(a.lo() * b.hi(), a.hi() * b.lo());
    if (bh <= 0) return RealInterval(a.hi() * b.hi(), a.lo() * b.lo());
    return RealInterval(a.lo() * b.hi(), a.lo() * b.lo());
  }
  if (bl >= 0) return RealInterval(a.lo() * b.hi(), a.hi() * b.hi());
  if (bh <= 0) return RealInterval(a.hi() * b.lo(), a.lo() * b.lo());
  Rational p1 = a.lo() * b.hi(), p2 = a.hi() * b.lo();
  Rational q1 = a.lo() * b.lo(), q2 = a.hi() * b.hi();
  return RealInterval(p1 < p2 ? p1 : p2, q1 < q2 ? q2 : q1);
}

RealInterval operator/(const RealInterval& a, const RealInterval& b) {
  if (b.containsZero()) throw DivisorStraddlesZero();
  Rational l = 1 / b.hi(), h = 1 / b.lo();
  return a * RealInterval(l, h);
}

RealInterval abs(const RealInterval& a) {
  if (sgn(a.lo()) >= 0) return a;
  if (sgn(a.hi()) <= 0) return -a;
  return RealInterval(Rational(0), a.mag());
}

RealInterval sq(const RealInterval& a) {
  RealInterval m = abs(a);
  return RealInterval(m.lo() * m.lo(), m.hi() * m.hi());
}

RealInterval pow(const RealInterval& a, unsigned e) {
  if (e == 0) return RealInterval(1);
  if (e % 2 == 0) {
    RealInterval m = abs(a);
    Rational lp(1), hp(1);
    for (unsigned i = 0; i < e; ++i) {
      lp *= m.lo();
      hp *= m.hi();
    }
    return RealInterval(lp, hp);
  }
  Rational lp(1), hp(1);
  for (unsigned i = 0; i < e; ++i) {
    lp *= a.lo();
    hp *= a.hi();
  }
  return RealInterval(lp, hp);
}

RealInterval hull(const RealInterval& a, const RealInterval& b) {
  return RealInterval(a.lo() < b.lo() ? a.lo() : b.lo(), a.hi() < b.hi() ? b.hi() : a.hi());
}

RealInterval intersect(const RealInterval& a, const RealInterval& b) {
  return RealInterval(a.lo() < b.lo() ? b.lo() : a.lo(), a.hi() < b.hi() ? a.hi() : b.hi());
}

RealInterval scale2(const RealInterval& a, long e) {
  Rational l = a.lo(), h = a.hi();
  if (e >= 0) {
    mpq_mul_2exp(l.get_mpq_t(), l.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    mpq_mul_2exp(h.get_mpq_t(), h.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(l.get_mpq_t(), l.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    mpq_div_2exp(h.get_mpq_t(), h.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return RealInterval(l, h);
}

RealInterval tighten(const RealInterval& a, long p) {
  return RealInterval(floorToGrid(a.lo(), -p), ceilToGrid(a.hi(), -p));
}

namespace {

bool isShort(const Rational& x, int bits) {
  return bitlen(x.get_num()) + bitlen(x.get_den()) <= 2L * bits + 16;
}

}  // namespace

RealInterval roundRelative(const RealInterval& a, int bits) {
  Rational lo = a.lo(), hi = a.hi();
  if (sgn(lo) != 0 && !isShort(lo, bits)) lo = floorToGrid(lo, approxLog2(lo) - bits);
  if (sgn(hi) != 0 && !isShort(hi, bits)) hi = ceilToGrid(hi, approxLog2(hi) - bits);
  return RealInterval(lo, hi);
}

std::string toString(const RealInterval& a) { return "[" + toString(a.lo()) + ", " + toString(a.hi()) + "]"; }

// ---------------------------------------------------------------- ComplexBox

Rational ComplexBox::width() const {
  Rational a = re_.width(), b = im_.width();
  return a < b ? b : a;
}

ComplexBox operator+(const ComplexBox& a, const ComplexBox& b) { return {a.re() + b.re(), a.im() + b.im()}; }
ComplexBox operator-(const ComplexBox& a, const ComplexBox& b) { return {a.re() - b.re(), a.im() - b.im()}; }
ComplexBox operator-(const ComplexBox& a) { return {-a.re(), -a.im()}; }

ComplexBox operator*(const ComplexBox& a, const ComplexBox& b) {
  bool ar = a.im().isPoint() && sgn(a.im().lo()) == 0;
  bool br = b.im().isPoint() && sgn(b.im().lo()) == 0;
  if (ar && br) return {a.re() * b.re(), RealInterval(0)};
  if (ar) return a.re() * b;
  if (br) return b.re() * a;
  return {a.re() * b.re() - a.im() * b.im(), a.re() * b.im() + a.im() * b.re()};
}

ComplexBox operator*(const RealInterval& a, const ComplexBox& b) { return {a * b.re(), a * b.im()}; }

ComplexBox conj(const ComplexBox& a) { return {a.re(), -a.im()}; }

RealInterval modulusSq(const ComplexBox& a) { return sq(a.re()) + sq(a.im()); }

ComplexBox reciprocal(const ComplexBox& a) {
  if (a.isReal()) return ComplexBox(RealInterval(1) / a.re());
  RealInterval m = modulusSq(a);
  if (m.containsZero()) throw DivisorStraddlesZero();
  RealInterval inv = RealInterval(1) / m;
  return {a.re() * inv, -(a.im() * inv)};
}

ComplexBox operator/(const ComplexBox& a, const ComplexBox& b) { return a * reciprocal(b); }

ComplexBox pow(const ComplexBox& a, unsigned e) {
  if (a.isReal()) return ComplexBox(pow(a.re(), e));
  ComplexBox result(RealInterval(1)), base = a;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

ComplexBox hull(const ComplexBox& a, const ComplexBox& b) { return {hull(a.re(), b.re()), hull(a.im(), b.im())}; }
ComplexBox tighten(const ComplexBox& a, long p) { return {tighten(a.re(), p), tighten(a.im(), p)}; }
ComplexBox roundRelative(const ComplexBox& a, int bits) {
  return {roundRelative(a.re(), bits), roundRelative(a.im(), bits)};
}

}  // namespace lrs
