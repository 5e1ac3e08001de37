#pragma once

// Exact brute-force oracle for tests. Depends on GMP only and shares no code
// with the library under test.
//
// Roots of rational polynomials of the shape (linear factors) x (at most one
// irreducible quadratic) are represented exactly in Q(sqrt D). Everything
// else is out of scope and reported as "not solvable".

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Z = mpz_class;

struct ExactInstance {
  std::vector<Q> coeffs, inits;
  int order() const { return static_cast<int>(coeffs.size()); }
};

// u_1..u_K.
std::vector<Q> exactTerms(const ExactInstance& e, long K);

// a + b sqrt(d) with d >= 0.
struct QuadReal {
  Q a, b, d;
  QuadReal() = default;
  QuadReal(Q a_) : a(std::move(a_)), b(0), d(0) {}  // NOLINT
  QuadReal(Q a_, Q b_, Q d_) : a(std::move(a_)), b(std::move(b_)), d(std::move(d_)) {}
};
int sign(const QuadReal& x);
int compare(const QuadReal& x, const Q& q);  // sign(x - q)
int compare(const QuadReal& x, const QuadReal& y);  // same d, or either b zero
QuadReal operator-(const QuadReal& x, const QuadReal& y);
// Rational lo <= x <= hi with hi - lo <= 2^-bits.
std::pair<Q, Q> enclose(const QuadReal& x, unsigned bits);

// Element a + b sqrt(D) of Q(sqrt D); D is a non-square rational (D < 0 gives
// complex numbers). D = 0 is used for plain rationals.
struct QF {
  Q a, b, D;
  QF() = default;
  QF(Q a_) : a(std::move(a_)), b(0), D(0) {}  // NOLINT
  QF(Q a_, Q b_, Q D_) : a(std::move(a_)), b(std::move(b_)), D(std::move(D_)) {}
  bool isZero() const { return sgn(a) == 0 && sgn(b) == 0; }
  bool isReal() const { return sgn(b) == 0 || sgn(D) >= 0; }
  QF conj() const { return {a, -b, D}; }
  // x * conj(x); the squared modulus when D < 0.
  Q norm() const { return a * a - b * b * D; }
  QuadReal re() const;  // real part
  QuadReal im() const;  // imaginary part
};
QF operator+(const QF& x, const QF& y);
QF operator-(const QF& x, const QF& y);
QF operator-(const QF& x);
QF operator*(const QF& x, const QF& y);
QF operator/(const QF& x, const QF& y);
bool operator==(const QF& x, const QF& y);
QF pow(QF x, long e);

struct ExactRoot {
  QF value;
  int multiplicity = 1;
};

struct SingularSystem : std::runtime_error {
  SingularSystem() : std::runtime_error("singular interpolation system") {}
};

// coefficient vectors a[j][l] with u_k = sum_j sum_l a[j][l] k^l root_j^k for
// k = 1..n, n the total multiplicity.
std::vector<std::vector<QF>> exactInterpolate(const std::vector<ExactRoot>& roots, const std::vector<Q>& inits);

// Monic polynomial x^n - c_1 x^{n-1} - ... - c_n, coefficients low to high.
std::vector<Q> charPoly(const ExactInstance& e);
// Product of the given polynomials (low to high).
std::vector<Q> multiply(const std::vector<Q>& p, const std::vector<Q>& q);
// Roots with multiplicity when the polynomial splits into linear factors and
// at most one irreducible quadratic over Q.
std::optional<std::vector<ExactRoot>> exactRoots(const std::vector<Q>& polyLowToHigh);

enum class Truth { True, False, Unknown };
std::string toString(Truth t);

// Whether u_k >= 0 for all large k, from the exact closed form. Unknown when
// the roots are not exactly solvable or the dominant part is degenerate.
Truth ultimatelyNonnegative(const ExactInstance& e);

// Clustering data in plain rationals, validated against exactly known roots.
struct OBox {
  Q reLo, reHi, imLo, imHi;
  int count = 0;
};
struct OClustering {
  std::vector<OBox> boxes;
  int realCount = 0, upperCount = 0;
};
struct KnownRoot {
  QuadReal re, im;
  int multiplicity = 1;
};
// One message per violated condition; empty when all seven hold.
std::vector<std::string> validateClustering(const OClustering& c, const std::vector<KnownRoot>& roots);

// Roots of a monic factor x - r or x^2 + p x + q, with the factor itself.
struct Factor {
  std::vector<Q> poly;
  std::vector<KnownRoot> roots;
};
Factor linearFactor(const Q& r);
// x^2 - 2 s x + (s^2 - t): roots s +- sqrt(t) (t > 0) or s +- i sqrt(-t).
Factor quadraticFactor(const Q& s, const Q& t);

// Number of root configurations of a cluster with `count` roots, counted by
// direct recursion over the first root's multiplicity.
long configurationCount(int count, bool realCluster);

// Reference values of the golden ratio and 1/sqrt 5.
QuadReal goldenRatio();
QuadReal invSqrt5();

}  // namespace oracle
