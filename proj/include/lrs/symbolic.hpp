#pragma once

// Sparse multivariate polynomials with rational coefficients, used for the
// constraint systems over root and initial-value variables.

#include <lrs/numeric.hpp>

#include <map>
#include <string>
#include <vector>

namespace lrs {

// Exponent vector; trailing zeros are trimmed so that equal monomials compare
// equal regardless of how many variables were in scope.
using Monomial = std::vector<unsigned>;

class SymPoly {
 public:
  SymPoly() = default;
  SymPoly(const Rational& c);  // NOLINT
  SymPoly(long c) : SymPoly(Rational(c)) {}  // NOLINT
  static SymPoly var(std::size_t index);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  // Largest variable index appearing plus one.
  std::size_t arity() const;
  unsigned degreeIn(std::size_t v) const;
  unsigned totalDegree() const;

  SymPoly& operator+=(const SymPoly& o);
  SymPoly& operator-=(const SymPoly& o);
  friend SymPoly operator+(SymPoly a, const SymPoly& b) { return a += b; }
  friend SymPoly operator-(SymPoly a, const SymPoly& b) { return a -= b; }
  friend SymPoly operator*(const SymPoly& a, const SymPoly& b);
  friend SymPoly operator-(const SymPoly& a);
  friend bool operator==(const SymPoly& a, const SymPoly& b) { return a.terms_ == b.terms_; }

  SymPoly pow(unsigned e) const;
  // Exact division by a variable; every term must contain it.
  SymPoly divideByVar(std::size_t v) const;
  // Replace variable v by a polynomial.
  SymPoly substitute(std::size_t v, const SymPoly& value) const;

  RealInterval eval(const std::vector<RealInterval>& box) const;
  Rational evalExact(const std::vector<Rational>& point) const;

  std::string toString(const std::vector<std::string>& names) const;

 private:
  void addTerm(Monomial m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

// re + i im with real-coefficient parts.
struct ComplexSymPoly {
  SymPoly re, im;
  friend ComplexSymPoly operator+(const ComplexSymPoly& a, const ComplexSymPoly& b) { return {a.re + b.re, a.im + b.im}; }
  friend ComplexSymPoly operator-(const ComplexSymPoly& a, const ComplexSymPoly& b) { return {a.re - b.re, a.im - b.im}; }
  friend ComplexSymPoly operator*(const ComplexSymPoly& a, const ComplexSymPoly& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
};

inline ComplexSymPoly conj(const ComplexSymPoly& a) { return {a.re, -a.im}; }

enum class Relation { Eq, Gt, Ge };  // poly = 0, poly > 0, poly >= 0

struct Constraint {
  SymPoly poly;
  Relation rel = Relation::Eq;
};

std::string toString(Relation r);

// Certain truth value of a constraint on a box: +1 holds everywhere, -1 fails
// everywhere, 0 undecided.
int decide(const Constraint& c, const std::vector<RealInterval>& box);

}  // namespace lrs
