#include "lrs/symbolic.hpp"

#include <algorithm>
#include <stdexcept>

namespace lrs {

namespace {

void trim(Monomial& m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
}

Monomial mulMono(const Monomial& a, const Monomial& b) {
  Monomial m(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) m[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) m[i] += b[i];
  return m;
}

}  // namespace

SymPoly::SymPoly(const Rational& c) {
  if (sgn(c) != 0) terms_.emplace(Monomial{}, c);
}

SymPoly SymPoly::var(std::size_t index) {
  SymPoly p;
  Monomial m(index + 1, 0);
  m[index] = 1;
  p.terms_.emplace(std::move(m), Rational(1));
  return p;
}

void SymPoly::addTerm(Monomial m, const Rational& c) {
  if (sgn(c) == 0) return;
  trim(m);
  auto [it, fresh] = terms_.try_emplace(std::move(m), c);
  if (!fresh) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

std::size_t SymPoly::arity() const {
  std::size_t a = 0;
  for (const auto& [m, c] : terms_) a = std::max(a, m.size());
  return a;
}

unsigned SymPoly::degreeIn(std::size_t v) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_)
    if (v < m.size()) d = std::max(d, m[v]);
  return d;
}

unsigned SymPoly::totalDegree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) {
    unsigned s = 0;
    for (unsigned e : m) s += e;
    d = std::max(d, s);
  }
  return d;
}

SymPoly& SymPoly::operator+=(const SymPoly& o) {
  for (const auto& [m, c] : o.terms_) addTerm(m, c);
  return *this;
}

SymPoly& SymPoly::operator-=(const SymPoly& o) {
  for (const auto& [m, c] : o.terms_) addTerm(m, -c);
  return *this;
}

SymPoly operator*(const SymPoly& a, const SymPoly& b) {
  SymPoly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.addTerm(mulMono(ma, mb), ca * cb);
  return r;
}

SymPoly operator-(const SymPoly& a) {
  SymPoly r;
  for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
  return r;
}

SymPoly SymPoly::pow(unsigned e) const {
  SymPoly result(Rational(1)), base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

SymPoly SymPoly::divideByVar(std::size_t v) const {
  SymPoly r;
  for (const auto& [m, c] : terms_) {
    if (v >= m.size() || m[v] == 0) throw std::invalid_argument("polynomial is not divisible by the variable");
    Monomial d = m;
    d[v] -= 1;
    r.addTerm(std::move(d), c);
  }
  return r;
}

SymPoly SymPoly::substitute(std::size_t v, const SymPoly& value) const {
  SymPoly r;
  std::vector<SymPoly> powers{SymPoly(Rational(1))};
  for (const auto& [m, c] : terms_) {
    unsigned e = v < m.size() ? m[v] : 0;
    while (powers.size() <= e) powers.push_back(powers.back() * value);
    Monomial rest = m;
    if (v < rest.size()) rest[v] = 0;
    SymPoly t;
    t.addTerm(rest, c);
    r += t * powers[e];
  }
  return r;
}

RealInterval SymPoly::eval(const std::vector<RealInterval>& box) const {
  std::vector<std::vector<RealInterval>> powers(box.size());
  RealInterval acc(0);
  for (const auto& [m, c] : terms_) {
    RealInterval t(c);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (i >= box.size()) throw std::out_of_range("box lacks a variable of the polynomial");
      auto& pw = powers[i];
      if (pw.empty()) pw.emplace_back(1);
      while (pw.size() <= m[i]) pw.push_back(lrs::pow(box[i], static_cast<unsigned>(pw.size())));
      t = t * pw[m[i]];
    }
    acc = acc + t;
  }
  return acc;
}

Rational SymPoly::evalExact(const std::vector<Rational>& point) const {
  Rational acc(0);
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (unsigned e = 0; e < m[i]; ++e) t *= point.at(i);
    acc += t;
  }
  return acc;
}

std::string SymPoly::toString(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += lrs::toString(c);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0) s += "*" + (i < names.size() ? names[i] : "v" + std::to_string(i)) + (m[i] > 1 ? "^" + std::to_string(m[i]) : "");
  }
  return s;
}

std::string toString(Relation r) {
  switch (r) {
    case Relation::Eq: return "=";
    case Relation::Gt: return ">";
    default: return ">=";
  }
}

int decide(const Constraint& c, const std::vector<RealInterval>& box) {
  RealInterval v = c.poly.eval(box);
  switch (c.rel) {
    case Relation::Eq:
      if (!v.containsZero()) return -1;
      return v.isPoint() ? 1 : 0;
    case Relation::Gt:
      if (v.positive()) return 1;
      return sgn(v.hi()) <= 0 ? -1 : 0;
    default:
      if (sgn(v.lo()) >= 0) return 1;
      return v.negative() ? -1 : 0;
  }
}

}  // namespace lrs
