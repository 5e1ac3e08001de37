#include "lrs/linrec.hpp"

#include <algorithm>
#include <stdexcept>

namespace lrs {

LinRec::LinRec(std::vector<RealName> coeffs, std::vector<RealName> inits)
    : coeffs_(std::move(coeffs)), inits_(std::move(inits)) {
  if (coeffs_.empty()) throw std::invalid_argument("recurrence order must be at least 1");
  if (coeffs_.size() != inits_.size()) throw std::invalid_argument("need exactly one initial value per coefficient");
}

LinRec LinRec::fromRationals(const std::vector<Rational>& coeffs, const std::vector<Rational>& inits) {
  std::vector<RealName> c, u;
  for (const auto& q : coeffs) c.push_back(RealName::rational(q));
  for (const auto& q : inits) u.push_back(RealName::rational(q));
  return LinRec(std::move(c), std::move(u));
}

bool LinRec::isExact() const {
  auto ex = [](const RealName& n) { return n.exactValue().has_value(); };
  return std::all_of(coeffs_.begin(), coeffs_.end(), ex) && std::all_of(inits_.begin(), inits_.end(), ex);
}

IntervalPoly charPoly(const LinRec& r, long p) {
  int n = r.order();
  std::vector<RealInterval> c(static_cast<std::size_t>(n) + 1);
  c[static_cast<std::size_t>(n)] = RealInterval(1);
  for (int j = 1; j <= n; ++j) c[static_cast<std::size_t>(n - j)] = -r.coeffs()[static_cast<std::size_t>(j - 1)].at(p);
  return IntervalPoly(std::move(c));
}

std::vector<std::vector<RealInterval>> companionMatrix(const LinRec& r, long p) {
  auto n = static_cast<std::size_t>(r.order());
  std::vector<std::vector<RealInterval>> a(n, std::vector<RealInterval>(n, RealInterval(0)));
  for (std::size_t j = 0; j < n; ++j) a[0][j] = r.coeffs()[j].at(p);
  for (std::size_t i = 1; i < n; ++i) a[i][i - 1] = RealInterval(1);
  return a;
}

std::vector<RealInterval> termEnclosures(const LinRec& r, long K, long q, int bits) {
  auto n = static_cast<std::size_t>(r.order());
  std::vector<RealInterval> c(n), u;
  for (std::size_t i = 0; i < n; ++i) c[i] = r.coeffs()[i].at(q);
  u.reserve(static_cast<std::size_t>(std::max<long>(K, 0)));
  for (std::size_t i = 0; i < n && static_cast<long>(i) < K; ++i) u.push_back(roundRelative(r.inits()[i].at(q), bits));
  for (long k = static_cast<long>(n); k < K; ++k) {
    RealInterval s(0);
    for (std::size_t i = 0; i < n; ++i) s = s + c[i] * u[static_cast<std::size_t>(k) - 1 - i];
    u.push_back(roundRelative(s, bits));
  }
  return u;
}

TermEnclosure evalTerm(const LinRec& r, long k, long p) {
  if (k < 1) throw std::invalid_argument("terms are indexed from 1");
  Rational target = pow2(-p);
  long q = p + 8;
  int bits = static_cast<int>(std::max(64L, p + 32));
  RealInterval v;
  for (int attempt = 0; attempt < 20; ++attempt) {
    v = termEnclosures(r, k, q, bits).back();
    if (v.width() <= target) return {v, false};
    bool stuck = false;
    for (const auto& x : r.coeffs()) stuck = stuck || x.query(q).exhausted;
    for (const auto& x : r.inits()) stuck = stuck || x.query(q).exhausted;
    if (stuck) return {v, true};
    q = 2 * q + 16;
    bits *= 2;
  }
  return {v, true};
}

TermCache::TermCache(LinRec r, long q, int bits) : r_(std::move(r)), q_(q), bits_(bits) {
  for (const auto& x : r_.coeffs()) c_.push_back(x.at(q_));
  for (const auto& x : r_.inits()) u_.push_back(roundRelative(x.at(q_), bits_));
}

const RealInterval& TermCache::at(long k) {
  if (k < 1) throw std::invalid_argument("terms are indexed from 1");
  std::size_t n = c_.size();
  while (static_cast<long>(u_.size()) < k) {
    std::size_t len = u_.size();
    RealInterval s(0);
    for (std::size_t i = 0; i < n; ++i) s = s + c_[i] * u_[len - 1 - i];
    u_.push_back(roundRelative(s, bits_));
  }
  return u_[static_cast<std::size_t>(k) - 1];
}

}  // namespace lrs
