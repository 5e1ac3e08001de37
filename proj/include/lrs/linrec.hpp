#pragma once

// Real linear recurrences u_k = c_1 u_{k-1} + ... + c_n u_{k-n}, indexed
// from u_1.

#include <lrs/poly.hpp>
#include <lrs/realname.hpp>

#include <vector>

namespace lrs {

class LinRec {
 public:
  LinRec() = default;
  LinRec(std::vector<RealName> coeffs, std::vector<RealName> inits);
  static LinRec fromRationals(const std::vector<Rational>& coeffs, const std::vector<Rational>& inits);

  int order() const { return static_cast<int>(coeffs_.size()); }
  const std::vector<RealName>& coeffs() const { return coeffs_; }
  const std::vector<RealName>& inits() const { return inits_; }
  bool isExact() const;

 private:
  std::vector<RealName> coeffs_, inits_;
};

// x^n - c_1 x^{n-1} - ... - c_n with coefficient enclosures at precision p.
IntervalPoly charPoly(const LinRec& r, long p);

// Entries of the companion matrix at precision p: first row c_1..c_n,
// ones on the subdiagonal.
std::vector<std::vector<RealInterval>> companionMatrix(const LinRec& r, long p);

struct TermEnclosure {
  RealInterval value;
  bool exhausted = false;
};

// u_k enclosed with width <= 2^-p unless the inputs run out of accuracy.
TermEnclosure evalTerm(const LinRec& r, long k, long p);

// Enclosures of u_1..u_K from inputs queried at precision q, carrying about
// `bits` significant bits through the recurrence.
std::vector<RealInterval> termEnclosures(const LinRec& r, long K, long q, int bits);

// u_k on demand, extended incrementally; same inputs as termEnclosures.
class TermCache {
 public:
  TermCache(LinRec r, long q, int bits);
  const RealInterval& at(long k);
  long precision() const { return q_; }

 private:
  LinRec r_;
  long q_;
  int bits_;
  std::vector<RealInterval> c_, u_;
};

}  // namespace lrs
