#pragma once

// Oracle-style real numbers.
//
// A RealName answers query(p) with a rational interval of width at most 2^-p
// that contains the number. Answers to successive queries are nested. When
// the input itself cannot be refined any further (a fixed interval), the
// answer carries `exhausted = true` and may be wider than requested.

#include <lrs/numeric.hpp>

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

namespace lrs {

struct Enclosure {
  RealInterval value;
  bool exhausted = false;
};

namespace detail {

class NameNode {
 public:
  virtual ~NameNode() = default;
  Enclosure query(long p);
  virtual std::optional<Rational> exact() const { return std::nullopt; }
  virtual std::optional<RealInterval> fixed() const { return std::nullopt; }

 protected:
  // Enclosure of width <= 2^-p unless exhausted.
  virtual Enclosure compute(long p) = 0;

 private:
  std::mutex mu_;
  std::map<long, Enclosure> memo_;
};

}  // namespace detail

enum class NameKind { Rational, Interval, PiMultiple, Derived };

class RealName {
 public:
  RealName();  // the exact number 0
  static RealName rational(const Rational& q);
  static RealName interval(const RealInterval& range);
  // q * pi
  static RealName piMultiple(const Rational& q);
  // a / b. The witness precision must already separate b from zero.
  static RealName quotient(const RealName& a, const RealName& b, long witnessPrecision);

  Enclosure query(long p) const;
  RealInterval at(long p) const { return query(p).value; }

  NameKind kind() const { return kind_; }
  std::optional<Rational> exactValue() const { return node_->exact(); }
  std::optional<RealInterval> fixedRange() const { return node_->fixed(); }
  // Multiplier of pi for PiMultiple names.
  const Rational& piFactor() const { return piFactor_; }

  // A name computed from others: combine(q) must enclose the value using
  // inputs queried at precision q; exhausted(q) reports stuck inputs.
  static RealName derived(std::function<RealInterval(long)> combine, std::function<bool(long)> exhausted);

  friend RealName operator+(const RealName& a, const RealName& b);
  friend RealName operator-(const RealName& a, const RealName& b);
  friend RealName operator*(const RealName& a, const RealName& b);
  friend RealName operator-(const RealName& a);

 private:
  RealName(std::shared_ptr<detail::NameNode> node, NameKind kind) : node_(std::move(node)), kind_(kind) {}
  std::shared_ptr<detail::NameNode> node_;
  NameKind kind_ = NameKind::Rational;
  Rational piFactor_{0};
};

// An enclosure of pi of width at most 2^-p (Machin's formula).
RealInterval piEnclosure(long p);

enum class Ordering3 { Less, Greater, Unknown };
Ordering3 semiCompare(const RealName& a, const RealName& b, long p);
std::string toString(Ordering3 o);

struct ComplexName {
  RealName re, im;
  ComplexBox query(long p) const { return {re.at(p), im.at(p)}; }
};

}  // namespace lrs
