#pragma once

// Interval polynomials, certified root counting and root clustering.

#include <lrs/numeric.hpp>

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace lrs {

// A polynomial whose coefficients are only known to lie in intervals.
// coeffs()[i] multiplies x^i.
class IntervalPoly {
 public:
  IntervalPoly() = default;
  explicit IntervalPoly(std::vector<RealInterval> coeffs);
  static IntervalPoly fromRationals(const std::vector<Rational>& coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const RealInterval& operator[](int i) const { return coeffs_[static_cast<std::size_t>(i)]; }
  const std::vector<RealInterval>& coeffs() const { return coeffs_; }
  bool isExact() const;
  IntervalPoly derivative() const;

  friend bool operator==(const IntervalPoly& a, const IntervalPoly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<RealInterval> coeffs_;
};

// Horner evaluation. For a point argument the result is the exact range over
// all polynomials in the family.
ComplexBox evalPoly(const IntervalPoly& p, const ComplexBox& z);
RealInterval evalPoly(const IntervalPoly& p, const RealInterval& x);

// Coefficients T_k with P(c + t) = sum_k T_k t^k.
std::vector<ComplexBox> taylorShift(const IntervalPoly& p, const ComplexBox& c, int bits = 0);

// True when no polynomial of the family vanishes on the closed box.
bool excludesZero(const IntervalPoly& p, const ComplexBox& box, int bits = 0);

// Winding-number root count inside a box whose boundary carries no root of
// any member of the family. nullopt when the segment budget runs out or the
// boundary cannot be certified root free.
std::optional<int> countRootsInBox(const IntervalPoly& p, const ComplexBox& box, long maxSegments = 1L << 14);

struct Cluster {
  ComplexBox box;
  int count = 0;
};

// Boxes in the order: real clusters by decreasing real part, then the
// upper half-plane clusters by decreasing real part, then their mirror
// images in the same order.
struct Clustering {
  std::vector<Cluster> clusters;
  int realCount = 0;
  int upperCount = 0;
  Rational delta;  // quadtree cell size that produced it
  int level = 0;

  int lowerBegin() const { return realCount + upperCount; }
  // Index of the mirror image of a non-real cluster.
  int partner(int j) const;
  Rational maxWidth() const;
};

struct ClusteringFuel {
  int maxLevel = 64;
  long maxCells = 4096;
  long maxSegments = 1L << 13;
};

// Quadtree root isolation over the Cauchy disk. Candidate cells are kept per
// level so that asking for a finer clustering reuses the coarser work.
class RootIsolator {
 public:
  explicit RootIsolator(IntervalPoly p, ClusteringFuel fuel = {});
  RootIsolator(const RootIsolator&) = delete;
  RootIsolator& operator=(const RootIsolator&) = delete;

  const IntervalPoly& poly() const { return p_; }
  const Rational& radius() const { return radius_; }
  bool valid() const { return valid_; }

  // Clustering built from the candidate cells at the given level.
  std::optional<Clustering> atLevel(int level);
  // First level whose clustering has every box of width <= target.
  std::optional<Clustering> withWidth(const Rational& target, int fromLevel = 1);

 private:
  struct Cell {
    long x, y;
  };
  struct Group {
    long x0, x1, y0, y1;  // cell index ranges, inclusive
  };
  const std::vector<Cell>* candidates(int level);
  std::optional<std::vector<Group>> groups(int level);
  std::optional<Clustering> build(int level);
  ComplexBox cellBox(int level, long x, long y) const;
  int bits(int level) const;

  IntervalPoly p_;
  ClusteringFuel fuel_;
  Rational radius_;
  bool valid_ = false;
  std::vector<std::vector<Cell>> levels_;
  bool overflow_ = false;
  std::map<int, std::optional<Clustering>> built_;
  std::recursive_mutex mu_;
};

std::optional<Clustering> computeClustering(const IntervalPoly& p, const Rational& targetWidth,
                                            const ClusteringFuel& fuel = {});

// Conditions that can be checked from the boxes and counts alone (boxes
// pairwise disjoint, real reflection, conjugate pairing, order). Returns one
// message per violation; empty means the structure is valid.
std::vector<std::string> clusteringStructureViolations(const Clustering& c);
// Adds recounting of every box and the total against the degree.
std::vector<std::string> validateClustering(const IntervalPoly& p, const Clustering& c, long maxSegments = 1L << 14);

// Bisection on a sign change. Returns the narrowest certified subinterval
// found, which may be wider than target if signs stop being decidable.
RealInterval refineRealRoot(const IntervalPoly& p, const RealInterval& bracket, const Rational& target, int maxSteps = 4096);

// Shrinks a box known to contain exactly `count` roots (with a root free
// boundary) while keeping that certified count.
ComplexBox refineClusterBox(const IntervalPoly& p, const ComplexBox& box, int count, const Rational& target,
                            int maxLevels = 64, long maxCells = 4096);

// Cauchy bound 1 + max |c_i / c_n|; nullopt if c_n may vanish.
std::optional<Rational> cauchyBound(const IntervalPoly& p);

}  // namespace lrs
