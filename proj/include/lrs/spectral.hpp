#pragma once

// Spectral facts about a recurrence: dominant roots, the coefficients of the
// exponential-polynomial closed form and explicit tail indices.

#include <lrs/linrec.hpp>
#include <lrs/poly.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace lrs {

// Root isolators are expensive; isolators of exactly equal polynomials are
// shared through a small process-wide cache.
std::shared_ptr<RootIsolator> sharedIsolator(const IntervalPoly& p, const ClusteringFuel& fuel);

struct DominantRootCertificate {
  RealInterval rootBox;   // the dominant root rho
  RealInterval coeffBox;  // its coefficient a
  Rational separationM;   // every other root has modulus < M < rho
  Clustering clustering;
  long precision = 0;     // precision of the char poly the clustering was built for
};

struct SpectralFuel {
  ClusteringFuel clustering;
  int coefficientAttempts = 4;
};

// Coefficient precision used for the char poly at round p.
long charPrecision(const LinRec& r, long p);

// Certifies a simple real root rho > 0 that strictly dominates every other
// root in modulus, with its coefficient enclosed. nullopt is "unknown".
std::optional<DominantRootCertificate> dominantSimplePositiveRoot(const LinRec& r, long p, const SpectralFuel& fuel = {});

// Coefficients a_0..a_{m-1} of the polynomial k -> sum_d a_d k^d that
// multiplies mu^k in the closed form of u_k, for the root mu of multiplicity m
// isolated in muBox.
struct CoeffVector {
  std::vector<ComplexBox> a;
  ComplexBox mu;        // possibly refined root enclosure
  bool narrow = false;  // all widths reached 2^-p
};

std::optional<CoeffVector> coefficientOfRoot(const LinRec& r, const ComplexBox& muBox, int m, long p,
                                             const SpectralFuel& fuel = {});

// One evaluation of the coefficient formula from fixed enclosures of the
// companion data, the initial values and the root.
std::optional<std::vector<ComplexBox>> coefficientsFrom(const std::vector<RealInterval>& coeffs,
                                                        const std::vector<RealInterval>& inits, const ComplexBox& mu,
                                                        int m, int bits = 256);

// Largest real root when it is simple; its enclosure has width <= eps.
std::optional<RealInterval> largestSimpleRealRoot(const IntervalPoly& p, const Rational& eps,
                                                  const ClusteringFuel& fuel = {});

// N with |v_k| < delta for all k >= N, where v_k = d_k / R^k and d is a
// sequence satisfying some recurrence of order `order` whose roots all have
// modulus < M, ratio = M / R < 1. scaled(k) must enclose v_k for k >= 1.
// nullopt when the stride needed exceeds maxStride.
std::optional<long> residualTailIndex(const std::function<RealInterval(long)>& scaled, int order, const Rational& ratio,
                                      const Rational& delta, long maxStride = 4096);

// |a| rho^k > |u_k - a rho^k| for every k >= N.
std::optional<long> tailIndex(const LinRec& r, const DominantRootCertificate& cert, long maxStride = 4096);

// Enclosure of u_k / R^k - sum_j a_j (rho_j / R)^k for simple real roots.
std::function<RealInterval(long)> scaledResidual(std::function<RealInterval(long)> term,
                                                 const std::vector<RealInterval>& roots,
                                                 const std::vector<RealInterval>& coeffs, const Rational& R, int bits);

// Rank deficiency check of A - lambda I on the companion matrix: true when
// some (n-1)-minor certainly does not vanish.
bool companionRankAtLeast(const LinRec& r, const ComplexBox& lambda, long p, int rank);

}  // namespace lrs
