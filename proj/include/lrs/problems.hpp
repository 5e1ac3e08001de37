#pragma once

// Partial deciders for Positivity, Ultimate Positivity and Skolem, the box
// trichotomy built on them, and a certificate checker.

#include <lrs/configs.hpp>
#include <lrs/fodecide.hpp>
#include <lrs/linrec.hpp>
#include <lrs/spectral.hpp>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace lrs {

enum class Problem { Skolem, Positivity, Upp };
std::string toString(Problem p);
Problem parseProblem(const std::string& s);

struct Fuel {
  long maxPrecision = 16;  // last round p
  long maxTerms = 4096;    // longest prefix searched for a negative term
  long maxSubdivisions = 100000;  // refuter budget per configuration
  double solverTimeout = 0;       // seconds per script; 0 disables the solver
  std::string solverPath;
  SentenceMode mode = SentenceMode::Cramer;  // form handed to the solver
  long maxStride = 4096;
  ClusteringFuel clustering;
};

// Counters kept across rounds. `positiveAttempts` and `negativeAttempts`
// count recognizer invocations on either side.
struct Trace {
  long rounds = 0;
  long positiveAttempts = 0;
  long negativeAttempts = 0;
  long termsChecked = 0;
  long configurationsTried = 0;
  long subdivisions = 0;
  std::vector<std::string> events;
};

// Shared fields of certificates resting on one dominant simple positive
// root: the coefficient is recomputed from the residue form at
// coeffPrecision so that a checker can reproduce it.
struct PositivityPositive {
  DominantRootCertificate dominant;
  long round = 0;
  RealInterval coeff;
  long coeffPrecision = 0;
  long N = 0;  // u_k > 0 follows from the tail bound for k >= N
  long tailPrecision = 0;
  long prefixPrecision = 0;
};

struct PositivityNegative {
  long k = 0;
  long precision = 0;
  RealInterval value;
};

enum class SkolemTest { OneRoot, TwoRoot };
std::string toString(SkolemTest t);

struct SkolemNegative {
  SkolemTest test = SkolemTest::OneRoot;
  long round = 0;
  long precision = 0;  // of the char poly the clustering covers
  Clustering clustering;
  std::vector<RealInterval> roots, coeffs;
  long coeffPrecision = 0;
  Rational separationM;  // all other roots have modulus < M
  bool exactEqualModuli = false;
  long K = 0;  // u_k != 0 follows from the tail bound for k >= K
  long tailPrecision = 0;
  long prefixPrecision = 0;
};

struct UppPositive {
  DominantRootCertificate dominant;
  long round = 0;
  RealInterval coeff;
  long coeffPrecision = 0;
};

// Simple-root fast path. Condition 1: a dominant simple positive root with
// negative coefficient. Condition 2: a root outside [0, inf) with nonzero
// coefficient, larger in modulus than every possibly positive root.
struct UppSimpleNegative {
  int condition = 1;
  long round = 0;
  std::optional<DominantRootCertificate> dominant;  // condition 1
  long precision = 0;                               // condition 2 from here on
  Clustering clustering;
  ComplexBox root;
  ComplexBox coeff;  // both conditions
  long coeffPrecision = 0;
};

struct ConfigurationRecord {
  RootConfiguration configuration;
  std::string backend;  // "internal" or "smtlib"
  long subdivisions = 0;
};

struct UppNegative {
  long round = 0;
  long precision = 0;
  Clustering clustering;
  std::vector<RealInterval> initBox;
  SentenceMode mode = SentenceMode::Cramer;
  std::vector<ConfigurationRecord> records;
};

using Certificate = std::variant<std::monostate, PositivityPositive, PositivityNegative, SkolemNegative, UppPositive,
                                 UppSimpleNegative, UppNegative>;

struct Verdict {
  Problem problem = Problem::Positivity;
  bool halted = false;
  int answer = 0;  // meaningful when halted
  Certificate certificate;
  Trace trace;
};

// The negated sentences a round-p ultimate-positivity check refutes, one per
// root configuration of the clustering at 2^-p.
struct NegatedSentence {
  RootConfiguration configuration;
  ConstraintSystem system;
};
struct NegatedSentences {
  Clustering clustering;
  long precision = 0;
  std::vector<RealInterval> initBox;
  std::vector<NegatedSentence> sentences;
};
std::optional<NegatedSentences> negatedSentences(const LinRec& r, long p, const Fuel& fuel, SentenceMode mode);

Verdict positivityDecide(const LinRec& r, const Fuel& fuel);
Verdict uppDecide(const LinRec& r, const Fuel& fuel);
Verdict skolemDecide(const LinRec& r, const Fuel& fuel);
Verdict decide(Problem problem, const LinRec& r, const Fuel& fuel);

enum class Trichotomy { Positive, Negative, Mixed, Exhausted };
// "1", "0", "-1" or "exhausted".
std::string toString(Trichotomy t);

// box = coefficient intervals followed by initial-value intervals. Sub-boxes
// of the interior are searched breadth first down to maxDepth halvings per
// coordinate.
Trichotomy boxTrichotomy(Problem problem, const std::vector<RealInterval>& box, const Fuel& fuel, int maxDepth = 3,
                         long maxBoxes = 512);

struct CheckOptions {
  long maxSubdivisions = 1000000;
  std::string solverPath;  // needed to replay records answered by the solver
  double solverTimeout = 30;
};

struct CheckResult {
  bool valid = false;
  std::string reason;
};

CheckResult checkCertificate(const LinRec& r, const Verdict& v, const CheckOptions& options = {});

// Coefficient of the simple root in mu from the residue form
// a = N*(mu) / (mu P'(mu)), inputs queried at precision q. nullopt when the
// denominator cannot be separated from zero on mu.
std::optional<ComplexBox> simpleRootCoefficient(const LinRec& r, const ComplexBox& mu, long q);

// An index K with |u_k - sum_j a_j rho_j^k| < delta R^k for all k >= K,
// given that every root other than the rho_j has modulus < M < R.
std::optional<long> dominantTailIndex(const LinRec& r, const std::vector<RealInterval>& roots,
                                      const std::vector<RealInterval>& coeffs, const Rational& M, const Rational& R,
                                      const Rational& delta, long termPrecision, long maxStride);

}  // namespace lrs
