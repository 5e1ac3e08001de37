#pragma once

// Negated ultimate-positivity sentences over a root configuration, an
// interval branch-and-prune refuter and an SMT-LIB2 backend.

#include <lrs/configs.hpp>
#include <lrs/symbolic.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lrs {

// common AND (branch_1 OR branch_2 OR ...), every branch a conjunction.
struct ConstraintSystem {
  std::vector<std::string> vars;
  std::vector<std::optional<RealInterval>> bounds;  // nullopt: unbounded
  std::vector<Constraint> common;
  std::vector<std::vector<Constraint>> branches;
};

enum class SentenceMode { Cramer, ExistentialCoeffs };
std::string toString(SentenceMode m);
SentenceMode parseSentenceMode(const std::string& s);

// Satisfiable exactly when some point of the configuration domain (with u
// in initBox) has an ultimately positive sequence, or sits on the boundary
// of the certified-negative region.
ConstraintSystem buildNegatedSentence(const RootConfiguration& r, const Clustering& c,
                                      const std::vector<RealInterval>& initBox, SentenceMode mode);

// N*(z) = sum_j N_j z^(n-1-j) with N_j = u_{j+1} - sum_{i<=j} c_i u_{j+1-i}.
// The leading coefficient of a root rho of multiplicity r is
// N*(rho) / (rho^r (r-1)! Q(rho)) where Q is the cofactor of (x-rho)^r.
std::vector<SymPoly> residueNumerator(const RootConfiguration& r);
SymPoly evalUnivariate(const std::vector<SymPoly>& coeffsHighToLow, const SymPoly& z);
ComplexSymPoly evalUnivariate(const std::vector<SymPoly>& coeffsHighToLow, const ComplexSymPoly& z);

// Re(det_num * conj(det)) from Cramer's rule on the confluent Vandermonde
// system; same sign as the leading coefficient of rho_1. Needs a real root.
std::optional<SymPoly> cramerSignPoly(const RootConfiguration& r);

enum class RefuteStatus { Unsat, Unknown };

struct RefutationResult {
  RefuteStatus status = RefuteStatus::Unknown;
  long subdivisions = 0;
  std::string reason;
};

RefutationResult refuteBySubdivision(const ConstraintSystem& s, long maxSubdivisions);

std::string emitSmtlib(const ConstraintSystem& s);

struct SolverNotFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MalformedSolverOutput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SolverVerdict { Unsat, Sat, Unknown };
std::string toString(SolverVerdict v);

// Absolute or PATH-resolved executable; nullopt when there is none.
std::optional<std::string> resolveSolver(const std::string& path);

// Runs `<solverPath> <file.smt2>` and reads the first line of output.
SolverVerdict externalSolverCheck(const ConstraintSystem& s, const std::string& solverPath, double timeoutSeconds);
SolverVerdict runSolverOnText(const std::string& smt, const std::string& solverPath, double timeoutSeconds);

}  // namespace lrs
