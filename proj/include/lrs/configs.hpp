#pragma once

// Root configurations compatible with a clustering, their symbolic
// characteristic data and the semi-algebraic domains they live on.

#include <lrs/poly.hpp>
#include <lrs/symbolic.hpp>

#include <optional>
#include <string>
#include <vector>

namespace lrs {

struct RootVar {
  int cluster = 0;       // index into Clustering::clusters
  int multiplicity = 1;  // for complex variables: multiplicity of lambda (and of its conjugate)
};

// Distinct real roots rho_1 > rho_2 > ... and distinct upper half-plane roots
// lambda_j = x_j + i y_j, each with a multiplicity. Variables are numbered
// rho_1..rho_d, then x_1, y_1, ..., x_e, y_e, then u_1..u_n.
struct RootConfiguration {
  std::vector<RootVar> reals, complexes;

  int order() const;
  std::size_t rhoVar(std::size_t i) const { return i; }
  std::size_t xVar(std::size_t j) const { return reals.size() + 2 * j; }
  std::size_t yVar(std::size_t j) const { return reals.size() + 2 * j + 1; }
  std::size_t uVar(std::size_t k) const { return reals.size() + 2 * complexes.size() + k - 1; }  // k >= 1
  std::size_t varCount() const { return reals.size() + 2 * complexes.size() + static_cast<std::size_t>(order()); }
  std::vector<std::string> varNames() const;
  std::string describe() const;

  friend bool operator==(const RootConfiguration& a, const RootConfiguration& b);
};

std::vector<RootConfiguration> enumerateConfigurations(const Clustering& c);

// c_1..c_n of prod (x - rho_i)^{r_i} prod (x^2 - 2 x_j x + x_j^2 + y_j^2)^{m_j}.
std::vector<SymPoly> associatedRecurrence(const RootConfiguration& r);

// Coefficients of the characteristic polynomial, low to high, as polynomials
// in the root variables.
std::vector<SymPoly> configurationCharPoly(const RootConfiguration& r);

struct DomainSystem {
  std::vector<std::string> vars;
  std::vector<std::optional<RealInterval>> bounds;
  std::vector<Constraint> constraints;
};

// Root variables inside their clusters, strict order of the reals, y_j > 0,
// distinct complex roots. With initBox, bounds for u_1..u_n are added.
DomainSystem domainSystem(const RootConfiguration& r, const Clustering& c,
                          const std::vector<RealInterval>& initBox = {});

}  // namespace lrs
