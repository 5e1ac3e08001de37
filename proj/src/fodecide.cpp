#include "lrs/fodecide.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace lrs {

std::string toString(SentenceMode m) { return m == SentenceMode::Cramer ? "cramer" : "existentialCoeffs"; }

SentenceMode parseSentenceMode(const std::string& s) {
  if (s == "cramer") return SentenceMode::Cramer;
  if (s == "existentialCoeffs" || s == "existential") return SentenceMode::ExistentialCoeffs;
  throw std::invalid_argument("unknown sentence mode: " + s);
}

std::vector<SymPoly> residueNumerator(const RootConfiguration& r) {
  std::vector<SymPoly> c = associatedRecurrence(r);
  int n = r.order();
  std::vector<SymPoly> N;
  for (int j = 0; j < n; ++j) {
    SymPoly v = SymPoly::var(r.uVar(static_cast<std::size_t>(j + 1)));
    for (int i = 1; i <= j; ++i) v -= c[static_cast<std::size_t>(i - 1)] * SymPoly::var(r.uVar(static_cast<std::size_t>(j + 1 - i)));
    N.push_back(v);
  }
  return N;
}

SymPoly evalUnivariate(const std::vector<SymPoly>& coeffsHighToLow, const SymPoly& z) {
  SymPoly acc;
  for (const auto& c : coeffsHighToLow) acc = acc * z + c;
  return acc;
}

ComplexSymPoly evalUnivariate(const std::vector<SymPoly>& coeffsHighToLow, const ComplexSymPoly& z) {
  ComplexSymPoly acc;
  for (const auto& c : coeffsHighToLow) acc = acc * z + ComplexSymPoly{c, SymPoly()};
  return acc;
}

namespace {

using Conj = std::vector<Constraint>;

Constraint ge(SymPoly p) { return {std::move(p), Relation::Ge}; }
Constraint gt(SymPoly p) { return {std::move(p), Relation::Gt}; }
Constraint eq(SymPoly p) { return {std::move(p), Relation::Eq}; }

Rational kPow(int k, int l) {
  Rational r(1);
  for (int t = 0; t < l; ++t) r *= k;
  return r;
}

std::vector<Conj> product(const std::vector<std::vector<Conj>>& alternatives) {
  std::vector<Conj> out{Conj{}};
  for (const auto& alts : alternatives) {
    std::vector<Conj> next;
    for (const auto& partial : out)
      for (const auto& a : alts) {
        Conj c = partial;
        c.insert(c.end(), a.begin(), a.end());
        next.push_back(std::move(c));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

ConstraintSystem buildNegatedSentence(const RootConfiguration& r, const Clustering& c,
                                      const std::vector<RealInterval>& initBox, SentenceMode mode) {
  DomainSystem d = domainSystem(r, c, initBox);
  ConstraintSystem s;
  s.vars = d.vars;
  s.bounds = d.bounds;
  s.common = d.constraints;
  std::size_t nd = r.reals.size();
  SymPoly rho1 = nd > 0 ? SymPoly::var(r.rhoVar(0)) : SymPoly();

  // Leading-coefficient expressions, one per root variable. For a real root
  // the sign of the expression is the sign of the coefficient times a
  // positive factor wherever the root is nonzero; for a complex root the
  // pair vanishes exactly when the coefficient does.
  std::vector<SymPoly> realLead;
  std::vector<std::pair<SymPoly, SymPoly>> complexLead;
  SymPoly rho1Sign;
  if (mode == SentenceMode::Cramer) {
    std::vector<SymPoly> N = residueNumerator(r);
    for (std::size_t i = 0; i < nd; ++i) realLead.push_back(evalUnivariate(N, SymPoly::var(r.rhoVar(i))));
    for (std::size_t j = 0; j < r.complexes.size(); ++j) {
      ComplexSymPoly lam{SymPoly::var(r.xVar(j)), SymPoly::var(r.yVar(j))};
      ComplexSymPoly v = evalUnivariate(N, lam);
      complexLead.emplace_back(v.re, v.im.isZero() ? v.im : v.im.divideByVar(r.yVar(j)));
    }
    if (nd > 0) rho1Sign = realLead[0] * rho1.pow(static_cast<unsigned>(r.reals[0].multiplicity));
  } else {
    int n = r.order();
    std::vector<std::vector<std::size_t>> aVar(nd), brVar(r.complexes.size()), biVar(r.complexes.size());
    for (std::size_t i = 0; i < nd; ++i)
      for (int l = 0; l < r.reals[i].multiplicity; ++l) {
        aVar[i].push_back(s.vars.size());
        s.vars.push_back("a" + std::to_string(i + 1) + "_" + std::to_string(l));
      }
    for (std::size_t j = 0; j < r.complexes.size(); ++j)
      for (int l = 0; l < r.complexes[j].multiplicity; ++l) {
        brVar[j].push_back(s.vars.size());
        s.vars.push_back("br" + std::to_string(j + 1) + "_" + std::to_string(l));
        biVar[j].push_back(s.vars.size());
        s.vars.push_back("bi" + std::to_string(j + 1) + "_" + std::to_string(l));
      }
    s.bounds.resize(s.vars.size(), std::nullopt);
    for (int k = 1; k <= n; ++k) {
      SymPoly sum = -SymPoly::var(r.uVar(static_cast<std::size_t>(k)));
      for (std::size_t i = 0; i < nd; ++i) {
        SymPoly pk = SymPoly::var(r.rhoVar(i)).pow(static_cast<unsigned>(k));
        for (int l = 0; l < r.reals[i].multiplicity; ++l)
          sum += SymPoly(kPow(k, l)) * SymPoly::var(aVar[i][static_cast<std::size_t>(l)]) * pk;
      }
      for (std::size_t j = 0; j < r.complexes.size(); ++j) {
        ComplexSymPoly lam{SymPoly::var(r.xVar(j)), SymPoly::var(r.yVar(j))}, lk{SymPoly(1), SymPoly()};
        for (int e = 0; e < k; ++e) lk = lk * lam;
        for (int l = 0; l < r.complexes[j].multiplicity; ++l) {
          SymPoly kl(kPow(k, l));
          // 2 Re((br + i bi) lambda^k)
          sum += SymPoly(2) * kl *
                 (SymPoly::var(brVar[j][static_cast<std::size_t>(l)]) * lk.re -
                  SymPoly::var(biVar[j][static_cast<std::size_t>(l)]) * lk.im);
        }
      }
      s.common.push_back(eq(sum));
    }
    for (std::size_t i = 0; i < nd; ++i) realLead.push_back(SymPoly::var(aVar[i].back()));
    for (std::size_t j = 0; j < r.complexes.size(); ++j)
      complexLead.emplace_back(SymPoly::var(brVar[j].back()), SymPoly::var(biVar[j].back()));
    if (nd > 0) rho1Sign = realLead[0];
  }

  std::vector<std::vector<Conj>> alternatives;
  if (nd > 0) s.common.push_back(ge(rho1Sign));
  for (std::size_t i = 0; i < nd; ++i) {
    SymPoly rho = SymPoly::var(r.rhoVar(i));
    std::vector<Conj> alts{{ge(rho)}};
    if (i > 0) alts.push_back({gt(rho1), ge(rho1 * rho1 - rho * rho)});
    alts.push_back({eq(realLead[i])});
    alternatives.push_back(alts);
  }
  for (std::size_t j = 0; j < r.complexes.size(); ++j) {
    SymPoly x = SymPoly::var(r.xVar(j)), y = SymPoly::var(r.yVar(j));
    std::vector<Conj> alts;
    if (nd > 0) alts.push_back({gt(rho1), ge(rho1 * rho1 - x * x - y * y)});
    alts.push_back({eq(complexLead[j].first), eq(complexLead[j].second)});
    alternatives.push_back(alts);
  }
  s.branches = product(alternatives);
  return s;
}

// ---------------------------------------------------------------- Cramer

namespace {

ComplexSymPoly cpow(const ComplexSymPoly& z, int k) {
  ComplexSymPoly acc{SymPoly(1), SymPoly()};
  for (int e = 0; e < k; ++e) acc = acc * z;
  return acc;
}

ComplexSymPoly determinant(const std::vector<std::vector<ComplexSymPoly>>& m) {
  std::size_t n = m.size();
  std::map<unsigned, ComplexSymPoly> memo;  // minors on the last rows, keyed by column set
  std::function<ComplexSymPoly(std::size_t, unsigned)> rec = [&](std::size_t row, unsigned cols) -> ComplexSymPoly {
    if (row == n) return {SymPoly(1), SymPoly()};
    auto it = memo.find(cols);
    if (it != memo.end()) return it->second;
    ComplexSymPoly acc;
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
      if (!(cols & (1U << c))) continue;
      ComplexSymPoly term = m[row][c] * rec(row + 1, cols & ~(1U << c));
      if (sign > 0)
        acc = acc + term;
      else
        acc = acc - term;
      sign = -sign;
    }
    memo.emplace(cols, acc);
    return acc;
  };
  return rec(0, (1U << n) - 1);
}

}  // namespace

std::optional<SymPoly> cramerSignPoly(const RootConfiguration& r) {
  if (r.reals.empty()) return std::nullopt;
  int n = r.order();
  std::vector<std::vector<ComplexSymPoly>> m(static_cast<std::size_t>(n));
  auto addColumn = [&](const ComplexSymPoly& root, int l) {
    for (int k = 1; k <= n; ++k) {
      ComplexSymPoly e = cpow(root, k);
      Rational kl(1);
      for (int t = 0; t < l; ++t) kl *= k;
      m[static_cast<std::size_t>(k - 1)].push_back({e.re * SymPoly(kl), e.im * SymPoly(kl)});
    }
  };
  std::size_t target = 0;
  for (std::size_t i = 0; i < r.reals.size(); ++i)
    for (int l = 0; l < r.reals[i].multiplicity; ++l) {
      if (i == 0 && l == r.reals[0].multiplicity - 1) target = m[0].size();
      addColumn({SymPoly::var(r.rhoVar(i)), SymPoly()}, l);
    }
  for (std::size_t j = 0; j < r.complexes.size(); ++j) {
    ComplexSymPoly lam{SymPoly::var(r.xVar(j)), SymPoly::var(r.yVar(j))};
    for (int l = 0; l < r.complexes[j].multiplicity; ++l) addColumn(lam, l);
    for (int l = 0; l < r.complexes[j].multiplicity; ++l) addColumn(conj(lam), l);
  }
  ComplexSymPoly det = determinant(m);
  for (int k = 1; k <= n; ++k) m[static_cast<std::size_t>(k - 1)][target] = {SymPoly::var(r.uVar(static_cast<std::size_t>(k))), SymPoly()};
  ComplexSymPoly num = determinant(m);
  return (num * conj(det)).re;
}

// ---------------------------------------------------------------- refuter

RefutationResult refuteBySubdivision(const ConstraintSystem& s, long maxSubdivisions) {
  RefutationResult res;
  if (s.branches.empty()) {
    res.status = RefuteStatus::Unsat;
    res.reason = "empty disjunction";
    return res;
  }
  std::vector<RealInterval> box;
  for (std::size_t v = 0; v < s.vars.size(); ++v) {
    if (!s.bounds[v]) {
      res.reason = "unbounded variable " + s.vars[v];
      return res;
    }
    box.push_back(*s.bounds[v]);
  }
  auto varsOf = [](const Constraint& c) {
    std::vector<std::size_t> vs;
    for (const auto& [m, k] : c.poly.terms())
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] > 0) vs.push_back(i);
    return vs;
  };

  struct Item {
    std::vector<RealInterval> box;
    std::vector<std::size_t> alive;
  };
  std::vector<Item> stack;
  std::vector<std::size_t> all(s.branches.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  stack.push_back({box, all});
  while (!stack.empty()) {
    Item it = std::move(stack.back());
    stack.pop_back();
    bool dead = false, commonSat = true;
    std::vector<const Constraint*> undecided;
    for (const auto& c : s.common) {
      int d = decide(c, it.box);
      if (d < 0) {
        dead = true;
        break;
      }
      if (d == 0) {
        commonSat = false;
        undecided.push_back(&c);
      }
    }
    if (dead) continue;
    std::vector<std::size_t> alive;
    for (std::size_t b : it.alive) {
      bool bad = false, allSat = true;
      std::vector<const Constraint*> open;
      for (const auto& c : s.branches[b]) {
        int d = decide(c, it.box);
        if (d < 0) {
          bad = true;
          break;
        }
        if (d == 0) {
          allSat = false;
          open.push_back(&c);
        }
      }
      if (bad) continue;
      if (allSat && commonSat) {
        res.reason = "found a box where a branch certainly holds";
        return res;
      }
      alive.push_back(b);
      undecided.insert(undecided.end(), open.begin(), open.end());
    }
    if (alive.empty()) continue;
    // An exact witness at the centre ends the search early.
    std::vector<Rational> centre;
    for (const auto& x : it.box) centre.push_back(x.mid());
    auto holds = [&](const Constraint& c) {
      int sg = sgn(c.poly.evalExact(centre));
      return c.rel == Relation::Eq ? sg == 0 : (c.rel == Relation::Gt ? sg > 0 : sg >= 0);
    };
    if (std::all_of(s.common.begin(), s.common.end(), holds))
      for (std::size_t b : alive)
        if (std::all_of(s.branches[b].begin(), s.branches[b].end(), holds)) {
          res.reason = "satisfied at a sample point";
          return res;
        }
    if (res.subdivisions >= maxSubdivisions) {
      res.reason = "subdivision budget exhausted";
      return res;
    }
    std::size_t split = it.box.size();
    Rational widest(0);
    for (const Constraint* c : undecided)
      for (std::size_t v : varsOf(*c))
        if (it.box[v].width() > widest) {
          widest = it.box[v].width();
          split = v;
        }
    if (split == it.box.size()) {
      res.reason = "undecided on a point box";
      return res;
    }
    ++res.subdivisions;
    Rational mid = it.box[split].mid();
    Item left{it.box, alive}, right{it.box, alive};
    left.box[split] = RealInterval(it.box[split].lo(), mid);
    right.box[split] = RealInterval(mid, it.box[split].hi());
    stack.push_back(std::move(right));
    stack.push_back(std::move(left));
  }
  res.status = RefuteStatus::Unsat;
  res.reason = "every box refuted";
  return res;
}

// ---------------------------------------------------------------- SMT-LIB

namespace {

std::string smtNumber(const Rational& q) {
  Rational a = abs(q);
  std::string body = a.get_den() == 1 ? a.get_num().get_str() : "(/ " + a.get_num().get_str() + " " + a.get_den().get_str() + ")";
  return sgn(q) < 0 ? "(- " + body + ")" : body;
}

std::string smtPoly(const SymPoly& p, const std::vector<std::string>& names) {
  if (p.isZero()) return "0";
  std::vector<std::string> terms;
  for (const auto& [m, c] : p.terms()) {
    std::vector<std::string> factors;
    if (c != 1 || m.empty()) factors.push_back(smtNumber(c));
    for (std::size_t i = 0; i < m.size(); ++i)
      for (unsigned e = 0; e < m[i]; ++e) factors.push_back(names.at(i));
    if (factors.size() == 1)
      terms.push_back(factors[0]);
    else {
      std::string t = "(*";
      for (const auto& f : factors) t += " " + f;
      terms.push_back(t + ")");
    }
  }
  if (terms.size() == 1) return terms[0];
  std::string s = "(+";
  for (const auto& t : terms) s += " " + t;
  return s + ")";
}

std::string smtConstraint(const Constraint& c, const std::vector<std::string>& names) {
  const char* op = c.rel == Relation::Eq ? "=" : (c.rel == Relation::Gt ? ">" : ">=");
  return std::string("(") + op + " " + smtPoly(c.poly, names) + " 0)";
}

}  // namespace

std::string emitSmtlib(const ConstraintSystem& s) {
  std::ostringstream o;
  o << "(set-logic QF_NRA)\n";
  for (const auto& v : s.vars) o << "(declare-fun " << v << " () Real)\n";
  for (std::size_t v = 0; v < s.vars.size(); ++v)
    if (s.bounds[v])
      o << "(assert (and (<= " << smtNumber(s.bounds[v]->lo()) << " " << s.vars[v] << ") (<= " << s.vars[v] << " "
        << smtNumber(s.bounds[v]->hi()) << ")))\n";
  for (const auto& c : s.common) o << "(assert " << smtConstraint(c, s.vars) << ")\n";
  if (s.branches.empty()) {
    o << "(assert false)\n";
  } else {
    o << "(assert (or";
    for (const auto& b : s.branches) {
      if (b.empty()) {
        o << " true";
        continue;
      }
      o << " (and";
      for (const auto& c : b) o << " " << smtConstraint(c, s.vars);
      o << ")";
    }
    o << "))\n";
  }
  o << "(check-sat)\n(exit)\n";
  return o.str();
}

std::string toString(SolverVerdict v) {
  switch (v) {
    case SolverVerdict::Unsat: return "unsat";
    case SolverVerdict::Sat: return "sat";
    default: return "unknown";
  }
}

std::optional<std::string> resolveSolver(const std::string& path) {
  if (path.empty()) return std::nullopt;
  if (path.find('/') != std::string::npos) {
    if (::access(path.c_str(), X_OK) == 0) return path;
    return std::nullopt;
  }
  const char* env = std::getenv("PATH");
  std::stringstream dirs(env ? env : "");
  std::string dir;
  while (std::getline(dirs, dir, ':')) {
    std::string cand = (dir.empty() ? "." : dir) + "/" + path;
    if (::access(cand.c_str(), X_OK) == 0) return cand;
  }
  return std::nullopt;
}

SolverVerdict runSolverOnText(const std::string& smt, const std::string& solverPath, double timeoutSeconds) {
  auto resolved = resolveSolver(solverPath);
  if (!resolved) throw SolverNotFound("solver not found or not executable: " + solverPath);
  const std::string& exe = *resolved;
  if (timeoutSeconds <= 0) return SolverVerdict::Unknown;

  char name[] = "/tmp/lrs-query-XXXXXX";
  int fd = ::mkstemp(name);
  if (fd < 0) throw std::runtime_error("cannot create temporary file");
  std::string file = std::string(name) + ".smt2";
  ::close(fd);
  ::unlink(name);
  {
    std::ofstream out(file);
    out << smt;
  }
  int pipefd[2];
  if (::pipe(pipefd) != 0) throw std::runtime_error("pipe failed");
  pid_t pid = ::fork();
  if (pid < 0) throw std::runtime_error("fork failed");
  if (pid == 0) {
    ::dup2(pipefd[1], 1);
    int devnull = ::open("/dev/null", O_WRONLY);
    if (devnull >= 0) ::dup2(devnull, 2);
    ::close(pipefd[0]);
    ::execl(exe.c_str(), exe.c_str(), file.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(pipefd[1]);
  std::string output;
  auto deadline = std::chrono::steady_clock::now() + std::chrono::duration<double>(timeoutSeconds);
  bool timedOut = false;
  char buf[4096];
  for (;;) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now()).count();
    if (left <= 0) {
      timedOut = true;
      break;
    }
    pollfd p{pipefd[0], POLLIN, 0};
    int rc = ::poll(&p, 1, static_cast<int>(std::min<long long>(left, 1000)));
    if (rc < 0) break;
    if (rc == 0) continue;
    ssize_t n = ::read(pipefd[0], buf, sizeof buf);
    if (n <= 0) break;
    output.append(buf, static_cast<std::size_t>(n));
  }
  if (timedOut) ::kill(pid, SIGKILL);
  int status = 0;
  ::waitpid(pid, &status, 0);
  ::close(pipefd[0]);
  ::unlink(file.c_str());
  if (timedOut) return SolverVerdict::Unknown;

  std::istringstream lines(output);
  std::string line;
  while (std::getline(lines, line)) {
    line.erase(0, line.find_first_not_of(" \t\r"));
    line.erase(line.find_last_not_of(" \t\r") + 1);
    if (line.empty()) continue;
    if (line == "unsat") return SolverVerdict::Unsat;
    if (line == "sat") return SolverVerdict::Sat;
    if (line == "unknown" || line == "timeout") return SolverVerdict::Unknown;
    throw MalformedSolverOutput("unexpected solver output: " + line);
  }
  throw MalformedSolverOutput("solver produced no verdict");
}

SolverVerdict externalSolverCheck(const ConstraintSystem& s, const std::string& solverPath, double timeoutSeconds) {
  return runSolverOnText(emitSmtlib(s), solverPath, timeoutSeconds);
}

}  // namespace lrs
