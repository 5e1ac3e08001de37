#include "lrs/configs.hpp"

#include <algorithm>
#include <functional>

namespace lrs {

int RootConfiguration::order() const {
  int n = 0;
  for (const auto& v : reals) n += v.multiplicity;
  for (const auto& v : complexes) n += 2 * v.multiplicity;
  return n;
}

std::vector<std::string> RootConfiguration::varNames() const {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < reals.size(); ++i) names.push_back("rho" + std::to_string(i + 1));
  for (std::size_t j = 0; j < complexes.size(); ++j) {
    names.push_back("x" + std::to_string(j + 1));
    names.push_back("y" + std::to_string(j + 1));
  }
  for (int k = 1; k <= order(); ++k) names.push_back("u" + std::to_string(k));
  return names;
}

std::string RootConfiguration::describe() const {
  std::string s;
  for (std::size_t i = 0; i < reals.size(); ++i) {
    if (!s.empty()) s += " ";
    s += "rho" + std::to_string(i + 1) + "^" + std::to_string(reals[i].multiplicity) + "@" + std::to_string(reals[i].cluster);
  }
  for (std::size_t j = 0; j < complexes.size(); ++j) {
    if (!s.empty()) s += " ";
    s += "lambda" + std::to_string(j + 1) + "^" + std::to_string(complexes[j].multiplicity) + "@" +
         std::to_string(complexes[j].cluster);
  }
  return s;
}

bool operator==(const RootConfiguration& a, const RootConfiguration& b) {
  auto same = [](const std::vector<RootVar>& x, const std::vector<RootVar>& y) {
    return x.size() == y.size() && std::equal(x.begin(), x.end(), y.begin(), [](const RootVar& p, const RootVar& q) {
             return p.cluster == q.cluster && p.multiplicity == q.multiplicity;
           });
  };
  return same(a.reals, b.reals) && same(a.complexes, b.complexes);
}

namespace {

void compositions(int n, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = 1; k <= n; ++k) {
    cur.push_back(k);
    compositions(n - k, cur, out);
    cur.pop_back();
  }
}

void partitions(int n, int maxPart, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(n, maxPart); k >= 1; --k) {
    cur.push_back(k);
    partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}

struct ClusterOption {
  std::vector<int> realMults, complexMults;
};

std::vector<ClusterOption> optionsFor(int count, bool real) {
  std::vector<ClusterOption> out;
  std::vector<int> cur;
  if (!real) {
    std::vector<std::vector<int>> ps;
    partitions(count, count, cur, ps);
    for (auto& p : ps) out.push_back({{}, p});
    return out;
  }
  for (int pairs = 0; 2 * pairs <= count; ++pairs) {
    std::vector<std::vector<int>> cs, ps;
    compositions(count - 2 * pairs, cur, cs);
    partitions(pairs, pairs, cur, ps);
    for (auto& c : cs)
      for (auto& p : ps) out.push_back({c, p});
  }
  return out;
}

}  // namespace

std::vector<RootConfiguration> enumerateConfigurations(const Clustering& c) {
  std::vector<std::vector<ClusterOption>> perCluster;
  std::vector<int> clusterIndex;
  for (int j = 0; j < c.lowerBegin(); ++j) {
    perCluster.push_back(optionsFor(c.clusters[static_cast<std::size_t>(j)].count, j < c.realCount));
    clusterIndex.push_back(j);
  }
  std::vector<RootConfiguration> out;
  std::vector<std::size_t> pick(perCluster.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == perCluster.size()) {
      RootConfiguration r;
      for (std::size_t k = 0; k < perCluster.size(); ++k)
        for (int m : perCluster[k][pick[k]].realMults) r.reals.push_back({clusterIndex[k], m});
      for (std::size_t k = 0; k < perCluster.size(); ++k)
        for (int m : perCluster[k][pick[k]].complexMults) r.complexes.push_back({clusterIndex[k], m});
      out.push_back(std::move(r));
      return;
    }
    for (std::size_t o = 0; o < perCluster[i].size(); ++o) {
      pick[i] = o;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

std::vector<SymPoly> configurationCharPoly(const RootConfiguration& r) {
  std::vector<SymPoly> poly{SymPoly(1)};
  auto mul = [&](const std::vector<SymPoly>& f) {
    std::vector<SymPoly> next(poly.size() + f.size() - 1);
    for (std::size_t i = 0; i < poly.size(); ++i)
      for (std::size_t j = 0; j < f.size(); ++j) next[i + j] += poly[i] * f[j];
    poly = std::move(next);
  };
  for (std::size_t i = 0; i < r.reals.size(); ++i)
    for (int e = 0; e < r.reals[i].multiplicity; ++e) mul({-SymPoly::var(r.rhoVar(i)), SymPoly(1)});
  for (std::size_t j = 0; j < r.complexes.size(); ++j) {
    SymPoly x = SymPoly::var(r.xVar(j)), y = SymPoly::var(r.yVar(j));
    for (int e = 0; e < r.complexes[j].multiplicity; ++e) mul({x * x + y * y, SymPoly(-2) * x, SymPoly(1)});
  }
  return poly;
}

std::vector<SymPoly> associatedRecurrence(const RootConfiguration& r) {
  std::vector<SymPoly> p = configurationCharPoly(r);
  int n = r.order();
  std::vector<SymPoly> c;
  for (int j = 1; j <= n; ++j) c.push_back(-p[static_cast<std::size_t>(n - j)]);
  return c;
}

DomainSystem domainSystem(const RootConfiguration& r, const Clustering& c, const std::vector<RealInterval>& initBox) {
  DomainSystem d;
  d.vars = r.varNames();
  d.bounds.assign(d.vars.size(), std::nullopt);
  for (std::size_t i = 0; i < r.reals.size(); ++i) {
    d.bounds[r.rhoVar(i)] = c.clusters.at(static_cast<std::size_t>(r.reals[i].cluster)).box.re();
    if (i + 1 < r.reals.size())
      d.constraints.push_back({SymPoly::var(r.rhoVar(i)) - SymPoly::var(r.rhoVar(i + 1)), Relation::Gt});
  }
  for (std::size_t j = 0; j < r.complexes.size(); ++j) {
    const ComplexBox& b = c.clusters.at(static_cast<std::size_t>(r.complexes[j].cluster)).box;
    d.bounds[r.xVar(j)] = b.re();
    Rational ylo = sgn(b.im().lo()) > 0 ? b.im().lo() : Rational(0);
    d.bounds[r.yVar(j)] = RealInterval(ylo, b.im().hi());
    d.constraints.push_back({SymPoly::var(r.yVar(j)), Relation::Gt});
    for (std::size_t k = 0; k < j; ++k) {
      if (r.complexes[k].cluster != r.complexes[j].cluster) continue;
      SymPoly dx = SymPoly::var(r.xVar(j)) - SymPoly::var(r.xVar(k));
      SymPoly dy = SymPoly::var(r.yVar(j)) - SymPoly::var(r.yVar(k));
      d.constraints.push_back({dx * dx + dy * dy, Relation::Gt});
    }
  }
  for (std::size_t k = 1; k <= initBox.size() && k <= static_cast<std::size_t>(r.order()); ++k)
    d.bounds[r.uVar(k)] = initBox[k - 1];
  return d;
}

}  // namespace lrs
