#include "lrs/json_io.hpp"

namespace lrs {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw MalformedInput(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

long longField(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw MalformedInput(std::string("field \"") + key + "\" must be an integer");
  return v.get<long>();
}

template <class T, class F>
std::vector<T> listFrom(const Json& j, F&& f) {
  if (!j.is_array()) throw MalformedInput("expected an array");
  std::vector<T> out;
  for (const auto& x : j) out.push_back(f(x));
  return out;
}

template <class T, class F>
Json listTo(const std::vector<T>& xs, F&& f) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(f(x));
  return a;
}

Json toJsonRealList(const std::vector<RealInterval>& xs) {
  return listTo(xs, [](const RealInterval& x) { return toJson(x); });
}

std::vector<RealInterval> realListFromJson(const Json& j) { return listFrom<RealInterval>(j, intervalFromJson); }

}  // namespace

Json toJson(const Rational& q) { return toString(q); }

Json toJson(const RealInterval& x) { return Json::array({toString(x.lo()), toString(x.hi())}); }

Json toJson(const ComplexBox& z) { return {{"re", toJson(z.re())}, {"im", toJson(z.im())}}; }

Json toJson(const Clustering& c) {
  Json cl = Json::array();
  for (const auto& x : c.clusters) cl.push_back({{"box", toJson(x.box)}, {"count", x.count}});
  return {{"clusters", cl},
          {"realCount", c.realCount},
          {"upperCount", c.upperCount},
          {"delta", toJson(c.delta)},
          {"level", c.level}};
}

Json toJson(const DominantRootCertificate& d) {
  return {{"rootBox", toJson(d.rootBox)},
          {"coeffBox", toJson(d.coeffBox)},
          {"separationM", toJson(d.separationM)},
          {"clustering", toJson(d.clustering)},
          {"precision", d.precision}};
}

Json toJson(const RootConfiguration& r) {
  auto vars = [](const std::vector<RootVar>& vs) {
    return listTo(vs, [](const RootVar& v) { return Json{{"cluster", v.cluster}, {"multiplicity", v.multiplicity}}; });
  };
  return {{"reals", vars(r.reals)}, {"complexes", vars(r.complexes)}, {"describe", r.describe()}};
}

Json toJson(const SymPoly& p) {
  Json a = Json::array();
  for (const auto& [m, c] : p.terms()) a.push_back({{"exponents", m}, {"coeff", toString(c)}});
  return a;
}

Json toJson(const ConstraintSystem& s) {
  auto constraint = [](const Constraint& c) { return Json{{"poly", toJson(c.poly)}, {"rel", toString(c.rel)}}; };
  Json bounds = Json::array();
  for (const auto& b : s.bounds) bounds.push_back(b ? toJson(*b) : Json(nullptr));
  Json branches = Json::array();
  for (const auto& b : s.branches) branches.push_back(listTo(b, constraint));
  return {{"vars", s.vars}, {"bounds", bounds}, {"common", listTo(s.common, constraint)}, {"branches", branches}};
}

Json toJson(const Certificate& cert) {
  return std::visit(
      [](const auto& c) -> Json {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, PositivityPositive>) {
          return {{"type", "positivity-positive"}, {"dominant", toJson(c.dominant)}, {"round", c.round},
                  {"coeff", toJson(c.coeff)},      {"coeffPrecision", c.coeffPrecision},
                  {"N", c.N},                      {"tailPrecision", c.tailPrecision},
                  {"prefixPrecision", c.prefixPrecision}};
        } else if constexpr (std::is_same_v<T, PositivityNegative>) {
          return {{"type", "positivity-negative"}, {"k", c.k}, {"precision", c.precision}, {"value", toJson(c.value)}};
        } else if constexpr (std::is_same_v<T, SkolemNegative>) {
          return {{"type", "skolem-negative"},
                  {"test", toString(c.test)},
                  {"round", c.round},
                  {"precision", c.precision},
                  {"clustering", toJson(c.clustering)},
                  {"roots", toJsonRealList(c.roots)},
                  {"coeffs", toJsonRealList(c.coeffs)},
                  {"coeffPrecision", c.coeffPrecision},
                  {"separationM", toJson(c.separationM)},
                  {"exactEqualModuli", c.exactEqualModuli},
                  {"K", c.K},
                  {"tailPrecision", c.tailPrecision},
                  {"prefixPrecision", c.prefixPrecision}};
        } else if constexpr (std::is_same_v<T, UppPositive>) {
          return {{"type", "upp-positive"},
                  {"dominant", toJson(c.dominant)},
                  {"round", c.round},
                  {"coeff", toJson(c.coeff)},
                  {"coeffPrecision", c.coeffPrecision}};
        } else if constexpr (std::is_same_v<T, UppSimpleNegative>) {
          Json j = {{"type", "upp-simple-negative"}, {"condition", c.condition},        {"round", c.round},
                    {"precision", c.precision},      {"clustering", toJson(c.clustering)}, {"root", toJson(c.root)},
                    {"coeff", toJson(c.coeff)},      {"coeffPrecision", c.coeffPrecision}};
          j["dominant"] = c.dominant ? toJson(*c.dominant) : Json(nullptr);
          return j;
        } else {
          Json records = Json::array();
          for (const auto& r : c.records)
            records.push_back(
                {{"configuration", toJson(r.configuration)}, {"backend", r.backend}, {"subdivisions", r.subdivisions}});
          return {{"type", "upp-negative"},
                  {"round", c.round},
                  {"precision", c.precision},
                  {"clustering", toJson(c.clustering)},
                  {"initBox", toJsonRealList(c.initBox)},
                  {"mode", toString(c.mode)},
                  {"records", records}};
        }
      },
      cert);
}

Json toJson(const Trace& t) {
  return {{"rounds", t.rounds},
          {"positiveAttempts", t.positiveAttempts},
          {"negativeAttempts", t.negativeAttempts},
          {"termsChecked", t.termsChecked},
          {"configurationsTried", t.configurationsTried},
          {"subdivisions", t.subdivisions},
          {"events", t.events}};
}

Json toJson(const Verdict& v) {
  Json j = {{"problem", toString(v.problem)}, {"verdict", v.halted ? "halted" : "budget-exhausted"}};
  if (v.halted) j["answer"] = v.answer;
  j["certificate"] = toJson(v.certificate);
  j["trace"] = toJson(v.trace);
  return j;
}

// ------------------------------------------------------------------- parsing

Rational rationalFromJson(const Json& j) {
  try {
    if (j.is_string()) return parseRational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  } catch (const ParseError& e) {
    throw MalformedInput(e.what());
  }
  throw MalformedInput("expected a rational as a string or integer");
}

RealInterval intervalFromJson(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw MalformedInput("expected an interval [lo, hi]");
  Rational lo = rationalFromJson(j[0]), hi = rationalFromJson(j[1]);
  if (lo > hi) throw MalformedInput("interval with lo > hi");
  return RealInterval(lo, hi);
}

ComplexBox complexBoxFromJson(const Json& j) {
  return ComplexBox(intervalFromJson(field(j, "re")), intervalFromJson(field(j, "im")));
}

Clustering clusteringFromJson(const Json& j) {
  Clustering c;
  for (const auto& x : field(j, "clusters")) c.clusters.push_back({complexBoxFromJson(field(x, "box")), static_cast<int>(longField(x, "count"))});
  c.realCount = static_cast<int>(longField(j, "realCount"));
  c.upperCount = static_cast<int>(longField(j, "upperCount"));
  c.delta = rationalFromJson(field(j, "delta"));
  c.level = static_cast<int>(longField(j, "level"));
  return c;
}

DominantRootCertificate dominantFromJson(const Json& j) {
  DominantRootCertificate d;
  d.rootBox = intervalFromJson(field(j, "rootBox"));
  d.coeffBox = intervalFromJson(field(j, "coeffBox"));
  d.separationM = rationalFromJson(field(j, "separationM"));
  d.clustering = clusteringFromJson(field(j, "clustering"));
  d.precision = longField(j, "precision");
  return d;
}

RootConfiguration configurationFromJson(const Json& j) {
  auto vars = [](const Json& a) {
    return listFrom<RootVar>(a, [](const Json& v) {
      return RootVar{static_cast<int>(longField(v, "cluster")), static_cast<int>(longField(v, "multiplicity"))};
    });
  };
  return RootConfiguration{vars(field(j, "reals")), vars(field(j, "complexes"))};
}

SymPoly symPolyFromJson(const Json& j) {
  if (!j.is_array()) throw MalformedInput("polynomial must be an array of terms");
  SymPoly p;
  for (const auto& t : j) {
    const Json& e = field(t, "exponents");
    if (!e.is_array()) throw MalformedInput("exponents must be an array");
    SymPoly term(rationalFromJson(field(t, "coeff")));
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i].is_number_unsigned()) throw MalformedInput("exponents must be non-negative integers");
      term = term * SymPoly::var(i).pow(e[i].get<unsigned>());
    }
    p += term;
  }
  return p;
}

Certificate certificateFromJson(const Json& j) {
  if (j.is_null()) return std::monostate{};
  const std::string type = field(j, "type").get<std::string>();
  if (type == "positivity-positive") {
    PositivityPositive c;
    c.dominant = dominantFromJson(field(j, "dominant"));
    c.round = longField(j, "round");
    c.coeff = intervalFromJson(field(j, "coeff"));
    c.coeffPrecision = longField(j, "coeffPrecision");
    c.N = longField(j, "N");
    c.tailPrecision = longField(j, "tailPrecision");
    c.prefixPrecision = longField(j, "prefixPrecision");
    return c;
  }
  if (type == "positivity-negative") {
    return PositivityNegative{longField(j, "k"), longField(j, "precision"), intervalFromJson(field(j, "value"))};
  }
  if (type == "skolem-negative") {
    SkolemNegative c;
    std::string test = field(j, "test").get<std::string>();
    if (test != "one-root" && test != "two-root") throw MalformedInput("unknown Skolem test " + test);
    c.test = test == "one-root" ? SkolemTest::OneRoot : SkolemTest::TwoRoot;
    c.round = longField(j, "round");
    c.precision = longField(j, "precision");
    c.clustering = clusteringFromJson(field(j, "clustering"));
    c.roots = realListFromJson(field(j, "roots"));
    c.coeffs = realListFromJson(field(j, "coeffs"));
    c.coeffPrecision = longField(j, "coeffPrecision");
    c.separationM = rationalFromJson(field(j, "separationM"));
    c.exactEqualModuli = field(j, "exactEqualModuli").get<bool>();
    c.K = longField(j, "K");
    c.tailPrecision = longField(j, "tailPrecision");
    c.prefixPrecision = longField(j, "prefixPrecision");
    return c;
  }
  if (type == "upp-positive") {
    UppPositive c;
    c.dominant = dominantFromJson(field(j, "dominant"));
    c.round = longField(j, "round");
    c.coeff = intervalFromJson(field(j, "coeff"));
    c.coeffPrecision = longField(j, "coeffPrecision");
    return c;
  }
  if (type == "upp-simple-negative") {
    UppSimpleNegative c;
    c.condition = static_cast<int>(longField(j, "condition"));
    c.round = longField(j, "round");
    c.precision = longField(j, "precision");
    c.clustering = clusteringFromJson(field(j, "clustering"));
    c.root = complexBoxFromJson(field(j, "root"));
    c.coeff = complexBoxFromJson(field(j, "coeff"));
    c.coeffPrecision = longField(j, "coeffPrecision");
    if (j.contains("dominant") && !j.at("dominant").is_null()) c.dominant = dominantFromJson(j.at("dominant"));
    return c;
  }
  if (type == "upp-negative") {
    UppNegative c;
    c.round = longField(j, "round");
    c.precision = longField(j, "precision");
    c.clustering = clusteringFromJson(field(j, "clustering"));
    c.initBox = realListFromJson(field(j, "initBox"));
    try {
      c.mode = parseSentenceMode(field(j, "mode").get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw MalformedInput(e.what());
    }
    for (const auto& r : field(j, "records"))
      c.records.push_back({configurationFromJson(field(r, "configuration")), field(r, "backend").get<std::string>(),
                           longField(r, "subdivisions")});
    return c;
  }
  throw MalformedInput("unknown certificate type " + type);
}

Trace traceFromJson(const Json& j) {
  Trace t;
  t.rounds = longField(j, "rounds");
  t.positiveAttempts = longField(j, "positiveAttempts");
  t.negativeAttempts = longField(j, "negativeAttempts");
  t.termsChecked = longField(j, "termsChecked");
  t.configurationsTried = longField(j, "configurationsTried");
  t.subdivisions = longField(j, "subdivisions");
  t.events = field(j, "events").get<std::vector<std::string>>();
  return t;
}

Verdict verdictFromJson(const Json& j) {
  try {
    Verdict v;
    v.problem = parseProblem(field(j, "problem").get<std::string>());
    std::string verdict = field(j, "verdict").get<std::string>();
    if (verdict != "halted" && verdict != "budget-exhausted") throw MalformedInput("unknown verdict " + verdict);
    v.halted = verdict == "halted";
    if (v.halted) v.answer = static_cast<int>(longField(j, "answer"));
    if (j.contains("certificate")) v.certificate = certificateFromJson(j.at("certificate"));
    if (j.contains("trace")) v.trace = traceFromJson(j.at("trace"));
    return v;
  } catch (const Json::exception& e) {
    throw MalformedInput(e.what());
  } catch (const std::invalid_argument& e) {
    throw MalformedInput(e.what());
  }
}

RealName nameFromJson(const Json& j) {
  if (j.is_string() || j.is_number_integer()) return RealName::rational(rationalFromJson(j));
  if (!j.is_object() || j.size() != 1) throw MalformedInput("a name is {\"rational\"|\"interval\"|\"pi-multiple\": ...}");
  if (j.contains("rational")) return RealName::rational(rationalFromJson(j.at("rational")));
  if (j.contains("interval")) return RealName::interval(intervalFromJson(j.at("interval")));
  if (j.contains("pi-multiple")) return RealName::piMultiple(rationalFromJson(j.at("pi-multiple")));
  throw MalformedInput("unknown name kind " + j.begin().key());
}

Json nameToJson(const RealName& n) {
  switch (n.kind()) {
    case NameKind::Rational: return {{"rational", toString(*n.exactValue())}};
    case NameKind::Interval: return {{"interval", toJson(*n.fixedRange())}};
    case NameKind::PiMultiple: return {{"pi-multiple", toString(n.piFactor())}};
    default: throw std::invalid_argument("derived names have no JSON form");
  }
}

LinRec instanceFromJson(const Json& j) {
  try {
    const Json& c = field(j, "coeffs");
    const Json& u = field(j, "inits");
    auto coeffs = listFrom<RealName>(c, nameFromJson);
    auto inits = listFrom<RealName>(u, nameFromJson);
    if (j.contains("order") && (!j.at("order").is_number_integer() || j.at("order").get<long>() != static_cast<long>(coeffs.size())))
      throw MalformedInput("order does not match the number of coefficients");
    return LinRec(std::move(coeffs), std::move(inits));
  } catch (const Json::exception& e) {
    throw MalformedInput(e.what());
  } catch (const std::invalid_argument& e) {
    throw MalformedInput(e.what());
  }
}

Json instanceToJson(const LinRec& r) {
  Json c = Json::array(), u = Json::array();
  for (const auto& x : r.coeffs()) c.push_back(nameToJson(x));
  for (const auto& x : r.inits()) u.push_back(nameToJson(x));
  return {{"order", r.order()}, {"coeffs", c}, {"inits", u}};
}

}  // namespace lrs
