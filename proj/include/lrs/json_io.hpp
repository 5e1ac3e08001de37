#pragma once

// JSON forms of instances, certificates and verdicts. Rationals are
// "num/den" strings, intervals [lo, hi] pairs of such strings.

#include <lrs/problems.hpp>

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace lrs {

using Json = nlohmann::json;

struct MalformedInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json toJson(const Rational& q);
Json toJson(const RealInterval& x);
Json toJson(const ComplexBox& z);
Json toJson(const Clustering& c);
Json toJson(const DominantRootCertificate& d);
Json toJson(const RootConfiguration& r);
Json toJson(const SymPoly& p);  // [{"exponents": [...], "coeff": "a/b"}, ...]
Json toJson(const ConstraintSystem& s);
Json toJson(const Certificate& c);
Json toJson(const Trace& t);
Json toJson(const Verdict& v);

Rational rationalFromJson(const Json& j);
RealInterval intervalFromJson(const Json& j);
ComplexBox complexBoxFromJson(const Json& j);
Clustering clusteringFromJson(const Json& j);
DominantRootCertificate dominantFromJson(const Json& j);
RootConfiguration configurationFromJson(const Json& j);
SymPoly symPolyFromJson(const Json& j);
Certificate certificateFromJson(const Json& j);
Trace traceFromJson(const Json& j);
Verdict verdictFromJson(const Json& j);

// {"rational": "a/b"}, {"interval": ["lo", "hi"]}, {"pi-multiple": "a/b"};
// a bare string or integer is read as a rational.
RealName nameFromJson(const Json& j);
Json nameToJson(const RealName& n);  // derived names are not serializable

// {"order": n, "coeffs": [...], "inits": [...]}
LinRec instanceFromJson(const Json& j);
Json instanceToJson(const LinRec& r);

}  // namespace lrs
