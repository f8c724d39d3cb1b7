#include "padiclab/serialize.hpp"

#include "padiclab/errors.hpp"

namespace padiclab {

using nlohmann::json;

json to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const json& j) {
  if (!j.is_string()) throw ConfigError("expected a fraction string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

json to_json(const Scalar& s) {
  json out;
  out["val"] = s.is_zero() ? json() : to_json(s.val());
  out["digits"] = s.digits();
  out["precision"] = s.precision();
  return out;
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.size(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const AffineRoot& a) {
  return {{"gradient", a.gradient}, {"constant", to_json(a.constant)}, {"text", a.to_string()}};
}

json roots_json(const GroupType& g) {
  json roots = json::array();
  for (const auto& a : simple_affine_roots(g)) roots.push_back(to_json(a));
  return {{"schema", 1}, {"group", g.to_string()}, {"roots", roots}};
}

json to_json(const InclusionCertificate& cert) {
  json entries = json::array();
  for (const auto& e : cert.entries) {
    json coeffs = json::array();
    for (const auto& c : e.coefficients) coeffs.push_back(to_json(c));
    entries.push_back({{"root", e.target.to_string()}, {"coefficients", coeffs}, {"slack", to_json(e.slack)}});
  }
  json g_roots = json::array(), t_roots = json::array();
  for (const auto& a : cert.g_roots) g_roots.push_back(a.to_string());
  for (const auto& a : cert.theta_roots) t_roots.push_back(a.to_string());
  return {{"pair", cert.pair.to_string()},
          {"g_roots", g_roots},
          {"theta_roots", t_roots},
          {"entries", entries},
          {"valid", validate(cert)}};
}

json to_json(const DescentTrace& trace) {
  json steps = json::array();
  for (const auto& s : trace.steps)
    steps.push_back({{"anti_depth", to_json(s.anti_depth)}, {"power", s.power}});
  return {{"converged", trace.converged},
          {"target", to_json(trace.target)},
          {"residual_anti_depth", to_json(trace.residual_anti_depth)},
          {"steps", steps},
          {"falsification", trace.falsification},
          {"conjugator", to_json(trace.conjugator)},
          {"result", to_json(trace.result)}};
}

json to_json(const DescentPairDescriptor& d) {
  json x = json::array();
  for (const auto& c : d.x) x.push_back(to_json(c));
  return {{"x", x},
          {"r", to_json(d.r)},
          {"h_class", d.h_class},
          {"g_classes", d.g_classes},
          {"h_volume", d.h_volume},
          {"g_volume", d.g_volume}};
}

DescentPairDescriptor descent_pair_from_json(const json& j) {
  try {
    DescentPairDescriptor d;
    for (const auto& c : j.at("x")) d.x.push_back(rational_from_json(c));
    d.r = rational_from_json(j.at("r"));
    d.h_class = j.at("h_class").get<GradedQuotient::Element>();
    d.g_classes = j.at("g_classes").get<std::vector<GradedQuotient::Element>>();
    d.h_volume = j.at("h_volume").get<std::string>();
    d.g_volume = j.at("g_volume").get<std::string>();
    return d;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed descriptor: ") + e.what());
  }
}

}  // namespace padiclab
