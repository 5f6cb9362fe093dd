#include "fredsing/report.hpp"

namespace fredsing {

namespace {

Json doubles(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

Json label_fields(Json doc, const KindLabel& l) {
  doc["kind"] = to_string(l.kind);
  doc["k"] = l.k;
  doc["label"] = to_string(l);
  return doc;
}

}  // namespace

Json to_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json to_json(const Tolerances& tol) {
  return {{"rank", tol.rank}, {"zero", tol.zero}, {"nonzero", tol.nonzero}};
}

Json to_json(const RouteEvidence& ev) {
  Json doc;
  doc["route"] = ev.route;
  doc["source_id"] = ev.source_id;
  doc = label_fields(doc, ev.decision.label);
  doc["transversality_order"] = ev.decision.transversality_order;
  doc["stage"] = ev.decision.stage;
  doc["k_max"] = ev.k_max;
  doc["J"] = doubles(ev.J);
  Json sv = Json::array();
  for (const auto& s : ev.I_singular_values) sv.push_back(doubles(s));
  doc["I_singular_values"] = sv;
  doc["error"] = ev.error;
  return doc;
}

Json to_json(const Classification& c) {
  Json doc;
  doc = label_fields(doc, c.label);
  doc["transversality_order"] = c.transversality_order;
  doc["stage"] = c.stage;
  const ClassificationReport& r = c.evidence;
  doc["point"] = to_json(r.point);
  doc["projected_from"] = r.projected_from ? to_json(*r.projected_from) : Json(nullptr);
  doc["kdim"] = r.kdim;
  doc["jacobian_singular_values"] = doubles(r.jacobian_singular_values);
  doc["route"] = to_string(r.route);
  doc["k_cap"] = r.k_cap;
  doc["tolerances"] = to_json(r.tol);
  doc["route_agreement"] = r.route_agreement;
  Json routes = Json::array();
  for (const auto& ev : r.routes) routes.push_back(to_json(ev));
  doc["routes"] = routes;
  return doc;
}

Json to_json(const Target& t) {
  Json doc;
  doc["description"] = t.description;
  doc["point"] = to_json(t.point);
  doc["expected"] = t.expected ? Json(to_string(*t.expected)) : Json(nullptr);
  doc["source"] = t.source;
  return doc;
}

Json to_json(const PropertyResult& p) {
  Json doc;
  doc["name"] = p.name;
  doc["status"] = p.skipped ? "skipped" : (p.pass() ? "pass" : "fail");
  doc["trials"] = p.trials;
  doc["passed"] = p.passed;
  doc["failures"] = p.failures;
  doc["note"] = p.note;
  return doc;
}

Json to_json(const StratumSample& s) {
  Json doc;
  doc["seed"] = s.seed;
  doc["radius"] = s.radius;
  doc["failures"] = s.failures;
  Json pts = Json::array();
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    pts.push_back({{"point", to_json(s.points[i])},
                   {"h_membership", s.h_membership[i]},
                   {"J0_residual", s.residuals[i]},
                   {"kdim", s.kdim[i]}});
  }
  doc["points"] = pts;
  return doc;
}

Json to_json(const StratificationRecord& r) {
  Json doc;
  doc["k"] = r.k;
  Json cod = Json::array();
  for (const auto& c : r.codimension)
    cod.push_back({{"h", c.h}, {"rank", c.rank}, {"singular_values", doubles(c.singular_values)},
                   {"pass", c.pass}});
  doc["codimension"] = cod;
  doc["J_k"] = r.J_k;
  doc["phi_tangent_distance"] = r.phi_tangent_distance;
  doc["phi_in_tangent"] = r.phi_in_tangent;
  doc["member_k_plus_1"] = r.member_k_plus_1;
  doc["dichotomy_pass"] = r.dichotomy_pass;
  doc["probes"] = to_json(r.probes);
  doc["probe_rank_failures"] = r.probe_rank_failures;
  doc["pass"] = r.pass;
  doc["failures"] = r.failures;
  return doc;
}

Json to_json(const TargetVerification& tv) {
  Json doc;
  doc["target"] = to_json(tv.target);
  doc["classification"] = to_json(tv.base);
  Json props = Json::array();
  for (const auto& p : tv.properties) props.push_back(to_json(p));
  doc["properties"] = props;
  doc["stratification"] = tv.stratification ? to_json(*tv.stratification) : Json(nullptr);
  return doc;
}

Json report_header(const std::string& command, const AnalysisConfig& config) {
  Json doc;
  doc["schema_version"] = kReportSchema;
  doc["command"] = command;
  doc["config"] = config_to_json(config);
  return doc;
}

std::string dump_report(const Json& doc, bool machine) {
  return doc.dump(machine ? -1 : 2) + "\n";
}

}  // namespace fredsing
