#include "fredsing/config.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "fredsing/errors.hpp"
#include "fredsing/rng.hpp"

namespace fredsing {

using nlohmann::ordered_json;

namespace {

void check_keys(const ordered_json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigParseError(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      throw ConfigParseError("unknown key '" + key + "' in " + where);
  }
}

template <class T>
T get_as(const ordered_json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigParseError("'" + key + "' has the wrong type");
  }
}

TrigPoly trig_from_json(const ordered_json& v, const std::string& key) {
  if (!v.is_array()) throw ConfigParseError("'" + key + "' must be a list of [freq, cos, sin]");
  TrigPoly out;
  for (const auto& t : v) {
    if (!t.is_array() || t.size() != 3)
      throw ConfigParseError("'" + key + "' entries must be [freq, cos, sin] triples");
    const double f = get_as<double>(t[0], key);
    if (f < 0 || f != static_cast<int>(f))
      throw ConfigParseError("'" + key + "' frequencies must be non-negative integers");
    out.push_back({static_cast<int>(f), get_as<double>(t[1], key), get_as<double>(t[2], key)});
  }
  return out;
}

ordered_json trig_to_json(const TrigPoly& p) {
  ordered_json a = ordered_json::array();
  for (const auto& t : p) a.push_back({t.freq, t.cos_amp, t.sin_amp});
  return a;
}

ordered_json vector_to_json(const Eigen::VectorXd& v) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

// p is a constant function (all frequencies zero).
std::optional<double> constant_value(const TrigPoly& p) {
  double c = 0.0;
  for (const auto& t : p) {
    if (t.freq != 0) return std::nullopt;
    c += t.cos_amp;
  }
  return c;
}

}  // namespace

Scheme parse_scheme(const std::string& name) {
  if (name == "spectral") return Scheme::spectral;
  if (name == "finite_difference" || name == "fd") return Scheme::finite_difference;
  throw UnknownName("no scheme named '" + name + "'");
}

Nonlinearity parse_nonlinearity(const std::string& name) {
  if (name == "p7") return Nonlinearity::p7;
  if (name == "poly") return Nonlinearity::poly;
  if (name == "exp") return Nonlinearity::exp;
  throw UnknownName("no nonlinearity named '" + name + "'");
}

TrigPoly parse_trig_list(const std::string& text) {
  TrigPoly out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    std::replace(item.begin(), item.end(), ',', ' ');
    std::istringstream is(item);
    double f = 0, c = 0, s = 0;
    std::string rest;
    if (!(is >> f >> c >> s) || (is >> rest) || f < 0 || f != static_cast<int>(f))
      throw ConfigParseError("bad trig term '" + item + "', expected freq,cos,sin");
    out.push_back({static_cast<int>(f), c, s});
  }
  return out;
}

ResolvedProblem resolve_problem(const ProblemSpec& spec) {
  std::optional<ResolvedProblem> base;
  if (spec.type == ProblemSpec::Type::gallery) {
    GalleryEntry e = gallery_map(spec.gallery_name, spec.params);
    std::vector<Target> fx;
    for (const auto& f : e.expected) fx.push_back({f.description, f.point, f.expected, f.source});
    const std::string p = format_params(e.params);
    base.emplace(ResolvedProblem{e.name + (p.empty() ? "" : "(" + p + ")"), e.model, fx, {}});
  } else {
    const PeriodicProblem& pr = spec.bvp;
    MapModel m = make_periodic_bvp(pr);
    Target origin{"u = 0", Eigen::VectorXd::Zero(pr.N), std::nullopt, ""};
    const std::optional<double> pc = constant_value(pr.p);
    if (pr.form == Nonlinearity::p7 && pr.scheme == Scheme::spectral && pc && !pr.a.empty()) {
      origin.expected = *pc != 0.0 ? KindLabel{Kind::KSingularity, 3} : KindLabel{Kind::MaximalKTransverse, 2};
      origin.source = "closed-form functionals of the quadratic-quartic periodic problem at u = 0";
    }
    base.emplace(ResolvedProblem{m.label(), m, {origin}, {}});
  }
  if (!spec.conjugate_seed) return std::move(*base);
  Rng rng(*spec.conjugate_seed);
  const AffinePair affine = random_affine_pair(base->map.dim(), rng);
  ResolvedProblem out{"conj(" + base->id + ";seed=" + std::to_string(*spec.conjugate_seed) + ")",
                      conjugate(base->map, affine), {}, affine};
  for (Target t : base->fixtures) {
    t.point = affine.gamma(t.point);
    t.description = "gamma(" + t.description + ")";
    out.fixtures.push_back(std::move(t));
  }
  return out;
}

std::vector<Target> select_targets(const AnalysisConfig& config, const ResolvedProblem& problem) {
  if (config.point) {
    if (config.point->size() != problem.map.dim())
      throw ConfigParseError("point has " + std::to_string(config.point->size()) +
                             " components, the problem has dimension " +
                             std::to_string(problem.map.dim()));
    for (const Target& t : problem.fixtures)
      if (t.point.size() == config.point->size() && t.point == *config.point) return {t};
    return {Target{"given point", *config.point, std::nullopt, ""}};
  }
  if (config.fixture) {
    const int i = *config.fixture;
    if (i < 0 || i >= static_cast<int>(problem.fixtures.size()))
      throw ConfigParseError("fixture index " + std::to_string(i) + " out of range (problem has " +
                             std::to_string(problem.fixtures.size()) + ")");
    return {problem.fixtures[i]};
  }
  return problem.fixtures;
}

void validate_config(const AnalysisConfig& c) {
  if (!(c.tol.rank > 0 && c.tol.zero > 0 && c.tol.nonzero > 0))
    throw ConfigParseError("tolerances must be positive");
  if (!(c.tol.zero < c.tol.nonzero)) throw ConfigParseError("tol_zero must be below tol_nonzero");
  if (c.k_cap < 1 || c.k_cap > kMaxKCap)
    throw ConfigParseError("k_cap must lie in [1, " + std::to_string(kMaxKCap) + "]");
  if (c.trials < 0) throw ConfigParseError("trials must be non-negative");
  if (c.samples < 0) throw ConfigParseError("samples must be non-negative");
}

AnalysisConfig parse_config(const ordered_json& doc) {
  check_keys(doc, "config",
             {"schema_version", "problem", "point", "fixture", "k_cap", "tolerances", "route", "seed",
              "trials", "samples", "project", "output"});
  if (!doc.contains("schema_version") || doc["schema_version"] != kConfigSchema)
    throw ConfigParseError(std::string("schema_version must be \"") + kConfigSchema + "\"");
  AnalysisConfig c;
  if (!doc.contains("problem")) throw ConfigParseError("missing 'problem'");
  const ordered_json& p = doc["problem"];
  check_keys(p, "problem", {"gallery", "params", "bvp", "conjugate_seed"});
  if (p.contains("gallery") == p.contains("bvp"))
    throw ConfigParseError("problem needs exactly one of 'gallery' or 'bvp'");
  if (p.contains("gallery")) {
    c.problem.type = ProblemSpec::Type::gallery;
    c.problem.gallery_name = get_as<std::string>(p["gallery"], "gallery");
    if (p.contains("params")) {
      check_keys(p["params"], "params", {"k", "n", "dimZ", "N", "eps"});
      for (const auto& [k, v] : p["params"].items()) c.problem.params[k] = get_as<double>(v, k);
    }
  } else {
    if (p.contains("params")) throw ConfigParseError("'params' only applies to gallery problems");
    c.problem.type = ProblemSpec::Type::bvp;
    const ordered_json& b = p["bvp"];
    check_keys(b, "bvp", {"N", "form", "scheme", "a", "p", "poly"});
    PeriodicProblem& pr = c.problem.bvp;
    if (b.contains("N")) pr.N = get_as<int>(b["N"], "N");
    if (b.contains("form")) pr.form = parse_nonlinearity(get_as<std::string>(b["form"], "form"));
    if (b.contains("scheme")) pr.scheme = parse_scheme(get_as<std::string>(b["scheme"], "scheme"));
    if (b.contains("a")) pr.a = trig_from_json(b["a"], "a");
    if (b.contains("p")) pr.p = trig_from_json(b["p"], "p");
    if (b.contains("poly")) pr.poly = get_as<std::vector<double>>(b["poly"], "poly");
  }
  if (p.contains("conjugate_seed"))
    c.problem.conjugate_seed = get_as<std::uint64_t>(p["conjugate_seed"], "conjugate_seed");

  if (doc.contains("point") && doc.contains("fixture"))
    throw ConfigParseError("give at most one of 'point' and 'fixture'");
  if (doc.contains("point")) {
    const auto v = get_as<std::vector<double>>(doc["point"], "point");
    c.point = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
  }
  if (doc.contains("fixture")) c.fixture = get_as<int>(doc["fixture"], "fixture");
  if (doc.contains("k_cap")) c.k_cap = get_as<int>(doc["k_cap"], "k_cap");
  if (doc.contains("tolerances")) {
    const ordered_json& t = doc["tolerances"];
    check_keys(t, "tolerances", {"rank", "zero", "nonzero"});
    if (t.contains("rank")) c.tol.rank = get_as<double>(t["rank"], "rank");
    if (t.contains("zero")) c.tol.zero = get_as<double>(t["zero"], "zero");
    if (t.contains("nonzero")) c.tol.nonzero = get_as<double>(t["nonzero"], "nonzero");
  }
  if (doc.contains("route")) {
    try {
      c.route = parse_route(get_as<std::string>(doc["route"], "route"));
    } catch (const UnknownName& e) {
      throw ConfigParseError(e.what());
    }
  }
  if (doc.contains("seed")) c.seed = get_as<std::uint64_t>(doc["seed"], "seed");
  if (doc.contains("trials")) c.trials = get_as<int>(doc["trials"], "trials");
  if (doc.contains("samples")) c.samples = get_as<int>(doc["samples"], "samples");
  if (doc.contains("project")) c.project = get_as<bool>(doc["project"], "project");
  if (doc.contains("output")) c.output_path = get_as<std::string>(doc["output"], "output");
  validate_config(c);
  return c;
}

AnalysisConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigParseError("cannot open config '" + path + "'");
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigParseError(path + ": " + e.what());
  }
  return parse_config(doc);
}

ordered_json config_to_json(const AnalysisConfig& c) {
  ordered_json doc;
  doc["schema_version"] = kConfigSchema;
  ordered_json p;
  if (c.problem.type == ProblemSpec::Type::gallery) {
    p["gallery"] = c.problem.gallery_name;
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : c.problem.params) params[k] = v;
    p["params"] = params;
  } else {
    const PeriodicProblem& pr = c.problem.bvp;
    p["bvp"] = {{"N", pr.N},
                {"form", to_string(pr.form)},
                {"scheme", to_string(pr.scheme)},
                {"a", trig_to_json(pr.a)},
                {"p", trig_to_json(pr.p)},
                {"poly", pr.poly}};
  }
  if (c.problem.conjugate_seed) p["conjugate_seed"] = *c.problem.conjugate_seed;
  doc["problem"] = p;
  if (c.point) doc["point"] = vector_to_json(*c.point);
  if (c.fixture) doc["fixture"] = *c.fixture;
  doc["k_cap"] = c.k_cap;
  doc["tolerances"] = {{"rank", c.tol.rank}, {"zero", c.tol.zero}, {"nonzero", c.tol.nonzero}};
  doc["route"] = to_string(c.route);
  doc["seed"] = c.seed;
  doc["trials"] = c.trials;
  doc["samples"] = c.samples;
  doc["project"] = c.project;
  return doc;
}

}  // namespace fredsing
