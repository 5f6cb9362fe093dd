#include "fredsing/commands.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "fredsing/errors.hpp"
#include "fredsing/report.hpp"

namespace fredsing {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void emit(const Json& doc, const AnalysisConfig& config, const OutputOptions& output,
          std::ostream& out) {
  const std::string text = dump_report(doc, output.machine);
  if (config.output_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(config.output_path, std::ios::binary);
  if (!f) throw ConfigParseError("cannot write '" + config.output_path + "'");
  f << text;
}

// Runs `body`, mapping library and parse errors to kExitError.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitError;
}

void finish_timing(Json& doc, Clock::time_point t0, const OutputOptions& output, std::ostream& err) {
  const double dt = seconds_since(t0);
  err << "wall time: " << std::fixed << std::setprecision(3) << dt << " s\n";
  err.unsetf(std::ios::floatfield);
  if (output.timing) doc["wall_time_s"] = dt;
}

ClassifyOptions classify_options(const AnalysisConfig& c) {
  ClassifyOptions o;
  o.k_cap = c.k_cap;
  o.tol = c.tol;
  o.route = c.route;
  o.project = c.project;
  return o;
}

Json expected_match(const Target& t, const Classification& c) {
  if (!t.expected) return nullptr;
  return c.label == *t.expected;
}

}  // namespace

int cmd_classify(const AnalysisConfig& config, const OutputOptions& output, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&] {
    const auto t0 = Clock::now();
    validate_config(config);
    const ResolvedProblem problem = resolve_problem(config.problem);
    Json doc = report_header("classify", config);
    doc["problem_id"] = problem.id;
    Json results = Json::array();
    int indeterminate = 0;
    for (const Target& t : select_targets(config, problem)) {
      const Classification c = classify_point(problem.map, t.point, classify_options(config));
      if (c.kind() == Kind::Indeterminate) ++indeterminate;
      Json r;
      r["target"] = to_json(t);
      r["classification"] = to_json(c);
      r["matches_expected"] = expected_match(t, c);
      results.push_back(r);
    }
    doc["results"] = results;
    doc["summary"] = {{"points", results.size()}, {"indeterminate", indeterminate}};
    finish_timing(doc, t0, output, err);
    emit(doc, config, output, out);
    return indeterminate > 0 ? kExitIndeterminate : kExitDecisive;
  });
}

int cmd_verify(const AnalysisConfig& config, const OutputOptions& output, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    const auto t0 = Clock::now();
    validate_config(config);
    const ResolvedProblem problem = resolve_problem(config.problem);
    VerifyOptions vo;
    vo.trials = config.trials;
    vo.membership_trials = std::min(config.trials, 20);
    vo.probes = config.samples;
    vo.seed = config.seed;
    vo.k_cap = config.k_cap;
    vo.tol = config.tol;
    vo.route = config.route;
    const VerifyReport vr = verify_problem(problem, select_targets(config, problem), vo);
    Json doc = report_header("verify", config);
    doc["problem_id"] = problem.id;
    Json targets = Json::array();
    for (const auto& tv : vr.targets) targets.push_back(to_json(tv));
    doc["targets"] = targets;
    doc["summary"] = {{"properties_passed", vr.properties_passed},
                      {"properties_failed", vr.properties_failed},
                      {"pass", vr.pass()}};
    finish_timing(doc, t0, output, err);
    emit(doc, config, output, out);
    return vr.pass() ? kExitDecisive : kExitCheckFailed;
  });
}

int cmd_strata(const AnalysisConfig& config, const OutputOptions& output, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    const auto t0 = Clock::now();
    validate_config(config);
    const ResolvedProblem problem = resolve_problem(config.problem);
    Json doc = report_header("strata", config);
    doc["problem_id"] = problem.id;
    Json results = Json::array();
    bool all_pass = true;
    const int depth_limit = std::min(problem.map.smoothness() - 1, kDepthCap);
    std::uint64_t seed = config.seed;
    for (const Target& t : select_targets(config, problem)) {
      Json r;
      r["target"] = to_json(t);
      const Classification c = classify_point(problem.map, t.point, classify_options(config));
      r["classification"] = to_json(c);
      if (c.evidence.kdim != 1) {
        r["note"] = "not a simple singularity";
        results.push_back(r);
        continue;
      }
      const FiberingPair pair = make_fibering_pair(problem.map, t.point, config.tol.rank);
      const int order = c.transversality_order;
      Json membership = Json::array();
      for (int h = 1; h <= std::min(order + 1, depth_limit + 1); ++h) {
        const Membership m = stratum_membership(problem.map, t.point, h, pair, config.tol);
        membership.push_back({{"h", h}, {"member", m.member}, {"residuals", m.residuals}});
      }
      r["membership"] = membership;
      Json tangents = Json::array();
      for (int h = 1; h <= std::min(order, depth_limit); ++h) {
        try {
          const Eigen::MatrixXd basis = tangent_space(problem.map, t.point, h, pair, config.tol);
          tangents.push_back({{"h", h}, {"dimension", basis.cols()}});
        } catch (const RankDeficient& e) {
          tangents.push_back({{"h", h}, {"error", e.what()}});
        }
      }
      r["tangent_spaces"] = tangents;
      if (order >= 1 && c.kind() != Kind::Indeterminate) {
        const StratificationRecord rec =
            verify_stratification(problem.map, t.point, order, pair, 0, seed, config.tol);
        r["stratification"] = to_json(rec);
        all_pass = all_pass && rec.pass;
      } else {
        r["stratification"] = nullptr;
      }
      const StratumSample sample = sample_singular_set(problem.map, t.point, pair, config.samples,
                                                       seed, std::min(order + 1, depth_limit + 1),
                                                       config.tol);
      r["sample"] = to_json(sample);
      results.push_back(r);
      ++seed;
    }
    doc["results"] = results;
    doc["summary"] = {{"pass", all_pass}};
    finish_timing(doc, t0, output, err);
    emit(doc, config, output, out);
    return all_pass ? kExitDecisive : kExitCheckFailed;
  });
}

int cmd_bvp(const AnalysisConfig& config, const OutputOptions& output, std::ostream& out,
            std::ostream& err) {
  return guarded(err, [&] {
    const auto t0 = Clock::now();
    validate_config(config);
    if (config.problem.type != ProblemSpec::Type::bvp)
      throw ConfigParseError("the bvp command needs a bvp problem");
    const ResolvedProblem problem = resolve_problem(config.problem);
    Json doc = report_header("bvp", config);
    doc["problem_id"] = problem.id;
    Json results = Json::array();
    int indeterminate = 0;
    for (const Target& t : select_targets(config, problem)) {
      Json r;
      r["target"] = to_json(t);
      const Classification c = classify_point(problem.map, t.point, classify_options(config));
      if (c.kind() == Kind::Indeterminate) ++indeterminate;
      r["classification"] = to_json(c);
      r["matches_expected"] = expected_match(t, c);
      if (c.evidence.kdim == 1) {
        const int depth = std::min(3, std::min(problem.map.smoothness() - 1, kDepthCap));
        const NormalizedFunctionals nf = normalized_functionals(problem.map, t.point, depth,
                                                                config.tol.rank);
        Json norm;
        norm["alpha"] = nf.alpha;
        norm["beta"] = nf.beta;
        norm["J"] = nf.functionals.J;
        r["normalized"] = norm;
        const bool at_origin = t.point.isZero(0.0) && !problem.affine;
        if (config.problem.bvp.form == Nonlinearity::p7 && at_origin && depth >= 3) {
          const OracleComparison oc = compare_with_oracle(config.problem.bvp, nf, config.tol.rank);
          r["oracle"] = {{"cos_I1", oc.cos_I1},
                         {"cos_I2", oc.cos_I2},
                         {"cos_I1_signed", oc.cos_I1_signed},
                         {"cos_I2_signed", oc.cos_I2_signed},
                         {"J3", oc.J3},
                         {"J3_oracle", oc.J3_oracle},
                         {"stack_singular_values", oc.stack_singular_values},
                         {"sigma3_over_sigma1", oc.sigma3_over_sigma1}};
        } else {
          r["oracle"] = nullptr;
        }
      }
      results.push_back(r);
    }
    doc["results"] = results;
    doc["summary"] = {{"points", results.size()}, {"indeterminate", indeterminate}};
    finish_timing(doc, t0, output, err);
    emit(doc, config, output, out);
    return indeterminate > 0 ? kExitIndeterminate : kExitDecisive;
  });
}

int cmd_gallery(const GalleryListOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    struct Row {
      std::string name, params, fixture, expected, source, got;
      Eigen::VectorXd point;
      bool pass = true;
    };
    std::vector<Row> rows;
    int failures = 0;
    for (const auto& [name, params] : gallery_catalogue()) {
      if (options.name && name != *options.name) continue;
      const GalleryEntry e = gallery_map(name, params);
      for (const auto& f : e.expected) {
        if (options.kind && f.expected.kind != *options.kind) continue;
        Row row{name, format_params(params), f.description, to_string(f.expected), f.source, "", f.point};
        if (options.check) {
          ClassifyOptions co;
          co.k_cap = options.k_cap;
          co.tol = options.tol;
          const Classification c = classify_point(e.model, f.point, co);
          row.got = to_string(c.label);
          row.pass = c.label == f.expected;
          if (!row.pass) ++failures;
        }
        rows.push_back(std::move(row));
      }
    }
    if (options.machine) {
      for (const Row& r : rows) {
        Json j;
        j["name"] = r.name;
        j["params"] = r.params;
        j["fixture"] = r.fixture;
        j["point"] = to_json(r.point);
        j["expected"] = r.expected;
        j["source"] = r.source;
        if (options.check) {
          j["got"] = r.got;
          j["pass"] = r.pass;
        }
        out << j.dump() << "\n";
      }
    } else {
      std::size_t w[4] = {4, 6, 7, 8};
      for (const Row& r : rows) {
        w[0] = std::max(w[0], r.name.size());
        w[1] = std::max(w[1], r.params.size());
        w[2] = std::max(w[2], r.fixture.size());
        w[3] = std::max(w[3], r.expected.size());
      }
      auto cell = [](std::ostream& o, const std::string& s, std::size_t width) {
        o << s << std::string(width - s.size() + 2, ' ');
      };
      cell(out, "name", w[0]);
      cell(out, "params", w[1]);
      cell(out, "fixture", w[2]);
      cell(out, "expected", w[3]);
      out << (options.check ? "result" : "source") << "\n";
      for (const Row& r : rows) {
        cell(out, r.name, w[0]);
        cell(out, r.params.empty() ? "-" : r.params, w[1]);
        cell(out, r.fixture, w[2]);
        cell(out, r.expected, w[3]);
        if (options.check)
          out << (r.pass ? "pass" : "FAIL (got " + r.got + ")") << "\n";
        else
          out << r.source << "\n";
      }
      if (options.check) out << rows.size() - failures << "/" << rows.size() << " fixtures match\n";
    }
    return failures > 0 ? kExitCheckFailed : kExitDecisive;
  });
}

}  // namespace fredsing
