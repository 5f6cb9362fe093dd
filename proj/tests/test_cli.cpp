#include <doctest.h>

#include <sstream>

#include "fredsing/commands.hpp"
#include "fredsing/config.hpp"
#include "fredsing/errors.hpp"
#include "fredsing/report.hpp"

using namespace fredsing;
using nlohmann::ordered_json;

namespace {

AnalysisConfig gallery_config(const std::string& name, GalleryParams params = {}) {
  AnalysisConfig c;
  c.problem.gallery_name = name;
  c.problem.params = std::move(params);
  return c;
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

template <class F>
Run run(F&& f) {
  std::ostringstream out, err;
  const int code = f(out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("config parsing round-trips") {
  const ordered_json doc = ordered_json::parse(R"({
    "schema_version": "fredsing.config/1",
    "problem": {"gallery": "whitney", "params": {"k": 2, "dimZ": 1}, "conjugate_seed": 3},
    "fixture": 1, "k_cap": 5, "tolerances": {"zero": 1e-7}, "route": "ls", "seed": 11
  })");
  const AnalysisConfig c = parse_config(doc);
  CHECK(c.problem.gallery_name == "whitney");
  CHECK(c.problem.params.at("dimZ") == 1.0);
  CHECK(*c.problem.conjugate_seed == 3);
  CHECK(*c.fixture == 1);
  CHECK(c.k_cap == 5);
  CHECK(c.tol.zero == 1e-7);
  CHECK(c.tol.nonzero == 1e-3);
  CHECK(c.route == Route::ls);
  const AnalysisConfig again = parse_config(config_to_json(c));
  CHECK(config_to_json(again) == config_to_json(c));
}

TEST_CASE("config errors name the offending key") {
  auto err = [](const char* text) {
    try {
      parse_config(ordered_json::parse(text));
    } catch (const ConfigParseError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(err(R"({"problem": {"gallery": "fold_t2"}})").find("schema_version") != std::string::npos);
  CHECK(err(R"({"schema_version": "fredsing.config/1", "problem": {"gallery": "fold_t2"}, "colour": 1})")
            .find("colour") != std::string::npos);
  CHECK(err(R"({"schema_version": "fredsing.config/1", "problem": {"gallery": "fold_t2", "bvp": {}}})") != "");
  CHECK(err(R"({"schema_version": "fredsing.config/1", "problem": {"gallery": "fold_t2"}, "k_cap": "x"})")
            .find("k_cap") != std::string::npos);
  CHECK(err(R"({"schema_version": "fredsing.config/1", "problem": {"bvp": {"a": [[1, 2]]}}})") != "");
  CHECK_THROWS_AS(parse_trig_list("1,0"), ConfigParseError);
  CHECK(parse_trig_list("1,0,1;0,2,0").size() == 2);
  CHECK(parse_scheme("fd") == Scheme::finite_difference);
  CHECK_THROWS_AS(parse_scheme("chebyshev"), UnknownName);
}

TEST_CASE("target selection") {
  AnalysisConfig c = gallery_config("fold_t2");
  const ResolvedProblem p = resolve_problem(c.problem);
  CHECK(select_targets(c, p).size() == p.fixtures.size());
  c.fixture = 1;
  CHECK(select_targets(c, p).size() == 1);
  c.fixture = 7;
  CHECK_THROWS_AS(select_targets(c, p), ConfigParseError);
  c.fixture.reset();
  c.point = Eigen::Vector3d::Zero();
  CHECK_THROWS_AS(select_targets(c, p), ConfigParseError);
  c.point = Eigen::Vector2d(0, 0.5);
  const auto t = select_targets(c, p);
  REQUIRE(t.size() == 1);
  CHECK_FALSE(t[0].expected);
}

TEST_CASE("conjugated problems carry transformed fixtures") {
  AnalysisConfig c = gallery_config("whitney", {{"k", 2}});
  c.problem.conjugate_seed = 5;
  const ResolvedProblem p = resolve_problem(c.problem);
  REQUIRE(p.affine);
  CHECK(p.fixtures[0].description.rfind("gamma(", 0) == 0);
  CHECK((p.fixtures[0].point - p.affine->gamma(Eigen::Vector2d::Zero())).norm() < 1e-15);
}

TEST_CASE("classify exit codes") {
  AnalysisConfig c = gallery_config("whitney", {{"k", 2}});
  Run r = run([&](auto& o, auto& e) { return cmd_classify(c, {true, false}, o, e); });
  CHECK(r.code == kExitDecisive);
  const ordered_json doc = ordered_json::parse(r.out);
  CHECK(doc["schema_version"] == kReportSchema);
  CHECK(doc["command"] == "classify");
  CHECK(r.err.find("wall time") != std::string::npos);
  CHECK_FALSE(doc.contains("wall_time_s"));

  c = gallery_config("eps_perturbed", {{"eps", 1e-4}});
  c.fixture = 1;
  r = run([&](auto& o, auto& e) { return cmd_classify(c, {}, o, e); });
  CHECK(r.code == kExitIndeterminate);

  c = gallery_config("no_such_map");
  r = run([&](auto& o, auto& e) { return cmd_classify(c, {}, o, e); });
  CHECK(r.code == kExitError);
  CHECK(r.err.find("no_such_map") != std::string::npos);
}

TEST_CASE("timing flag adds the wall time to the report") {
  const AnalysisConfig c = gallery_config("fold_t2");
  const Run r = run([&](auto& o, auto& e) { return cmd_classify(c, {true, true}, o, e); });
  CHECK(ordered_json::parse(r.out).contains("wall_time_s"));
}

TEST_CASE("reports are byte-identical across runs") {
  AnalysisConfig c = gallery_config("whitney", {{"k", 2}, {"dimZ", 1}});
  c.trials = 5;
  c.samples = 5;
  for (int rep = 0; rep < 2; ++rep) {
    const Run a = run([&](auto& o, auto& e) { return cmd_verify(c, {}, o, e); });
    const Run b = run([&](auto& o, auto& e) { return cmd_verify(c, {}, o, e); });
    CHECK(a.code == kExitDecisive);
    CHECK(a.out == b.out);
    c.problem.conjugate_seed = 9;
  }
  const Run s1 = run([&](auto& o, auto& e) { return cmd_strata(c, {}, o, e); });
  const Run s2 = run([&](auto& o, auto& e) { return cmd_strata(c, {}, o, e); });
  CHECK(s1.out == s2.out);
}

TEST_CASE("bvp command reports normalized functionals and the oracle") {
  AnalysisConfig c;
  c.problem.type = ProblemSpec::Type::bvp;
  c.problem.bvp.a = {{1, 0.0, 1.0}};
  c.problem.bvp.p = {{0, 1.0, 0.0}};
  const Run r = run([&](auto& o, auto& e) { return cmd_bvp(c, {true, false}, o, e); });
  REQUIRE(r.code == kExitDecisive);
  const ordered_json doc = ordered_json::parse(r.out);
  const ordered_json& res = doc["results"][0];
  CHECK(res["oracle"]["J3"].get<double>() == doctest::Approx(24.0).epsilon(1e-6));
  CHECK(res["normalized"]["alpha"].get<double>() > 0);
}

TEST_CASE("gallery listing and check") {
  GalleryListOptions g;
  g.machine = true;
  g.name = "fold_t2";
  Run r = run([&](auto& o, auto& e) { return cmd_gallery(g, o, e); });
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    CHECK(ordered_json::parse(line)["name"] == "fold_t2");
    ++n;
  }
  CHECK(n == 2);
  g.check = true;
  g.kind = Kind::NotOneTransverse;
  g.name.reset();
  r = run([&](auto& o, auto& e) { return cmd_gallery(g, o, e); });
  CHECK(r.code == 0);
}
