#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fredsing/bvp.hpp"
#include "fredsing/classify.hpp"
#include "fredsing/gallery.hpp"
#include "fredsing/model.hpp"

namespace fredsing {

inline constexpr const char* kConfigSchema = "fredsing.config/1";

struct ProblemSpec {
  enum class Type { gallery, bvp };
  Type type = Type::gallery;
  std::string gallery_name = "fold_t2";
  GalleryParams params;
  PeriodicProblem bvp;
  // Conjugate the problem by random_affine_pair(n, Rng(seed)).
  std::optional<std::uint64_t> conjugate_seed;
};

struct AnalysisConfig {
  ProblemSpec problem;
  std::optional<Eigen::VectorXd> point;
  std::optional<int> fixture;  // index into the problem's fixture list
  int k_cap = kDefaultKCap;
  Tolerances tol;
  Route route = Route::both;
  std::uint64_t seed = 7;
  int trials = 50;
  int samples = 20;
  bool project = false;
  std::string output_path;  // empty: stdout
};

// A point to analyse, with the expected kind when one is known.
struct Target {
  std::string description;
  Eigen::VectorXd point;
  std::optional<KindLabel> expected;
  std::string source;
};

struct ResolvedProblem {
  std::string id;
  MapModel map;
  std::vector<Target> fixtures;
  std::optional<AffinePair> affine;
};

// Throws UnknownName, ParamOutOfRange, AliasedCoefficients.
ResolvedProblem resolve_problem(const ProblemSpec& spec);

// The targets selected by config.point / config.fixture (all fixtures if
// neither is set). Throws ConfigParseError on a bad index or point length.
std::vector<Target> select_targets(const AnalysisConfig& config, const ResolvedProblem& problem);

// Throws ConfigParseError with the offending key.
AnalysisConfig parse_config(const nlohmann::ordered_json& doc);
AnalysisConfig load_config(const std::string& path);
nlohmann::ordered_json config_to_json(const AnalysisConfig& config);

void validate_config(const AnalysisConfig& config);  // ConfigParseError

// "freq,cos,sin;freq,cos,sin" as used on the command line.
TrigPoly parse_trig_list(const std::string& text);
Scheme parse_scheme(const std::string& name);
Nonlinearity parse_nonlinearity(const std::string& name);

}  // namespace fredsing
