#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fredsing/classify.hpp"
#include "fredsing/config.hpp"
#include "fredsing/strata.hpp"

namespace fredsing {

struct PropertyResult {
  std::string name;
  int trials = 0;
  int passed = 0;
  std::vector<std::string> failures;  // first few only
  bool skipped = false;
  std::string note;

  bool pass() const { return skipped || passed == trials; }
};

struct TargetVerification {
  Target target;
  Classification base;
  std::vector<PropertyResult> properties;
  std::optional<StratificationRecord> stratification;
};

struct VerifyOptions {
  int trials = 50;
  int membership_trials = 20;
  int probes = 20;
  std::uint64_t seed = 7;
  int k_cap = kDefaultKCap;
  Tolerances tol;
  Route route = Route::both;
};

struct VerifyReport {
  std::string problem_id;
  std::vector<TargetVerification> targets;
  int properties_passed = 0;
  int properties_failed = 0;

  bool pass() const { return properties_failed == 0; }
};

// Random rescaling factors: constant with probability 1/2, otherwise constant
// plus a small quadratic form centred at the base point. |offset| in [0.6, 1.5].
std::pair<ScaleSpec, ScaleSpec> random_scales(int n, Rng& rng);

// Per target: expected kind, route agreement, pair rescalings, affine
// conjugations, pair-transform equality of J values, membership under
// rescalings, and the stratification record. Kind checks are skipped at
// regular or non-simple points.
VerifyReport verify_problem(const ResolvedProblem& problem, const std::vector<Target>& targets,
                            const VerifyOptions& options);

// J_1 of the rescaled pair (constant alpha, beta) divided by alpha^2 beta J_1,
// at a point with J_0 = 0. Equals 1 in exact arithmetic.
double fold_scaling_ratio(const MapModel& map, const Eigen::VectorXd& u, double alpha, double beta);

}  // namespace fredsing
