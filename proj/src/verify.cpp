#include "fredsing/verify.hpp"

#include <algorithm>
#include <cmath>

#include "fredsing/errors.hpp"
#include "fredsing/rng.hpp"

namespace fredsing {

namespace {

constexpr std::size_t kMaxListedFailures = 5;
constexpr double kTransformTol = 1e-8;

void record(PropertyResult& p, bool ok, const std::string& what) {
  ++p.trials;
  if (ok) {
    ++p.passed;
  } else if (p.failures.size() < kMaxListedFailures) {
    p.failures.push_back(what);
  }
}

PropertyResult property(const std::string& name) {
  PropertyResult p;
  p.name = name;
  return p;
}

PropertyResult skipped(const std::string& name, const std::string& note) {
  PropertyResult p = property(name);
  p.skipped = true;
  p.note = note;
  return p;
}

std::uint64_t derive_seed(std::uint64_t seed, std::size_t target, int property) {
  return seed + 0x9E3779B97F4A7C15ULL * (target + 1) + 0xBF58476D1CE4E5B9ULL * property;
}

bool decisive(const KindLabel& l) {
  return l.kind == Kind::KSingularity || l.kind == Kind::MaximalKTransverse ||
         l.kind == Kind::TransverseUpToCap;
}

int fibering_depth(const Classification& c) {
  for (const auto& r : c.evidence.routes)
    if (r.route == "fibering" && r.error.empty()) return r.k_max;
  return 1;
}

}  // namespace

std::pair<ScaleSpec, ScaleSpec> random_scales(int n, Rng& rng) {
  auto one = [&]() {
    ScaleSpec s = ScaleSpec::constant(rng.sign() * rng.uniform(0.6, 1.5));
    if (rng.uniform() < 0.5) {
      const Eigen::MatrixXd r = rng.uniform_matrix(n, n, -0.5, 0.5);
      s.quadratic = (r + r.transpose()) / (2.0 * n);
    }
    return s;
  };
  ScaleSpec a = one();
  ScaleSpec b = one();
  return {a, b};
}

double fold_scaling_ratio(const MapModel& map, const Eigen::VectorXd& u, double alpha, double beta) {
  const FiberingPair pair = make_fibering_pair(map, u);
  const FiberingPair scaled = rescale_pair(pair, ScaleSpec::constant(alpha), ScaleSpec::constant(beta));
  const double j1 = fibering_functionals(map, pair, u, 1).J[1];
  const double j1s = fibering_functionals(map, scaled, u, 1).J[1];
  return j1s / (alpha * alpha * beta * j1);
}

VerifyReport verify_problem(const ResolvedProblem& problem, const std::vector<Target>& targets,
                            const VerifyOptions& opt) {
  VerifyReport report;
  report.problem_id = problem.id;
  const MapModel& map = problem.map;
  const int n = map.dim();
  ClassifyOptions base_opts;
  base_opts.k_cap = opt.k_cap;
  base_opts.tol = opt.tol;
  base_opts.route = opt.route;

  for (std::size_t ti = 0; ti < targets.size(); ++ti) {
    TargetVerification tv;
    tv.target = targets[ti];
    const Eigen::VectorXd& u = tv.target.point;
    tv.base = classify_point(map, u, base_opts);
    const KindLabel kind = tv.base.label;
    const std::string got = to_string(kind);

    if (tv.target.expected) {
      PropertyResult p = property("expected_kind");
      record(p, kind == *tv.target.expected,
             "got " + got + ", expected " + to_string(*tv.target.expected));
      tv.properties.push_back(p);
    } else {
      tv.properties.push_back(skipped("expected_kind", "no expected kind for this point"));
    }

    const bool simple = tv.base.evidence.kdim == 1;
    const std::string why_not = simple ? "base classification is " + got : "not a simple singularity";
    const bool run_kind_checks = simple && kind.kind != Kind::Indeterminate;

    if (opt.route == Route::both && simple) {
      PropertyResult p = property("route_agreement");
      record(p, tv.base.evidence.route_agreement, "fibering and ls routes disagree");
      tv.properties.push_back(p);
    } else {
      tv.properties.push_back(skipped("route_agreement", simple ? "single route" : why_not));
    }

    std::optional<FiberingPair> pair;
    if (run_kind_checks) pair = make_fibering_pair(map, u, opt.tol.rank);

    // Rescaled pairs on the fibering route.
    if (run_kind_checks) {
      PropertyResult p = property("pair_rescaling");
      Rng rng(derive_seed(opt.seed, ti, 1));
      ClassifyOptions o = base_opts;
      o.route = Route::fibering;
      for (int t = 0; t < opt.trials; ++t) {
        auto [a, b] = random_scales(n, rng);
        o.pair = rescale_pair(*pair, a, b);
        const KindLabel k = classify_point(map, u, o).label;
        record(p, k == kind, "trial " + std::to_string(t) + ": " + to_string(k));
      }
      tv.properties.push_back(p);
    } else {
      tv.properties.push_back(skipped("pair_rescaling", why_not));
    }

    // Affine conjugations, with the transported pair compared alongside.
    if (simple && kind.kind != Kind::Indeterminate) {
      PropertyResult conj = property("affine_conjugation");
      PropertyResult transp = property("pair_transform");
      Rng rng(derive_seed(opt.seed, ti, 2));
      const int depth = std::min(fibering_depth(tv.base), std::min(map.smoothness() - 1, kDepthCap));
      const FunctionalsRecord ref = fibering_functionals(map, *pair, u, depth);
      double scale = 1.0;
      for (double j : ref.J) scale = std::max(scale, std::abs(j));
      for (int t = 0; t < opt.trials; ++t) {
        const AffinePair affine = random_affine_pair(n, rng);
        const MapModel cm = conjugate(map, affine);
        const Eigen::VectorXd v = affine.gamma(u);
        const KindLabel k = classify_point(cm, v, base_opts).label;
        record(conj, k == kind, "trial " + std::to_string(t) + ": " + to_string(k));
        const FiberingPair moved = pair_transform(*pair, affine, map, cm);
        const FunctionalsRecord rec = fibering_functionals(cm, moved, v, depth);
        double err = 0.0;
        for (int h = 0; h <= depth; ++h) err = std::max(err, std::abs(rec.J[h] - ref.J[h]));
        record(transp, err <= kTransformTol * scale,
               "trial " + std::to_string(t) + ": max |J~ - J| = " + std::to_string(err));
      }
      tv.properties.push_back(conj);
      tv.properties.push_back(transp);
    } else {
      tv.properties.push_back(skipped("affine_conjugation", why_not));
      tv.properties.push_back(skipped("pair_transform", why_not));
    }

    // Constant rescaling multiplies J_1 by alpha^2 beta where J_0 vanishes.
    if (run_kind_checks && kind == KindLabel{Kind::KSingularity, 1}) {
      PropertyResult p = property("scaling_law");
      const double r = fold_scaling_ratio(map, u, 2.0, 3.0);
      record(p, std::abs(r - 1.0) <= kTransformTol,
             "J~_1 / (alpha^2 beta J_1) = " + std::to_string(r));
      tv.properties.push_back(p);
    } else {
      tv.properties.push_back(skipped("scaling_law", "only checked at 1-singularities"));
    }

    // Stratification record and pair independence of membership.
    const int order = tv.base.transversality_order;
    if (run_kind_checks && decisive(kind) && order >= 1) {
      tv.stratification = verify_stratification(map, u, order, *pair, opt.probes,
                                                derive_seed(opt.seed, ti, 3), opt.tol);
      PropertyResult s = property("stratification");
      std::string what;
      for (const auto& f : tv.stratification->failures) what += (what.empty() ? "" : "; ") + f;
      record(s, tv.stratification->pass, what);
      tv.properties.push_back(s);

      PropertyResult m = property("membership_pair_independence");
      Rng rng(derive_seed(opt.seed, ti, 4));
      const int h_max = std::min(order + 1, std::min(map.smoothness() - 1, kDepthCap) + 1);
      std::vector<bool> ref;
      for (int h = 1; h <= h_max; ++h) ref.push_back(stratum_membership(map, u, h, *pair, opt.tol).member);
      for (int t = 0; t < opt.membership_trials; ++t) {
        auto [a, b] = random_scales(n, rng);
        const FiberingPair scaled = rescale_pair(*pair, a, b);
        bool same = true;
        for (int h = 1; h <= h_max; ++h)
          same = same && stratum_membership(map, u, h, scaled, opt.tol).member == ref[h - 1];
        for (const auto& q : tv.stratification->probes.points)
          same = same && stratum_membership(map, q, 1, scaled, opt.tol).member;
        record(m, same, "trial " + std::to_string(t));
      }
      tv.properties.push_back(m);
    } else {
      tv.properties.push_back(skipped("stratification", why_not));
      tv.properties.push_back(skipped("membership_pair_independence", why_not));
    }

    for (const auto& p : tv.properties) {
      if (p.skipped) continue;
      if (p.pass())
        ++report.properties_passed;
      else
        ++report.properties_failed;
    }
    report.targets.push_back(std::move(tv));
  }
  return report;
}

}  // namespace fredsing
