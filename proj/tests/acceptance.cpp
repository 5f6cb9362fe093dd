// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fredsing/bvp.hpp"
#include "fredsing/classify.hpp"
#include "fredsing/commands.hpp"
#include "fredsing/config.hpp"
#include "fredsing/derivatives.hpp"
#include "fredsing/gallery.hpp"
#include "fredsing/lsreduce.hpp"
#include "fredsing/rng.hpp"
#include "fredsing/strata.hpp"
#include "fredsing/verify.hpp"

using namespace fredsing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void fail(const std::string& why) {
    pass = false;
    if (failures.size() < 5) failures.push_back(why);
  }
};

std::string describe(const std::string& name, const GalleryParams& p, const GalleryFixture& f) {
  return name + "(" + format_params(p) + ") at " + f.description;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Criteria 1 and 3.
Outcome gallery_table(bool routes_only) {
  Outcome o;
  const auto t0 = Clock::now();
  int total = 0, wrong = 0, indeterminate = 0, disagree = 0;
  for (const auto& [name, params] : gallery_catalogue()) {
    const GalleryEntry e = gallery_map(name, params);
    for (const GalleryFixture& f : e.expected) {
      ++total;
      const Classification c = classify_point(e.model, f.point);
      if (c.kind() == Kind::Indeterminate) ++indeterminate;
      if (c.label != f.expected) {
        ++wrong;
        if (!routes_only) o.fail(describe(name, params, f) + ": got " + to_string(c.label) + ", want " +
                                 to_string(f.expected));
      }
      const auto& r = c.evidence.routes;
      const bool simple = c.evidence.kdim == 1;
      const bool agree = !simple || (r.size() == 2 && r[0].error.empty() && r[1].error.empty() &&
                                     r[0].decision.label == r[1].decision.label);
      if (!agree) {
        ++disagree;
        if (routes_only) o.fail(describe(name, params, f) + ": routes disagree");
      }
    }
  }
  const double secs = seconds_since(t0);
  if (routes_only) {
    o.detail = std::to_string(total - disagree) + "/" + std::to_string(total) + " fixtures with identical route kinds";
  } else {
    if (indeterminate > 0) o.fail(std::to_string(indeterminate) + " indeterminate");
    if (secs >= 60.0) o.fail("runtime " + fmt("%.1f", secs) + " s");
    o.detail = std::to_string(total - wrong) + "/" + std::to_string(total) + " fixtures over " +
               std::to_string(gallery_catalogue().size()) + " cells, " + std::to_string(indeterminate) +
               " indeterminate, " + fmt("%.2f", secs) + " s (limit 60 s)";
  }
  return o;
}

// Criterion 2.
Outcome ls_postconditions() {
  Outcome o;
  int built = 0;
  double worst_f = 0.0, worst_g = 0.0;
  auto check = [&](const MapModel& m, const Eigen::VectorXd& u, const std::string& what) {
    const CanonicalRecord c = canonical_functionals(local_representation(m, u), 1);
    ++built;
    worst_f = std::max(worst_f, std::abs(c.f0));
    worst_g = std::max(worst_g, c.grad_f0.norm());
    if (std::abs(c.f0) >= 1e-9 || c.grad_f0.norm() >= 1e-9) o.fail(what);
  };
  for (const auto& [name, params] : gallery_catalogue()) {
    const GalleryEntry e = gallery_map(name, params);
    for (const GalleryFixture& f : e.expected)
      if (f.expected.kind != Kind::Regular) check(e.model, f.point, describe(name, params, f));
  }
  for (const TrigPoly& p : {TrigPoly{}, TrigPoly{{0, 1.0, 0.0}}}) {
    PeriodicProblem pr;
    pr.a = {{1, 0.0, 1.0}};
    pr.p = p;
    check(make_periodic_bvp(pr), Eigen::VectorXd::Zero(pr.N), "P7 at 0");
  }
  o.detail = std::to_string(built) + " LS models, max |f(0,0)| = " + fmt("%.1e", worst_f) +
             ", max |grad f(0,0)| = " + fmt("%.1e", worst_g) + " (limit 1e-9)";
  return o;
}

// Criterion 4.
Outcome invariance_suite() {
  Outcome o;
  int targets = 0, rescalings = 0, conjugations = 0;
  VerifyOptions opt;
  opt.trials = 50;
  opt.membership_trials = 0;
  opt.probes = 0;
  for (const auto& [name, params] : gallery_catalogue()) {
    AnalysisConfig c;
    c.problem.gallery_name = name;
    c.problem.params = params;
    const ResolvedProblem prob = resolve_problem(c.problem);
    const VerifyReport rep = verify_problem(prob, prob.fixtures, opt);
    for (const TargetVerification& tv : rep.targets) {
      ++targets;
      for (const PropertyResult& p : tv.properties) {
        if (p.name == "pair_rescaling" && !p.skipped) rescalings += p.trials;
        if (p.name == "affine_conjugation" && !p.skipped) conjugations += p.trials;
        const bool relevant = p.name == "pair_rescaling" || p.name == "affine_conjugation" ||
                              p.name == "pair_transform" || p.name == "expected_kind";
        if (relevant && !p.pass())
          o.fail(prob.id + " " + tv.target.description + ": " + p.name + " " + std::to_string(p.passed) +
                 "/" + std::to_string(p.trials));
      }
    }
  }
  const GalleryEntry fold = gallery_map("fold_t2");
  double worst = 0.0;
  for (const GalleryFixture& f : fold.expected)
    worst = std::max(worst, std::abs(fold_scaling_ratio(fold.model, f.point, 2.0, 3.0) - 1.0));
  if (worst > 1e-8) o.fail("fold scaling law off by " + fmt("%.2e", worst));
  o.detail = std::to_string(targets) + " fixtures, " + std::to_string(rescalings) + " rescalings, " +
             std::to_string(conjugations) + " conjugations; fold J1 ratio error " + fmt("%.1e", worst) +
             " (limit 1e-8)";
  return o;
}

// Criterion 5.
Outcome bvp_reproduction() {
  Outcome o;
  const auto t0 = Clock::now();
  PeriodicProblem pr;
  pr.N = 64;
  pr.a = {{1, 0.0, 1.0}};
  pr.scheme = Scheme::spectral;
  const Eigen::VectorXd u = Eigen::VectorXd::Zero(pr.N);

  pr.p = {};
  const MapModel m0 = make_periodic_bvp(pr);
  const Classification c0 = classify_point(m0, u);
  if (c0.label != KindLabel{Kind::MaximalKTransverse, 2}) o.fail("p = 0 gave " + to_string(c0.label));
  const OracleComparison o0 = compare_with_oracle(pr, normalized_functionals(m0, u, 3));
  if (o0.sigma3_over_sigma1 >= 1e-6) o.fail("sigma3/sigma1 = " + fmt("%.2e", o0.sigma3_over_sigma1));

  pr.p = {{0, 1.0, 0.0}};
  const MapModel m1 = make_periodic_bvp(pr);
  const Classification c1 = classify_point(m1, u);
  if (c1.label != KindLabel{Kind::KSingularity, 3}) o.fail("p = 1 gave " + to_string(c1.label));
  const OracleComparison o1 = compare_with_oracle(pr, normalized_functionals(m1, u, 3));
  if (std::abs(o1.J3 - 24.0) > 1e-4) o.fail("normalized J3 = " + fmt("%.10g", o1.J3));

  const double cos_min = std::min({o0.cos_I1, o0.cos_I2, o1.cos_I1, o1.cos_I2});
  if (cos_min < 1 - 1e-6) o.fail("oracle cosine " + fmt("%.10f", cos_min));
  const double secs = seconds_since(t0);
  if (secs >= 30.0) o.fail("runtime " + fmt("%.1f", secs) + " s");
  o.detail = "p=0: " + to_string(c0.label) + ", sigma3/sigma1 = " + fmt("%.1e", o0.sigma3_over_sigma1) +
             "; p=1: " + to_string(c1.label) + ", J3 = " + fmt("%.8f", o1.J3) + "; min cosine 1 - " +
             fmt("%.1e", 1 - cos_min) + "; " + fmt("%.2f", secs) + " s (limit 30 s)";
  return o;
}

// Criterion 6.
Outcome cusp_explicit_pair() {
  Outcome o;
  const GalleryEntry cusp = gallery_map("cusp_source_t3");
  const FiberingPair pair = explicit_pair("cusp_explicit", Eigen::Vector2d::Zero(), [](const JetVector& u) {
    const JetSpacePtr sp = u[0].space();
    return PairValue{{Jet(sp, 1.0), u[0]}, {Jet(sp, 1.0), -3.0 * u[0]}};
  });
  Rng rng(2024);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Eigen::VectorXd u = rng.uniform_vector(2, -1.0, 1.0);
    worst = std::max(worst, std::abs(fibering_J0(cusp.model, pair, u)));
  }
  if (worst >= 1e-12) o.fail("max |J~0| = " + fmt("%.2e", worst));
  const Classification c = classify_point(cusp.model, Eigen::Vector2d::Zero());
  if (c.label != KindLabel{Kind::NotOneTransverse, 0}) o.fail("origin gave " + to_string(c.label));
  o.detail = "max |J~0| over 100 points = " + fmt("%.1e", worst) + " (limit 1e-12); origin " + to_string(c.label);
  return o;
}

// Criterion 7.
Outcome jet_engine() {
  Outcome o;
  Rng rng(77);
  double worst_poly = 0.0;
  auto binom = [](int n, int k) {
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  for (int deg = 0; deg <= 6; ++deg) {
    const JetSpacePtr sp = JetSpace::make({6, 6});
    const Eigen::MatrixXd c = rng.uniform_matrix(deg + 1, deg + 1, -1.0, 1.0);
    const double x0 = rng.uniform(-1, 1), y0 = rng.uniform(-1, 1);
    const Jet x = Jet::variable(sp, 0, x0), y = Jet::variable(sp, 1, y0);
    Jet p(sp, 0.0);
    for (int i = 0; i <= deg; ++i)
      for (int j = 0; i + j <= deg; ++j) p += c(i, j) * pow_int(x, i) * pow_int(y, j);
    for (int a = 0; a <= 6; ++a)
      for (int b = 0; b <= 6; ++b) {
        double ref = 0.0, mag = 0.0;
        for (int i = a; i <= deg; ++i)
          for (int j = b; i + j <= deg; ++j) {
            const double term = c(i, j) * binom(i, a) * binom(j, b) * std::pow(x0, i - a) * std::pow(y0, j - b);
            ref += term;
            mag += std::abs(term);
          }
        worst_poly = std::max(worst_poly, std::abs(p.coeff({a, b}) - ref) / std::max(1.0, mag));
      }
  }
  if (worst_poly > 1e-12) o.fail("polynomial coefficient error " + fmt("%.2e", worst_poly));

  double worst_fd = 0.0;
  int maps = 0;
  for (const auto& [name, params] : gallery_catalogue()) {
    const GalleryEntry e = gallery_map(name, params);
    const int n = e.model.dim();
    ++maps;
    for (int t = 0; t < 20; ++t) {
      const Eigen::VectorXd u = rng.uniform_vector(n, -0.5, 0.5);
      const Eigen::VectorXd v = rng.uniform_vector(n, -1.0, 1.0);
      const auto d = directional_derivatives(e.model, u, v, 2);
      const double h = 1e-4;
      auto F = [&](double s) { return e.model.eval(Eigen::VectorXd(u + s * v)); };
      const Eigen::VectorXd fd1 = (F(h) - F(-h)) / (2 * h);
      const Eigen::VectorXd fd2 = (F(h) - 2 * F(0) + F(-h)) / (h * h);
      const double e1 = (d[1] - fd1).norm() / std::max(1.0, d[1].norm());
      const double e2 = (d[2] - fd2).norm() / std::max(1.0, d[2].norm());
      worst_fd = std::max({worst_fd, e1, e2});
      if (std::max(e1, e2) >= 1e-5) o.fail(name + "(" + format_params(params) + ")");
    }
  }
  o.detail = "degree <= 6 coefficient error " + fmt("%.1e", worst_poly) + " (limit 1e-12); FD error " +
             fmt("%.1e", worst_fd) + " over " + std::to_string(maps) + " maps x 20 points (limit 1e-5)";
  return o;
}

// Criterion 8.
Outcome strata_suite() {
  Outcome o;
  Rng rng(8);
  const Tolerances tol;

  // Fold hypersurface: projected samples on S_1, off-set points separated.
  const GalleryEntry fold = gallery_map("fold_t2");
  const Eigen::VectorXd u0 = Eigen::Vector2d::Zero();
  const FiberingPair pair = make_fibering_pair(fold.model, u0);
  const StratumSample smp = sample_singular_set(fold.model, u0, pair, 20, 99, 2, tol);
  double worst_on = 0.0, least_off = 1e300;
  if (smp.points.size() != 20) o.fail("fold: only " + std::to_string(smp.points.size()) + " samples");
  for (std::size_t i = 0; i < smp.points.size(); ++i) {
    const Eigen::VectorXd& p = smp.points[i];
    worst_on = std::max(worst_on, std::abs(fibering_J0(fold.model, pair, p)));
    if (smp.kdim[i] != 1) o.fail("fold sample with kdim " + std::to_string(smp.kdim[i]));
    const FunctionalsRecord r = fibering_functionals(fold.model, pair, p, 1);
    if (rank_decision(r.stacked(1), tol.rank).rank != 1) o.fail("fold sample with rank(I1) != 1");
    const Eigen::VectorXd normal = r.I[0].normalized();
    const Eigen::VectorXd off = p + (rng.sign() * 0.01) * normal;
    least_off = std::min(least_off, std::abs(fibering_J0(fold.model, pair, off)));
  }
  if (worst_on >= 1e-9) o.fail("fold on-set |J0| = " + fmt("%.2e", worst_on));
  if (least_off <= 1e-4) o.fail("fold off-set |J0| = " + fmt("%.2e", least_off));

  // Nesting and pair independence of membership over 20 rescalings.
  int checks = 0;
  for (const auto& [name, params] : std::vector<std::pair<std::string, GalleryParams>>{
           {"fold_t2", {}}, {"whitney", {{"k", 2}}}, {"whitney", {{"k", 3}, {"dimZ", 1}}},
           {"family_kn", {{"k", 2}, {"n", 0}}}, {"eps_perturbed", {{"eps", 0.1}}}}) {
    const GalleryEntry e = gallery_map(name, params);
    const Eigen::VectorXd base = e.expected.front().point;
    const FiberingPair bp = make_fibering_pair(e.model, base);
    std::vector<Eigen::VectorXd> pts = {base};
    for (const auto& q : sample_singular_set(e.model, base, bp, 5, 3, 1, tol).points) pts.push_back(q);
    const int hmax = 4;
    for (const Eigen::VectorXd& p : pts) {
      std::vector<bool> ref;
      for (int h = 1; h <= hmax; ++h) ref.push_back(stratum_membership(e.model, p, h, bp, tol).member);
      for (int h = 1; h < hmax; ++h)
        if (ref[h] && !ref[h - 1]) o.fail(name + ": membership not nested");
      for (int t = 0; t < 20; ++t) {
        auto [a, b] = random_scales(e.model.dim(), rng);
        a.center = base;
        b.center = base;
        const FiberingPair sp = rescale_pair(bp, a, b);
        for (int h = 1; h <= hmax; ++h) {
          ++checks;
          if (stratum_membership(e.model, p, h, sp, tol).member != ref[h - 1])
            o.fail(name + ": membership depends on the pair at h = " + std::to_string(h));
        }
      }
    }
  }

  // Kernel-line dichotomy.
  auto dichotomy = [&](const std::string& name, const GalleryParams& params, bool inside) {
    const GalleryEntry e = gallery_map(name, params);
    const Eigen::VectorXd base = e.expected.front().point;
    const StratificationRecord r =
        verify_stratification(e.model, base, 2, make_fibering_pair(e.model, base), 20, 7, tol);
    if (!r.pass || !r.dichotomy_pass || r.phi_in_tangent != inside)
      o.fail(name + ": dichotomy (phi in tangent = " + std::string(r.phi_in_tangent ? "yes" : "no") + ")");
  };
  dichotomy("whitney", {{"k", 2}}, false);
  dichotomy("family_kn", {{"k", 2}, {"n", 0}}, true);

  o.detail = "fold on-set |J0| <= " + fmt("%.1e", worst_on) + ", off-set |J0| >= " + fmt("%.1e", least_off) +
             "; " + std::to_string(checks) + " membership checks under rescaling; dichotomy on whitney(k=2), "
             "family_kn(k=2,n=0)";
  return o;
}

// Criterion 9.
Outcome determinism() {
  Outcome o;
  auto capture = [](const std::function<int(std::ostream&, std::ostream&)>& f) {
    std::ostringstream out, err;
    f(out, err);
    return out.str();
  };
  std::vector<AnalysisConfig> configs;
  {
    AnalysisConfig c;
    c.problem.gallery_name = "whitney";
    c.problem.params = {{"k", 3}, {"dimZ", 1}};
    c.trials = 20;
    c.samples = 10;
    configs.push_back(c);
    c.problem.conjugate_seed = 11;
    configs.push_back(c);
    AnalysisConfig e;
    e.problem.gallery_name = "eps_perturbed";
    e.problem.params = {{"eps", 0.1}};
    e.trials = 20;
    e.samples = 10;
    configs.push_back(e);
  }
  int compared = 0;
  for (const AnalysisConfig& c : configs) {
    for (bool machine : {false, true}) {
      const OutputOptions out{machine, false};
      const std::string a = capture([&](std::ostream& s, std::ostream& e) { return cmd_classify(c, out, s, e); });
      const std::string b = capture([&](std::ostream& s, std::ostream& e) { return cmd_classify(c, out, s, e); });
      const std::string va = capture([&](std::ostream& s, std::ostream& e) { return cmd_verify(c, out, s, e); });
      const std::string vb = capture([&](std::ostream& s, std::ostream& e) { return cmd_verify(c, out, s, e); });
      compared += 2;
      if (a.empty() || a != b) o.fail("classify output differs for " + c.problem.gallery_name);
      if (va.empty() || va != vb) o.fail("verify output differs for " + c.problem.gallery_name);
    }
  }
  o.detail = std::to_string(compared) + " report pairs byte-identical";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "gallery classification table", [] { return gallery_table(false); }},
      {2, "LS postconditions", ls_postconditions},
      {3, "route agreement", [] { return gallery_table(true); }},
      {4, "invariance suite", invariance_suite},
      {5, "periodic BVP reproduction", bvp_reproduction},
      {6, "explicit pair on the t^3 map", cusp_explicit_pair},
      {7, "jet engine", jet_engine},
      {8, "strata suite", strata_suite},
      {9, "determinism", determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    for (const std::string& f : o.failures) std::printf("       - %s\n", f.c_str());
    if (!o.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
