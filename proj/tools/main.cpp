// fredsing: classify simple singularities of gallery maps and periodic BVPs.
//
//   fredsing classify --gallery whitney --param k=2
//   fredsing bvp --p 0,1,0
//   fredsing verify --config problem.json --seed 7
//   fredsing gallery --kind MaximalKTransverse --machine
//   fredsing strata --gallery fold_t2 --samples 20

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fredsing/commands.hpp"
#include "fredsing/errors.hpp"

namespace {

using namespace fredsing;

struct Flags {
  std::string config;
  std::string gallery;
  std::vector<std::string> params;
  std::optional<int> n;
  std::string form, scheme, a, p, poly;
  std::optional<std::uint64_t> conjugate_seed;
  std::string point;
  std::optional<int> fixture;
  std::optional<int> k_cap;
  std::optional<double> tol_rank, tol_zero, tol_nonzero;
  std::string route;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials, samples;
  std::string out;
  bool machine = false;
  bool timing = false;
  bool project = false;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON config (schema fredsing.config/1)");
  cmd->add_option("--gallery", f.gallery, "gallery map name");
  cmd->add_option("--param", f.params, "gallery parameter KEY=VALUE (repeatable)");
  cmd->add_option("--n", f.n, "BVP grid size");
  cmd->add_option("--form", f.form, "BVP nonlinearity: p7, poly, exp");
  cmd->add_option("--scheme", f.scheme, "BVP scheme: spectral, finite_difference");
  cmd->add_option("--a", f.a, "BVP coefficient a as freq,cos,sin;...");
  cmd->add_option("--p", f.p, "BVP coefficient p as freq,cos,sin;...");
  cmd->add_option("--poly", f.poly, "BVP polynomial coefficients c0,c1,...");
  cmd->add_option("--conjugate-seed", f.conjugate_seed, "conjugate by a seeded random affine pair");
  cmd->add_option("--point", f.point, "point as comma-separated coordinates");
  cmd->add_option("--fixture", f.fixture, "fixture index of the problem");
  cmd->add_option("--k-cap", f.k_cap, "largest k tested (1..8)");
  cmd->add_option("--tol-rank", f.tol_rank, "relative singular value threshold");
  cmd->add_option("--tol-zero", f.tol_zero, "J values below this (relative) are zero");
  cmd->add_option("--tol-nonzero", f.tol_nonzero, "J values above this (relative) are nonzero");
  cmd->add_option("--route", f.route, "fibering, ls or both");
  cmd->add_option("--seed", f.seed, "seed for randomized checks");
  cmd->add_option("--trials", f.trials, "trials per invariance property");
  cmd->add_option("--samples", f.samples, "stratum samples / probes");
  cmd->add_option("--out", f.out, "write the report here instead of stdout");
  cmd->add_flag("--machine", f.machine, "single-line JSON report");
  cmd->add_flag("--timing", f.timing, "include wall time in the report");
  cmd->add_flag("--project", f.project, "Newton-project regular points onto the singular set");
}

std::vector<double> parse_csv(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigParseError("bad number '" + item + "' in " + what);
    }
  }
  return out;
}

AnalysisConfig build_config(const Flags& f, bool bvp_default) {
  AnalysisConfig c;
  bool have_problem = false;
  if (!f.config.empty()) {
    c = load_config(f.config);
    have_problem = true;
  }
  const bool bvp_flags = f.n || !f.form.empty() || !f.scheme.empty() || !f.a.empty() ||
                         !f.p.empty() || !f.poly.empty();
  if (!f.gallery.empty() && bvp_flags)
    throw ConfigParseError("give either --gallery or BVP flags, not both");
  if (!f.gallery.empty()) {
    c.problem = ProblemSpec{};
    c.problem.gallery_name = f.gallery;
    have_problem = true;
  } else if (bvp_flags || (bvp_default && !have_problem)) {
    if (c.problem.type != ProblemSpec::Type::bvp) {
      c.problem = ProblemSpec{};
      c.problem.type = ProblemSpec::Type::bvp;
      c.problem.bvp.a = {{1, 0.0, 1.0}};
    }
    PeriodicProblem& b = c.problem.bvp;
    if (f.n) b.N = *f.n;
    if (!f.form.empty()) b.form = parse_nonlinearity(f.form);
    if (!f.scheme.empty()) b.scheme = parse_scheme(f.scheme);
    if (!f.a.empty()) b.a = parse_trig_list(f.a);
    if (!f.p.empty()) b.p = parse_trig_list(f.p);
    if (!f.poly.empty()) b.poly = parse_csv(f.poly, "--poly");
    have_problem = true;
  }
  if (!have_problem) throw ConfigParseError("no problem given: use --config, --gallery or BVP flags");
  for (const std::string& kv : f.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || c.problem.type != ProblemSpec::Type::gallery)
      throw ConfigParseError("--param expects KEY=VALUE for a gallery problem, got '" + kv + "'");
    c.problem.params[kv.substr(0, eq)] = parse_csv(kv.substr(eq + 1), "--param").at(0);
  }
  if (f.conjugate_seed) c.problem.conjugate_seed = f.conjugate_seed;
  if (!f.point.empty() && f.fixture) throw ConfigParseError("give at most one of --point and --fixture");
  if (!f.point.empty()) {
    const std::vector<double> v = parse_csv(f.point, "--point");
    c.point = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
    c.fixture.reset();
  }
  if (f.fixture) {
    c.fixture = f.fixture;
    c.point.reset();
  }
  if (f.k_cap) c.k_cap = *f.k_cap;
  if (f.tol_rank) c.tol.rank = *f.tol_rank;
  if (f.tol_zero) c.tol.zero = *f.tol_zero;
  if (f.tol_nonzero) c.tol.nonzero = *f.tol_nonzero;
  if (!f.route.empty()) c.route = parse_route(f.route);
  if (f.seed) c.seed = *f.seed;
  if (f.trials) c.trials = *f.trials;
  if (f.samples) c.samples = *f.samples;
  if (!f.out.empty()) c.output_path = f.out;
  if (f.project) c.project = true;
  validate_config(c);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classify simple singularities of smooth maps R^n -> R^n"};
  app.require_subcommand(1);

  Flags flags;
  CLI::App* classify = app.add_subcommand("classify", "classify points of a problem");
  CLI::App* verify = app.add_subcommand("verify", "run the invariance and strata property suite");
  CLI::App* strata = app.add_subcommand("strata", "membership, tangent spaces and samples of the strata");
  CLI::App* bvp = app.add_subcommand("bvp", "periodic boundary value problem analysis");
  for (CLI::App* cmd : {classify, verify, strata, bvp}) add_common(cmd, flags);

  CLI::App* gallery = app.add_subcommand("gallery", "list gallery fixtures and expected kinds");
  std::string kind_filter, name_filter;
  GalleryListOptions gopt;
  std::optional<double> g_rank, g_zero, g_nonzero;
  gallery->add_option("--kind", kind_filter, "only fixtures with this expected kind");
  gallery->add_option("--name", name_filter, "only this gallery map");
  gallery->add_flag("--machine", gopt.machine, "one JSON record per line");
  gallery->add_flag("--check", gopt.check, "classify every fixture and compare");
  gallery->add_option("--k-cap", gopt.k_cap, "largest k tested (1..8)");
  gallery->add_option("--tol-rank", g_rank, "relative singular value threshold");
  gallery->add_option("--tol-zero", g_zero, "zero threshold for J values");
  gallery->add_option("--tol-nonzero", g_nonzero, "nonzero threshold for J values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  OutputOptions output{flags.machine, flags.timing};
  try {
    if (gallery->parsed()) {
      if (!kind_filter.empty()) gopt.kind = parse_kind(kind_filter);
      if (!name_filter.empty()) gopt.name = name_filter;
      if (g_rank) gopt.tol.rank = *g_rank;
      if (g_zero) gopt.tol.zero = *g_zero;
      if (g_nonzero) gopt.tol.nonzero = *g_nonzero;
      return cmd_gallery(gopt, std::cout, std::cerr);
    }
    const AnalysisConfig config = build_config(flags, bvp->parsed());
    if (classify->parsed()) return cmd_classify(config, output, std::cout, std::cerr);
    if (verify->parsed()) return cmd_verify(config, output, std::cout, std::cerr);
    if (strata->parsed()) return cmd_strata(config, output, std::cout, std::cerr);
    return cmd_bvp(config, output, std::cout, std::cerr);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
