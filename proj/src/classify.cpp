#include "fredsing/classify.hpp"

#include <algorithm>
#include <cmath>

#include "fredsing/errors.hpp"
#include "fredsing/strata.hpp"

namespace fredsing {

namespace {

enum class Tri { zero, nonzero, ambiguous };

Tri classify_value(double v, double scale, const Tolerances& tol) {
  const double a = std::abs(v);
  if (a <= tol.zero * scale) return Tri::zero;
  if (a > tol.nonzero * scale) return Tri::nonzero;
  return Tri::ambiguous;
}

Decision indeterminate(const std::string& stage, int order) {
  return {{Kind::Indeterminate, 0}, order, stage};
}

std::string stack_name(int m) { return "rank(I1..I" + std::to_string(m) + ")"; }

std::vector<std::vector<double>> singular_value_lists(const FunctionalsRecord& rec, double tol) {
  std::vector<std::vector<double>> out;
  for (int m = 1; m <= rec.k_max; ++m) out.push_back(stack_rank(rec.stacked(m), tol).singular_values);
  return out;
}

}  // namespace

std::string to_string(Route r) {
  switch (r) {
    case Route::fibering: return "fibering";
    case Route::ls: return "ls";
    case Route::both: return "both";
  }
  return "unknown";
}

Route parse_route(const std::string& name) {
  if (name == "fibering") return Route::fibering;
  if (name == "ls") return Route::ls;
  if (name == "both") return Route::both;
  throw UnknownName("no route named '" + name + "'");
}

std::optional<Decision> decide(const FunctionalsRecord& rec, const Tolerances& tol, int k_cap,
                               int limit, int smoothness) {
  const int m = rec.k_max;
  auto scale = [&](int k) {
    double s = 1.0;
    for (int h = 0; h <= k; ++h) s = std::max(s, std::abs(rec.J[h]));
    return s;
  };
  auto rank = [&](int mm) { return stack_rank(rec.stacked(mm), tol.rank); };

  switch (classify_value(rec.J[0], scale(0), tol)) {
    case Tri::zero: break;
    case Tri::nonzero: return indeterminate("J0 nonzero at a singular point", 0);
    case Tri::ambiguous: return indeterminate("J0", 0);
  }
  if (m < 1) {
    if (m < limit) return std::nullopt;
    return Decision{{Kind::TransverseUpToCap, 0}, 0, ""};
  }
  const RankDecision r1 = rank(1);
  if (r1.ambiguous) return indeterminate(stack_name(1), 0);
  if (r1.rank == 0) return Decision{{Kind::NotOneTransverse, 0}, 0, ""};

  // Invariant at the top of each pass: (T_k) holds.
  for (int k = 1; k <= k_cap; ++k) {
    if (k > m) {
      if (m < limit) return std::nullopt;
      return Decision{{Kind::TransverseUpToCap, k_cap}, std::min(k - 1, k_cap), ""};
    }
    switch (classify_value(rec.J[k], scale(k), tol)) {
      case Tri::nonzero: return Decision{{Kind::KSingularity, k}, k, ""};
      case Tri::ambiguous: return indeterminate("J" + std::to_string(k), k);
      case Tri::zero: break;
    }
    if (k >= smoothness - 1) return Decision{{Kind::MaximalKTransverse, k}, k, ""};
    if (k + 1 > m) {
      if (m < limit) return std::nullopt;
      return Decision{{Kind::TransverseUpToCap, k_cap}, k, ""};
    }
    const RankDecision rk = rank(k + 1);
    if (rk.ambiguous) return indeterminate(stack_name(k + 1), k);
    if (rk.rank == k) return Decision{{Kind::MaximalKTransverse, k}, k, ""};
    if (rk.rank != k + 1) return indeterminate(stack_name(k + 1) + " dropped", k);
    if (k + 1 > k_cap) return Decision{{Kind::TransverseUpToCap, k_cap}, k_cap, ""};
  }
  return Decision{{Kind::TransverseUpToCap, k_cap}, k_cap, ""};
}

namespace {

template <class Compute>
RouteEvidence run_route(const std::string& route, int limit, int k_cap, int smoothness,
                        const Tolerances& tol, Compute&& compute) {
  RouteEvidence ev;
  ev.route = route;
  int k_max = std::min(3, limit);
  while (true) {
    const FunctionalsRecord rec = compute(k_max);
    const std::optional<Decision> d = decide(rec, tol, k_cap, limit, smoothness);
    if (d || k_max >= limit) {
      ev.source_id = rec.pair_id;
      ev.J = rec.J;
      ev.I_singular_values = singular_value_lists(rec, tol.rank);
      ev.k_max = rec.k_max;
      ev.decision = d ? *d : Decision{{Kind::TransverseUpToCap, k_cap}, k_cap, ""};
      return ev;
    }
    k_max = std::min(limit, k_max + 2);
  }
}

RouteEvidence failed_route(const std::string& route, const Error& e) {
  RouteEvidence ev;
  ev.route = route;
  ev.error = e.what();
  ev.decision = indeterminate(route + ": " + e.code(), 0);
  return ev;
}

}  // namespace

RouteEvidence classify_fibering(const MapModel& map, const FiberingPair& pair,
                                const Eigen::VectorXd& u, int k_cap, const Tolerances& tol) {
  const int limit = std::min({k_cap + 1, kDepthCap, map.smoothness() - 1});
  return run_route("fibering", limit, k_cap, map.smoothness(), tol,
                   [&](int k_max) { return fibering_functionals(map, pair, u, k_max); });
}

RouteEvidence classify_ls(const MapModel& map, const Eigen::VectorXd& u, int k_cap,
                          const Tolerances& tol) {
  const LSModel ls = local_representation(map, u, tol.rank);
  const int limit = std::min(k_cap + 1, map.smoothness() - 1);
  return run_route("ls", limit, k_cap, map.smoothness(), tol,
                   [&](int k_max) { return canonical_functionals(ls, k_max).functionals; });
}

Classification classify_point(const MapModel& map, const Eigen::VectorXd& u,
                              const ClassifyOptions& options) {
  if (options.k_cap < 1 || options.k_cap > kMaxKCap)
    throw ParamOutOfRange("k_cap must lie in [1, " + std::to_string(kMaxKCap) + "]");
  if (u.size() != map.dim()) throw std::invalid_argument("classify_point: point has wrong length");
  Classification out;
  ClassificationReport& rep = out.evidence;
  rep.point = u;
  rep.tol = options.tol;
  rep.k_cap = options.k_cap;
  rep.route = options.route;
  const KernelCokernel kc = kernel_cokernel(map.jacobian(u), options.tol.rank);
  rep.kdim = kc.kdim;
  rep.jacobian_singular_values = kc.singular_values;

  if (kc.kdim == 0 && options.project) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(map.jacobian(u), Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Index n = u.size();
    const FiberingPair near = make_bordered_pair(map, u, sign_normalized(svd.matrixU().col(n - 1)),
                                                 sign_normalized(svd.matrixV().col(n - 1)));
    const Eigen::VectorXd p = project_to_singular(map, u, near);
    ClassifyOptions again = options;
    again.project = false;
    Classification c = classify_point(map, p, again);
    c.evidence.projected_from = u;
    return c;
  }
  if (kc.kdim == 0) {
    out.label = {Kind::Regular, 0};
    return out;
  }
  if (kc.kdim >= 2) {
    out.label = {Kind::NonSimpleKernel, kc.kdim};
    return out;
  }

  if (options.route != Route::ls) {
    try {
      const FiberingPair pair = options.pair ? *options.pair : make_fibering_pair(map, u, options.tol.rank);
      rep.routes.push_back(classify_fibering(map, pair, u, options.k_cap, options.tol));
    } catch (const Error& e) {
      rep.routes.push_back(failed_route("fibering", e));
    }
  }
  if (options.route != Route::fibering) {
    try {
      rep.routes.push_back(classify_ls(map, u, options.k_cap, options.tol));
    } catch (const Error& e) {
      rep.routes.push_back(failed_route("ls", e));
    }
  }

  const Decision& first = rep.routes.front().decision;
  out.label = first.label;
  out.transversality_order = first.transversality_order;
  out.stage = first.stage;
  for (std::size_t i = 1; i < rep.routes.size(); ++i) {
    const Decision& d = rep.routes[i].decision;
    out.transversality_order = std::min(out.transversality_order, d.transversality_order);
    if (d.label == out.label) continue;
    rep.route_agreement = false;
    if (out.label.kind == Kind::Indeterminate) continue;
    if (d.label.kind == Kind::Indeterminate) {
      out.label = d.label;
      out.stage = d.stage;
    } else {
      out.label = {Kind::Indeterminate, 0};
      out.stage = "route disagreement";
    }
  }
  return out;
}

int transversality_order(const Classification& c) { return c.transversality_order; }

}  // namespace fredsing
