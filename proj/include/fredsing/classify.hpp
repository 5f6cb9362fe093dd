#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "fredsing/fibering.hpp"
#include "fredsing/kind.hpp"
#include "fredsing/lsreduce.hpp"
#include "fredsing/model.hpp"

namespace fredsing {

enum class Route { fibering, ls, both };
std::string to_string(Route r);
Route parse_route(const std::string& name);  // UnknownName

inline constexpr int kDefaultKCap = 6;
inline constexpr int kMaxKCap = 8;

// Outcome of the decision loop on one set of functionals.
struct Decision {
  KindLabel label;
  int transversality_order = 0;
  std::string stage;  // set for Indeterminate
};

struct RouteEvidence {
  std::string route;      // "fibering" or "ls"
  std::string source_id;  // pair id or "canonical"
  std::vector<double> J;
  std::vector<std::vector<double>> I_singular_values;  // stacks I_1..I_m, m = 1..
  int k_max = 0;
  Decision decision;
  std::string error;  // set if the route threw
};

struct ClassificationReport {
  Eigen::VectorXd point;
  Tolerances tol;
  int k_cap = kDefaultKCap;
  Route route = Route::both;
  int kdim = 0;
  std::vector<double> jacobian_singular_values;
  std::vector<RouteEvidence> routes;
  bool route_agreement = true;
  std::optional<Eigen::VectorXd> projected_from;
};

struct Classification {
  KindLabel label;
  int transversality_order = 0;
  std::string stage;
  ClassificationReport evidence;

  Kind kind() const { return label.kind; }
  int k() const { return label.k; }
};

struct ClassifyOptions {
  int k_cap = kDefaultKCap;
  Tolerances tol;
  Route route = Route::both;
  // Pair to use on the fibering route instead of the bordered one.
  std::optional<FiberingPair> pair;
  // Newton-project regular points near S_1 before classifying.
  bool project = false;
};

// Decision loop on precomputed functionals J_0..J_m, I_1..I_m. Returns
// nullopt when more orders are needed than `rec` provides and `rec.k_max` is
// below `limit`.
std::optional<Decision> decide(const FunctionalsRecord& rec, const Tolerances& tol, int k_cap,
                               int limit, int smoothness);

Classification classify_point(const MapModel& map, const Eigen::VectorXd& u,
                              const ClassifyOptions& options = {});

int transversality_order(const Classification& c);

// Single-route evidence (used by classify_point, exposed for diagnostics).
RouteEvidence classify_fibering(const MapModel& map, const FiberingPair& pair,
                                const Eigen::VectorXd& u, int k_cap, const Tolerances& tol);
RouteEvidence classify_ls(const MapModel& map, const Eigen::VectorXd& u, int k_cap,
                          const Tolerances& tol);

}  // namespace fredsing
