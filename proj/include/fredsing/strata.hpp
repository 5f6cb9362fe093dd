#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

#include "fredsing/fibering.hpp"
#include "fredsing/lsreduce.hpp"
#include "fredsing/model.hpp"

namespace fredsing {

// Newton on J_0 = 0 with step -J_0 I_1^T / |I_1|^2 until |J_0| <= 1e-12.
// Throws DegenerateGradient when |I_1| <= grad_tol at an iterate, NoConvergence
// after max_iter steps.
Eigen::VectorXd project_to_singular(const MapModel& map, const Eigen::VectorXd& guess,
                                    const FiberingPair& pair, int max_iter = 50,
                                    double grad_tol = 1e-3);

struct Membership {
  bool member = false;
  std::vector<double> residuals;  // |J_0| .. |J_{h-1}|
};

// u is in S_{1_h} iff J_0..J_{h-1} are all below tol.zero (relative to
// max(1, max |J_j|)).
Membership stratum_membership(const MapModel& map, const Eigen::VectorXd& u, int h,
                              const FiberingPair& pair, const Tolerances& tol = {});

// Orthonormal basis (columns) of the common kernel of I_1..I_h at u.
// Throws RankDeficient if rank(I_1..I_h) < h.
Eigen::MatrixXd tangent_space(const MapModel& map, const Eigen::VectorXd& u, int h,
                              const FiberingPair& pair, const Tolerances& tol = {});

struct StratumSample {
  std::vector<Eigen::VectorXd> points;
  std::vector<int> h_membership;
  std::vector<double> residuals;  // |J_0| after projection
  std::vector<int> kdim;
  std::uint64_t seed = 0;
  double radius = 0.0;  // radius actually used
  int failures = 0;     // guesses that could not be projected
};

// Projects `count` random guesses within `radius` of u0 onto S_1. The radius
// is halved (up to 4 times) when projection fails for a guess.
StratumSample sample_singular_set(const MapModel& map, const Eigen::VectorXd& u0,
                                  const FiberingPair& pair, int count, std::uint64_t seed,
                                  int h_max, const Tolerances& tol = {},
                                  double radius = kNeighborhoodRadius);

struct CodimensionCheck {
  int h = 0;
  int rank = 0;
  std::vector<double> singular_values;
  bool pass = false;
};

struct StratificationRecord {
  int k = 0;
  std::vector<CodimensionCheck> codimension;
  double J_k = 0.0;
  double phi_tangent_distance = 0.0;  // dist(phi/|phi|, T_{u0} S_{1_k})
  bool phi_in_tangent = false;
  bool member_k_plus_1 = false;
  bool dichotomy_pass = false;
  StratumSample probes;
  int probe_rank_failures = 0;
  bool pass = false;
  std::vector<std::string> failures;
};

StratificationRecord verify_stratification(const MapModel& map, const Eigen::VectorXd& u0, int k,
                                           const FiberingPair& pair, int n_probes,
                                           std::uint64_t seed, const Tolerances& tol = {});

}  // namespace fredsing
