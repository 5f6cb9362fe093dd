#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

#include "fredsing/derivatives.hpp"
#include "fredsing/jets.hpp"
#include "fredsing/linalg.hpp"
#include "fredsing/model.hpp"

namespace fredsing {

// Radius of the neighbourhood used by sampling-based checks.
inline constexpr double kNeighborhoodRadius = 0.1;

struct PairValue {
  JetVector phi;
  JetVector psi;
};

using PairEvaluator = std::function<PairValue(const JetVector&)>;

// Kernel field phi and cokernel field psi near a simple singularity.
struct FiberingPair {
  Eigen::VectorXd base_point;
  Eigen::VectorXd border_b;  // cokernel representative at the base point
  Eigen::VectorXd border_c;  // kernel representative at the base point
  std::string normalization;
  std::string id;
  PairEvaluator evaluate;

  // Plain values at a point.
  Eigen::VectorXd phi(const Eigen::VectorXd& u) const;
  Eigen::VectorXd psi(const Eigen::VectorXd& u) const;
};

// phi(u) is the x-part of [[F'(u), b], [c^T, 0]] (x, s) = (0, 1); psi(u) comes
// from the transposed system. b, c are the unit left-null and kernel vectors
// at u0, frozen. Throws NotSimple, SingularBorder.
FiberingPair make_fibering_pair(const MapModel& map, const Eigen::VectorXd& u0,
                                double tol = kDefaultRankTol);

// Bordered pair with caller-chosen border vectors (b near the cokernel, c near
// the kernel); usable at points close to, but not on, S_1.
FiberingPair make_bordered_pair(const MapModel& map, const Eigen::VectorXd& u0,
                                const Eigen::VectorXd& b, const Eigen::VectorXd& c);

// Pair given by explicit formulas.
FiberingPair explicit_pair(const std::string& id, const Eigen::VectorXd& base_point,
                           PairEvaluator evaluate);

struct FunctionalsRecord {
  std::vector<double> J;           // J_0..J_kmax
  std::vector<Eigen::VectorXd> I;  // I_1..I_kmax (I[h-1] is I_h)
  Eigen::VectorXd at;
  Eigen::VectorXd phi;  // kernel direction the J_h = I_h . phi identity uses
  std::string pair_id;
  int k_max = 0;

  Eigen::MatrixXd stacked(int m) const;  // rows I_1..I_m
};

// J_0 = psi F' phi, I_h = grad J_{h-1}, J_h = I_h . phi, for h <= k_max.
// Throws DepthCapExceeded if k_max > min(d - 1, 8).
FunctionalsRecord fibering_functionals(const MapModel& map, const FiberingPair& pair,
                                       const Eigen::VectorXd& u, int k_max);

// J_0 alone (cheap); used by projections and sampling.
double fibering_J0(const MapModel& map, const FiberingPair& pair, const Eigen::VectorXd& u);

// Pair on F~ = delta o F o gamma^{-1}:
//   phi~(v) = G phi(gamma^{-1} v),  psi~(v) = D^{-T} psi(gamma^{-1} v).
FiberingPair pair_transform(const FiberingPair& pair, const AffinePair& affine,
                            const MapModel& map, const MapModel& transformed_map);

// Scalar field offset + (u - center)^T Q (u - center). Constants use Q = 0.
struct ScaleSpec {
  double offset = 1.0;
  Eigen::MatrixXd quadratic;  // empty means zero
  Eigen::VectorXd center;

  static ScaleSpec constant(double c) { return {c, {}, {}}; }
  Jet eval(const JetVector& u) const;
  double eval(const Eigen::VectorXd& u) const;
  // Lower bound of |value| on the ball of radius r around center.
  double lower_bound(double r) const;
  std::string describe() const;
};

// phi~ = alpha phi, psi~ = beta psi. Throws VanishingScale if either factor
// can vanish on the working neighbourhood.
FiberingPair rescale_pair(const FiberingPair& pair, const ScaleSpec& alpha, const ScaleSpec& beta);

}  // namespace fredsing
