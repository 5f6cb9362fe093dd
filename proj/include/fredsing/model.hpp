#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>

#include "fredsing/jets.hpp"
#include "fredsing/linalg.hpp"
#include "fredsing/rng.hpp"

namespace fredsing {

// Declared smoothness of C-infinity models.
inline constexpr int kSmoothInfinity = 64;

using JetMap = std::function<JetVector(const JetVector&)>;
using JetJacobian = std::function<JetMatrix(const JetVector&)>;

// A smooth map R^n -> R^n evaluable at jet-valued points.
class MapModel {
 public:
  MapModel(std::string label, int n, JetMap eval, int smoothness = kSmoothInfinity,
           JetJacobian jacobian = {});

  const std::string& label() const noexcept { return label_; }
  int dim() const noexcept { return n_; }
  int smoothness() const noexcept { return d_; }
  bool has_analytic_jacobian() const noexcept { return static_cast<bool>(jac_); }

  JetVector eval(const JetVector& u) const;
  Eigen::VectorXd eval(const Eigen::VectorXd& u) const;

  // F'(U) at a jet point. Without an analytic Jacobian the space of U must
  // carry a scratch variable that U does not depend on.
  JetMatrix jacobian(const JetVector& u) const;
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& u) const;

  // F'(U) W, same scratch requirement as jacobian().
  JetVector apply_derivative(const JetVector& u, const JetVector& w) const;

 private:
  std::string label_;
  int n_;
  JetMap eval_;
  int d_;
  JetJacobian jac_;
};

// Points and images transform as u -> G u + g and y -> D y + d.
struct AffinePair {
  Eigen::MatrixXd gamma_matrix;
  Eigen::VectorXd gamma_shift;
  Eigen::MatrixXd delta_matrix;
  Eigen::VectorXd delta_shift;

  static AffinePair identity(int n);
  void validate() const;  // SingularAffine
  AffinePair inverse() const;
  Eigen::VectorXd gamma(const Eigen::VectorXd& u) const { return gamma_matrix * u + gamma_shift; }
  Eigen::VectorXd gamma_inverse(const Eigen::VectorXd& v) const;
};

// Well-conditioned random pair: G, D are rotations times diagonally dominant
// factors with singular values in [0.2, 1.9]; shifts uniform in [-1, 1].
AffinePair random_affine_pair(int n, Rng& rng);

// F~ = delta o F o gamma^{-1}.
MapModel conjugate(const MapModel& map, const AffinePair& pair);

enum class SingularityVerdict { regular, simple, non_simple };

struct SimpleCheck {
  int kdim = 0;
  SingularityVerdict verdict = SingularityVerdict::regular;
};

SimpleCheck is_simple_singularity(const MapModel& map, const Eigen::VectorXd& u,
                                  double tol = kDefaultRankTol);

}  // namespace fredsing
