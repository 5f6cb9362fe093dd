#pragma once

#include <Eigen/Dense>

#include <vector>

#include "fredsing/fibering.hpp"
#include "fredsing/model.hpp"

namespace fredsing {

// Tolerances shared by every decision.
struct Tolerances {
  double rank = kDefaultRankTol;
  double zero = 1e-6;
  double nonzero = 1e-3;
};

// Local coordinates at a simple singularity u0:
//   alpha(u) = (e^T (u - u0), Q_R^T (F(u) - F(u0))),
//   f(t, z)  = w^T (F(alpha^{-1}(t, z)) - F(u0)),
// with e, w the unit kernel and left-null vectors and Q_R an orthonormal basis
// of the range of F'(u0).
class LSModel {
 public:
  LSModel(MapModel map, Eigen::VectorXd u0, double tol);

  const Eigen::VectorXd& base_point() const noexcept { return u0_; }
  const Eigen::VectorXd& image() const noexcept { return F_u0_; }
  const Eigen::VectorXd& kernel_vector() const noexcept { return e_; }
  const Eigen::VectorXd& cokernel_vector() const noexcept { return w_; }
  const Eigen::MatrixXd& range_basis() const noexcept { return q_range_; }
  Eigen::MatrixXd kernel_projection() const { return e_ * e_.transpose(); }
  Eigen::MatrixXd range_projection() const;
  double condition() const noexcept { return cond_; }
  int dim() const noexcept { return map_.dim(); }
  int smoothness() const noexcept { return map_.smoothness(); }

  // alpha^{-1} at jet points with zero constant terms; tz has n components.
  JetVector alpha_inverse(const JetVector& tz) const;
  Jet f_jet(const JetVector& tz) const;
  // f along (t, s * xi_dir): variables t (order t_order) and s (order 1 if a
  // direction is given).
  Jet f_jet(int t_order, const Eigen::VectorXd* xi_dir = nullptr) const;

 private:
  MapModel map_;
  Eigen::VectorXd u0_, F_u0_, e_, w_;
  Eigen::MatrixXd q_range_;
  Eigen::PartialPivLU<Eigen::MatrixXd> alpha_prime_lu_;
  double cond_ = 0.0;
};

// Throws NotSimple, IllConditioned (cond(alpha'(u0)) > 1e8).
LSModel local_representation(const MapModel& map, const Eigen::VectorXd& u0,
                             double tol = kDefaultRankTol);

struct CanonicalRecord {
  FunctionalsRecord functionals;  // rows live on (t, z) coordinates
  double f0 = 0.0;                // f(0, 0)
  Eigen::VectorXd grad_f0;        // (df/dt, df/dz_j) at (0, 0)
};

// J_h = d^{h+1}f/dt^{h+1}, I_h = (d^{h+1}f/dt^{h+1}, d^{h+1}f/dt^h dz_j).
// Throws OrderExceedsSmoothness if k_max + 1 > d.
CanonicalRecord canonical_functionals(const LSModel& ls, int k_max);

struct LSConditions {
  bool Tk = false;
  bool Sk = false;
  bool Mk = false;
  bool Mk_implication = false;  // row k+1 lies in span of rows 1..k
  std::vector<Eigen::VectorXd> witnesses;
  std::vector<double> J;
};

LSConditions ls_conditions(const LSModel& ls, int k, const Tolerances& tol);

}  // namespace fredsing
