#include "fredsing/model.hpp"

#include <cmath>
#include <stdexcept>

#include "fredsing/errors.hpp"

namespace fredsing {

MapModel::MapModel(std::string label, int n, JetMap eval, int smoothness, JetJacobian jacobian)
    : label_(std::move(label)), n_(n), eval_(std::move(eval)), d_(smoothness),
      jac_(std::move(jacobian)) {
  if (n_ < 1) throw std::invalid_argument("MapModel: dimension must be positive");
  if (!eval_) throw std::invalid_argument("MapModel: missing evaluator");
}

JetVector MapModel::eval(const JetVector& u) const {
  if (static_cast<int>(u.size()) != n_) throw std::invalid_argument("MapModel::eval: wrong length");
  JetVector y = eval_(u);
  if (static_cast<int>(y.size()) != n_) throw std::logic_error("MapModel::eval: wrong image length");
  return y;
}

Eigen::VectorXd MapModel::eval(const Eigen::VectorXd& u) const {
  return constant_part(eval(constant_jets(JetSpace::scalar(), u)));
}

JetMatrix MapModel::jacobian(const JetVector& u) const {
  if (jac_) return jac_(u);
  const JetSpacePtr& sp = u.front().space();
  const int eta = sp->scratch();
  if (eta < 0) throw std::logic_error("MapModel::jacobian: jet space lacks a scratch variable");
  JetMatrix out(sp, n_, n_);
  for (int j = 0; j < n_; ++j) {
    JetVector p(u);
    p[j] += Jet::variable(sp, eta);
    JetVector y = eval(p);
    for (int i = 0; i < n_; ++i) out.set(i, j, y[i].slice(eta, 1));
  }
  return out;
}

Eigen::MatrixXd MapModel::jacobian(const Eigen::VectorXd& u) const {
  if (jac_) return jac_(constant_jets(JetSpace::scalar(), u)).coefficient(0);
  auto sp = JetSpace::make({1}, {"eta"}, 0);
  Eigen::MatrixXd out(n_, n_);
  for (int j = 0; j < n_; ++j) {
    JetVector p = constant_jets(sp, u);
    p[j][1] = 1.0;
    out.col(j) = coefficient(eval(p), 1);
  }
  return out;
}

JetVector MapModel::apply_derivative(const JetVector& u, const JetVector& w) const {
  if (jac_) return jac_(u) * w;
  const JetSpacePtr& sp = u.front().space();
  const int eta = sp->scratch();
  if (eta < 0) throw std::logic_error("MapModel::apply_derivative: jet space lacks a scratch variable");
  JetVector p(u);
  for (int i = 0; i < n_; ++i) p[i] += w[i].times_variable(eta);
  JetVector y = eval(p);
  for (auto& yi : y) yi = yi.slice(eta, 1);
  return y;
}

AffinePair AffinePair::identity(int n) {
  return {Eigen::MatrixXd::Identity(n, n), Eigen::VectorXd::Zero(n),
          Eigen::MatrixXd::Identity(n, n), Eigen::VectorXd::Zero(n)};
}

void AffinePair::validate() const {
  const auto n = gamma_matrix.rows();
  if (gamma_matrix.cols() != n || delta_matrix.rows() != n || delta_matrix.cols() != n ||
      gamma_shift.size() != n || delta_shift.size() != n)
    throw SingularAffine("affine pair has inconsistent shapes");
  if (rank_decision(gamma_matrix, 1e-10).rank != n) throw SingularAffine("gamma matrix is singular");
  if (rank_decision(delta_matrix, 1e-10).rank != n) throw SingularAffine("delta matrix is singular");
}

AffinePair AffinePair::inverse() const {
  validate();
  const Eigen::MatrixXd gi = gamma_matrix.inverse();
  const Eigen::MatrixXd di = delta_matrix.inverse();
  return {gi, -gi * gamma_shift, di, -di * delta_shift};
}

Eigen::VectorXd AffinePair::gamma_inverse(const Eigen::VectorXd& v) const {
  return gamma_matrix.partialPivLu().solve(v - gamma_shift);
}

AffinePair random_affine_pair(int n, Rng& rng) {
  auto factor = [&]() {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(rng.uniform_matrix(n, n, -1.0, 1.0));
    Eigen::MatrixXd q = qr.householderQ();
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) d(i, i) = rng.sign() * rng.uniform(0.6, 1.5);
    d += (0.4 / n) * rng.uniform_matrix(n, n, -1.0, 1.0);
    return Eigen::MatrixXd(q * d);
  };
  AffinePair p;
  p.gamma_matrix = factor();
  p.gamma_shift = rng.uniform_vector(n, -1.0, 1.0);
  p.delta_matrix = factor();
  p.delta_shift = rng.uniform_vector(n, -1.0, 1.0);
  return p;
}

MapModel conjugate(const MapModel& map, const AffinePair& pair) {
  pair.validate();
  if (pair.gamma_matrix.rows() != map.dim()) throw SingularAffine("dimension mismatch");
  const AffinePair inv = pair.inverse();
  const Eigen::MatrixXd gi = inv.gamma_matrix;
  const Eigen::VectorXd gs = inv.gamma_shift;
  const Eigen::MatrixXd dm = pair.delta_matrix;
  const Eigen::VectorXd ds = pair.delta_shift;
  JetMap eval = [map, gi, gs, dm, ds](const JetVector& v) {
    return mat_vec(dm, map.eval(mat_vec(gi, v, gs)), ds);
  };
  JetJacobian jac;
  if (map.has_analytic_jacobian()) {
    jac = [map, gi, gs, dm](const JetVector& v) {
      JetMatrix a = map.jacobian(mat_vec(gi, v, gs));
      JetMatrix out(a.space(), a.rows(), a.cols());
      for (std::size_t i = 0; i < a.space()->size(); ++i)
        if (a.active(i)) out.coefficient(i) = dm * a.coefficient(i) * gi;
      return out;
    };
  }
  return MapModel("conj(" + map.label() + ")", map.dim(), std::move(eval), map.smoothness(),
                  std::move(jac));
}

SimpleCheck is_simple_singularity(const MapModel& map, const Eigen::VectorXd& u, double tol) {
  SimpleCheck out;
  out.kdim = kernel_cokernel(map.jacobian(u), tol).kdim;
  out.verdict = out.kdim == 0   ? SingularityVerdict::regular
                : out.kdim == 1 ? SingularityVerdict::simple
                                : SingularityVerdict::non_simple;
  return out;
}

}  // namespace fredsing
