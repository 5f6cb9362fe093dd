#include "fredsing/fibering.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fredsing/errors.hpp"

namespace fredsing {

namespace {

// One first-order scratch variable: enough to evaluate pairs at plain points
// for maps without an analytic Jacobian.
const JetSpacePtr& point_space() {
  static const JetSpacePtr sp = JetSpace::make({1}, {"eta"}, 0);
  return sp;
}

Jet j0_jet(const MapModel& map, const FiberingPair& pair, const JetVector& u) {
  PairValue pv = pair.evaluate(u);
  return dot(pv.psi, map.apply_derivative(u, pv.phi));
}

}  // namespace

Eigen::VectorXd FiberingPair::phi(const Eigen::VectorXd& u) const {
  return constant_part(evaluate(constant_jets(point_space(), u)).phi);
}

Eigen::VectorXd FiberingPair::psi(const Eigen::VectorXd& u) const {
  return constant_part(evaluate(constant_jets(point_space(), u)).psi);
}

FiberingPair make_bordered_pair(const MapModel& map, const Eigen::VectorXd& u0,
                                const Eigen::VectorXd& b, const Eigen::VectorXd& c) {
  FiberingPair pair;
  pair.base_point = u0;
  pair.border_b = b;
  pair.border_c = c;
  pair.normalization = "c^T phi = 1, b^T psi = 1";
  pair.id = "bordered";
  pair.evaluate = [map, b, c](const JetVector& u) {
    const JetMatrix a = map.jacobian(u);
    const JetSpacePtr& sp = a.space();
    const JetVector zero(u.size(), Jet(sp));
    const Jet one(sp, 1.0);
    PairValue pv;
    pv.phi = bordered_solve(a, b, c, zero, one).x;
    pv.psi = bordered_solve(a.transpose(), c, b, zero, one).x;
    return pv;
  };
  // Evaluate once so a singular border surfaces here rather than later.
  pair.phi(u0);
  return pair;
}

FiberingPair make_fibering_pair(const MapModel& map, const Eigen::VectorXd& u0, double tol) {
  const KernelCokernel kc = kernel_cokernel(map.jacobian(u0), tol);
  if (kc.kdim != 1)
    throw NotSimple("kernel dimension at the base point is " + std::to_string(kc.kdim));
  return make_bordered_pair(map, u0, kc.left_null_basis[0], kc.kernel_basis[0]);
}

FiberingPair explicit_pair(const std::string& id, const Eigen::VectorXd& base_point,
                           PairEvaluator evaluate) {
  FiberingPair pair;
  pair.base_point = base_point;
  pair.id = id;
  pair.normalization = "explicit";
  pair.evaluate = std::move(evaluate);
  pair.border_c = pair.phi(base_point);
  pair.border_b = pair.psi(base_point);
  return pair;
}

Eigen::MatrixXd FunctionalsRecord::stacked(int m) const {
  const Eigen::Index n = at.size();
  Eigen::MatrixXd rows(m, n);
  for (int h = 0; h < m; ++h) rows.row(h) = I.at(h).transpose();
  return rows;
}

FunctionalsRecord fibering_functionals(const MapModel& map, const FiberingPair& pair,
                                       const Eigen::VectorXd& u, int k_max) {
  if (k_max < 0) throw std::invalid_argument("fibering_functionals: negative k_max");
  const int limit = std::min(map.smoothness() - 1, kDepthCap);
  if (k_max > limit)
    throw DepthCapExceeded("k_max " + std::to_string(k_max) + " exceeds " + std::to_string(limit));
  const int n = map.dim();
  FunctionalsRecord rec;
  rec.at = u;
  rec.pair_id = pair.id;
  rec.k_max = k_max;
  rec.phi = pair.phi(u);
  rec.J.assign(k_max + 1, 0.0);
  rec.I.assign(k_max, Eigen::VectorXd::Zero(n));

  // Variables: probe, layers 1..k_max-1, optional scratch.
  const bool scratch = !map.has_analytic_jacobian();
  const int nvars = (k_max >= 1 ? k_max : 0) + (scratch ? 1 : 0);
  const JetSpacePtr sp = JetSpace::make(std::vector<int>(nvars, 1), {},
                                        scratch ? nvars - 1 : -1);
  if (k_max == 0) {
    rec.J[0] = j0_jet(map, pair, constant_jets(sp, u))[0];
    return rec;
  }
  for (int j = 0; j < n; ++j) {
    JetVector U = constant_jets(sp, u);
    U[j][1] = 1.0;  // probe variable 0 along e_j
    for (int layer = k_max - 1; layer >= 1; --layer) {
      const JetVector phi = pair.evaluate(U).phi;
      for (int i = 0; i < n; ++i) U[i] += phi[i].times_variable(layer);
    }
    const Jet J0 = j0_jet(map, pair, U);
    for (int h = 0; h < k_max; ++h) {
      const std::size_t layers = ((std::size_t{1} << h) - 1) << 1;
      rec.I[h][j] = J0[layers | 1];
      if (j == 0) rec.J[h] = J0[layers];
    }
  }
  rec.J[k_max] = rec.I[k_max - 1].dot(rec.phi);
  return rec;
}

double fibering_J0(const MapModel& map, const FiberingPair& pair, const Eigen::VectorXd& u) {
  const PairValue pv = pair.evaluate(constant_jets(point_space(), u));
  const Eigen::MatrixXd a = map.jacobian(u);
  return constant_part(pv.psi).dot(a * constant_part(pv.phi));
}

FiberingPair pair_transform(const FiberingPair& pair, const AffinePair& affine,
                            const MapModel& map, const MapModel& transformed_map) {
  affine.validate();
  if (map.dim() != transformed_map.dim() || affine.gamma_matrix.rows() != map.dim())
    throw SingularAffine("pair_transform: dimension mismatch");
  const AffinePair inv = affine.inverse();
  const Eigen::MatrixXd g = affine.gamma_matrix;
  const Eigen::MatrixXd d_inv_t = inv.delta_matrix.transpose();
  FiberingPair out;
  out.base_point = affine.gamma(pair.base_point);
  out.border_b = d_inv_t * pair.border_b;
  out.border_c = g * pair.border_c;
  out.normalization = pair.normalization + " (transformed)";
  out.id = "transform(" + pair.id + ")";
  const PairEvaluator base = pair.evaluate;
  const Eigen::MatrixXd gi = inv.gamma_matrix;
  const Eigen::VectorXd gs = inv.gamma_shift;
  out.evaluate = [base, g, d_inv_t, gi, gs](const JetVector& v) {
    const PairValue pv = base(mat_vec(gi, v, gs));
    return PairValue{mat_vec(g, pv.phi), mat_vec(d_inv_t, pv.psi)};
  };
  return out;
}

Jet ScaleSpec::eval(const JetVector& u) const {
  Jet r(u.front().space(), offset);
  if (quadratic.size() == 0) return r;
  JetVector du(u);
  for (std::size_t i = 0; i < du.size(); ++i) du[i] -= center[i];
  const JetVector qd = mat_vec(quadratic, du);
  return r + dot(du, qd);
}

double ScaleSpec::eval(const Eigen::VectorXd& u) const {
  if (quadratic.size() == 0) return offset;
  const Eigen::VectorXd d = u - center;
  return offset + d.dot(quadratic * d);
}

double ScaleSpec::lower_bound(double r) const {
  double qn = 0.0;
  if (quadratic.size() > 0) qn = Eigen::JacobiSVD<Eigen::MatrixXd>(quadratic).singularValues()[0];
  return std::abs(offset) - qn * r * r;
}

std::string ScaleSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << offset;
  if (quadratic.size() > 0) {
    os << "+q[";
    for (Eigen::Index i = 0; i < quadratic.size(); ++i) os << (i ? "," : "") << quadratic.data()[i];
    os << "]";
  }
  return os.str();
}

FiberingPair rescale_pair(const FiberingPair& pair, const ScaleSpec& alpha, const ScaleSpec& beta) {
  ScaleSpec a = alpha;
  ScaleSpec b = beta;
  for (ScaleSpec* s : {&a, &b}) {
    if (s->quadratic.size() > 0 && s->center.size() == 0) s->center = pair.base_point;
    if (s->lower_bound(kNeighborhoodRadius) <= 1e-12)
      throw VanishingScale("scale factor may vanish on the working neighbourhood");
  }
  FiberingPair out = pair;
  out.id = "rescale(" + pair.id + ";alpha=" + a.describe() + ";beta=" + b.describe() + ")";
  const PairEvaluator base = pair.evaluate;
  out.evaluate = [base, a, b](const JetVector& u) {
    PairValue pv = base(u);
    const Jet sa = a.eval(u);
    const Jet sb = b.eval(u);
    for (auto& x : pv.phi) x = sa.is_constant() ? x * sa[0] : x * sa;
    for (auto& x : pv.psi) x = sb.is_constant() ? x * sb[0] : x * sb;
    return pv;
  };
  return out;
}

}  // namespace fredsing
