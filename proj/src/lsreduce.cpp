#include "fredsing/lsreduce.hpp"

#include <algorithm>
#include <cmath>

#include "fredsing/errors.hpp"

namespace fredsing {

namespace {

constexpr double kMaxCondition = 1e8;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

LSModel::LSModel(MapModel map, Eigen::VectorXd u0, double tol)
    : map_(std::move(map)), u0_(std::move(u0)) {
  const int n = map_.dim();
  const Eigen::MatrixXd a = map_.jacobian(u0_);
  const KernelCokernel kc = kernel_cokernel(a, tol);
  if (kc.kdim != 1) throw NotSimple("kernel dimension is " + std::to_string(kc.kdim));
  e_ = kc.kernel_basis[0];
  w_ = kc.left_null_basis[0];
  F_u0_ = map_.eval(u0_);
  // Orthonormal complement of w from a Householder reflection; for w = e_0
  // this is the identity on the remaining coordinates.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr{Eigen::MatrixXd(w_)};
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  q_range_ = q.rightCols(n - 1);
  Eigen::MatrixXd m(n, n);
  m.row(0) = e_.transpose();
  if (n > 1) m.bottomRows(n - 1) = q_range_.transpose() * a;
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
  cond_ = sv[0] / sv[n - 1];
  if (!(cond_ <= kMaxCondition))
    throw IllConditioned("cond(alpha'(u0)) = " + std::to_string(cond_));
  alpha_prime_lu_ = Eigen::PartialPivLU<Eigen::MatrixXd>(m);
}

Eigen::MatrixXd LSModel::range_projection() const {
  const auto n = w_.size();
  return Eigen::MatrixXd::Identity(n, n) - w_ * w_.transpose();
}

JetVector LSModel::alpha_inverse(const JetVector& tz) const {
  const int n = map_.dim();
  if (static_cast<int>(tz.size()) != n) throw std::invalid_argument("alpha_inverse: wrong length");
  const JetSpacePtr& sp = tz.front().space();
  const int levels = sp->total_order();
  std::vector<std::vector<std::size_t>> by_level(levels + 1);
  for (std::size_t m = 1; m < sp->size(); ++m) by_level[sp->total_degree(m)].push_back(m);

  JetVector u = constant_jets(sp, u0_);
  for (int level = 1; level <= levels; ++level) {
    if (by_level[level].empty()) continue;
    const JetVector y = map_.eval(u);
    for (std::size_t m : by_level[level]) {
      Eigen::VectorXd du(n), dy(n);
      for (int i = 0; i < n; ++i) {
        du[i] = u[i][m];
        dy[i] = y[i][m];
      }
      Eigen::VectorXd r(n);
      r[0] = tz[0][m] - e_.dot(du);
      if (n > 1) r.tail(n - 1) = coefficient(tz, m).tail(n - 1) - q_range_.transpose() * dy;
      const Eigen::VectorXd delta = alpha_prime_lu_.solve(r);
      for (int i = 0; i < n; ++i) u[i][m] += delta[i];
    }
  }
  return u;
}

Jet LSModel::f_jet(const JetVector& tz) const {
  const JetVector y = map_.eval(alpha_inverse(tz));
  Jet f = dot(w_, y);
  f -= w_.dot(F_u0_);
  f[0] = w_.dot(constant_part(y) - F_u0_);
  return f;
}

Jet LSModel::f_jet(int t_order, const Eigen::VectorXd* xi_dir) const {
  const int n = map_.dim();
  std::vector<int> orders{t_order};
  if (xi_dir != nullptr) orders.push_back(1);
  const JetSpacePtr sp = JetSpace::make(orders);
  JetVector tz(n, Jet(sp));
  tz[0] = Jet::variable(sp, 0);
  if (xi_dir != nullptr) {
    for (int j = 0; j + 1 < n; ++j) tz[j + 1][sp->stride(1)] = (*xi_dir)[j];
  }
  return f_jet(tz);
}

CanonicalRecord canonical_functionals(const LSModel& ls, int k_max) {
  if (k_max < 0) throw std::invalid_argument("canonical_functionals: negative k_max");
  if (k_max + 1 > ls.smoothness())
    throw OrderExceedsSmoothness("k_max + 1 exceeds declared smoothness");
  const int n = ls.dim();
  CanonicalRecord out;
  FunctionalsRecord& rec = out.functionals;
  rec.at = Eigen::VectorXd::Zero(n);
  rec.phi = Eigen::VectorXd::Unit(n, 0);
  rec.pair_id = "canonical";
  rec.k_max = k_max;
  rec.J.assign(k_max + 1, 0.0);
  rec.I.assign(k_max, Eigen::VectorXd::Zero(n));
  out.grad_f0 = Eigen::VectorXd::Zero(n);

  auto fill_t = [&](const Jet& f) {
    for (int h = 0; h <= k_max; ++h) rec.J[h] = factorial(h + 1) * f.coeff({h + 1, 0});
    out.f0 = f[0];
    out.grad_f0[0] = f.coeff({1, 0});
  };
  if (n == 1) {
    const Jet f = ls.f_jet(k_max + 1);
    for (int h = 0; h <= k_max; ++h) rec.J[h] = factorial(h + 1) * f.coeff({h + 1});
    out.f0 = f[0];
    out.grad_f0[0] = f.coeff({1});
  }
  for (int j = 0; j + 1 < n; ++j) {
    const Eigen::VectorXd dir = Eigen::VectorXd::Unit(n - 1, j);
    const Jet f = ls.f_jet(k_max + 1, &dir);
    if (j == 0) fill_t(f);
    for (int h = 1; h <= k_max; ++h) rec.I[h - 1][j + 1] = factorial(h) * f.coeff({h, 1});
    out.grad_f0[j + 1] = f.coeff({0, 1});
  }
  for (int h = 1; h <= k_max; ++h) rec.I[h - 1][0] = rec.J[h];
  return out;
}

LSConditions ls_conditions(const LSModel& ls, int k, const Tolerances& tol) {
  if (k < 1) throw std::invalid_argument("ls_conditions: k must be at least 1");
  LSConditions out;
  const int k_max = std::min(k + 1, ls.smoothness() - 1);
  const CanonicalRecord can = canonical_functionals(ls, k_max);
  const FunctionalsRecord& rec = can.functionals;
  out.J = rec.J;
  double scale = 1.0;
  for (int h = 0; h <= k; ++h) scale = std::max(scale, std::abs(rec.J[h]));
  auto zero_below = [&](int m) {
    for (int h = 0; h < m; ++h)
      if (std::abs(rec.J[h]) > tol.zero * scale) return false;
    return true;
  };
  auto rank_of = [&](int m) { return m == 0 ? 0 : stack_rank(rec.stacked(m), tol.rank).rank; };
  const int rk = rank_of(k);
  out.Tk = zero_below(k) && rk == k;
  out.Sk = zero_below(k) && std::abs(rec.J[k]) > tol.nonzero * scale && rank_of(k - 1) == k - 1;
  if (k + 1 <= k_max) {
    const int rk1 = rank_of(k + 1);
    out.Mk = zero_below(k + 1) && rk == k && rk1 == k;
    if (out.Tk) {
      const Eigen::MatrixXd rows = rec.stacked(k);
      const Eigen::VectorXd next = rec.I[k];
      Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(rows.transpose());
      const Eigen::VectorXd coeffs = cod.solve(next);
      const double resid = (rows.transpose() * coeffs - next).norm();
      const double s = std::max(1.0, rank_decision(rec.stacked(k + 1), tol.rank).singular_values[0]);
      out.Mk_implication = zero_below(k + 1) && resid <= tol.rank * s;
    }
  } else {
    // Dependence condition is empty at k = d - 1.
    out.Mk = zero_below(k + 1) && rk == k;
    out.Mk_implication = out.Mk;
  }
  if (out.Tk) out.witnesses = dual_witnesses(rec.stacked(k), tol.rank);
  return out;
}

LSModel local_representation(const MapModel& map, const Eigen::VectorXd& u0, double tol) {
  return LSModel(map, u0, tol);
}

}  // namespace fredsing
