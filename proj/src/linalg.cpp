#include "fredsing/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "fredsing/errors.hpp"

namespace fredsing {

namespace {

constexpr double kBorderRcond = 1e-13;

Eigen::JacobiSVD<Eigen::MatrixXd> full_svd(const Eigen::MatrixXd& a) {
  return Eigen::JacobiSVD<Eigen::MatrixXd>(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
}

}  // namespace

RankDecision rank_decision(const Eigen::MatrixXd& rows, double tol) {
  RankDecision out;
  out.tol_used = tol;
  if (rows.rows() == 0 || rows.cols() == 0) return out;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows);
  const Eigen::VectorXd& sv = svd.singularValues();
  out.singular_values.assign(sv.data(), sv.data() + sv.size());
  const double scale = std::max(1.0, sv.size() > 0 ? sv[0] : 0.0);
  const double band = std::sqrt(tol);
  for (double s : out.singular_values) {
    const double r = s / scale;
    if (r > tol) ++out.rank;
    if (r > tol && r <= band) out.ambiguous = true;
  }
  return out;
}

RankDecision stack_rank(const Eigen::MatrixXd& rows, double tol) {
  if (rows.rows() == 0) return rank_decision(rows, tol);
  const Eigen::VectorXd norms = rows.rowwise().norm();
  const double floor = tol * std::max(1.0, norms.maxCoeff());
  Eigen::MatrixXd scaled = rows;
  for (Eigen::Index i = 0; i < rows.rows(); ++i)
    if (norms[i] > floor) scaled.row(i) /= norms[i];
  return rank_decision(scaled, tol);
}

Eigen::VectorXd sign_normalized(const Eigen::VectorXd& v) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[best]) * (1.0 + 1e-12)) best = i;
  if (v.size() > 0 && v[best] < 0) return -v;
  return v;
}

KernelCokernel kernel_cokernel(const Eigen::MatrixXd& a, double tol) {
  if (a.rows() != a.cols()) throw std::invalid_argument("kernel_cokernel: matrix not square");
  KernelCokernel out;
  const Eigen::Index n = a.rows();
  if (n == 0) return out;
  auto svd = full_svd(a);
  const Eigen::VectorXd& sv = svd.singularValues();
  out.singular_values.assign(sv.data(), sv.data() + sv.size());
  const double scale = std::max(1.0, sv[0]);
  int rank = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (sv[i] > tol * scale) ++rank;
  out.kdim = static_cast<int>(n) - rank;
  for (Eigen::Index i = rank; i < n; ++i) {
    out.kernel_basis.push_back(sign_normalized(svd.matrixV().col(i)));
    out.left_null_basis.push_back(sign_normalized(svd.matrixU().col(i)));
  }
  return out;
}

BorderedSolution bordered_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                const Eigen::VectorXd& c, const Eigen::VectorXd& rhs_x,
                                double rhs_s) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd m(n + 1, n + 1);
  m.topLeftCorner(n, n) = a;
  m.topRightCorner(n, 1) = b;
  m.bottomLeftCorner(1, n) = c.transpose();
  m(n, n) = 0.0;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  if (!(lu.rcond() > kBorderRcond)) throw SingularBorder("bordered matrix is singular");
  Eigen::VectorXd rhs(n + 1);
  rhs.head(n) = rhs_x;
  rhs[n] = rhs_s;
  Eigen::VectorXd sol = lu.solve(rhs);
  return {sol.head(n), sol[n]};
}

JetVector solve_jet(const JetMatrix& a, const JetVector& rhs) {
  const int n = a.rows();
  if (a.cols() != n || static_cast<int>(rhs.size()) != n)
    throw std::invalid_argument("solve_jet: shape mismatch");
  const JetSpacePtr& sp = a.space();
  const std::size_t S = sp->size();
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a.coefficient(0));
  if (!(lu.rcond() > kBorderRcond)) throw SingularBorder("constant term of jet system is singular");
  Eigen::MatrixXd X(n, S);
  for (std::size_t m = 0; m < S; ++m) {
    Eigen::VectorXd r(n);
    for (int i = 0; i < n; ++i) r[i] = rhs[i][m];
    sp->for_each_split(m, [&](std::size_t ia, std::size_t ix) {
      if (ia != 0 && a.active(ia)) r.noalias() -= a.coefficient(ia) * X.col(ix);
    });
    X.col(m) = lu.solve(r);
  }
  JetVector out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::vector<double> ci(S);
    for (std::size_t m = 0; m < S; ++m) ci[m] = X(i, m);
    out.emplace_back(sp, std::move(ci));
  }
  return out;
}

JetBorderedSolution bordered_solve(const JetMatrix& a, const Eigen::VectorXd& b,
                                   const Eigen::VectorXd& c, const JetVector& rhs_x,
                                   const Jet& rhs_s) {
  const int n = a.rows();
  const JetSpacePtr& sp = a.space();
  JetMatrix m(sp, n + 1, n + 1);
  for (std::size_t i = 0; i < sp->size(); ++i) {
    if (!a.active(i)) continue;
    m.coefficient(i).topLeftCorner(n, n) = a.coefficient(i);
  }
  Eigen::MatrixXd& m0 = m.coefficient(0);
  m0.topRightCorner(n, 1) = b;
  m0.bottomLeftCorner(1, n) = c.transpose();
  JetVector rhs(rhs_x);
  rhs.push_back(rhs_s);
  JetVector sol = solve_jet(m, rhs);
  Jet s = sol.back();
  sol.pop_back();
  return {std::move(sol), std::move(s)};
}

std::vector<Eigen::VectorXd> dual_witnesses(const Eigen::MatrixXd& rows, double tol) {
  const RankDecision rd = rank_decision(rows, tol);
  if (rd.rank != rows.rows()) throw NotIndependent("rows are not linearly independent");
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(rows);
  std::vector<Eigen::VectorXd> out;
  for (Eigen::Index j = 0; j < rows.rows(); ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Unit(rows.rows(), j);
    out.push_back(cod.solve(e));
  }
  return out;
}

}  // namespace fredsing
