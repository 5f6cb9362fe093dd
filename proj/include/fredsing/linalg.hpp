#pragma once

#include <Eigen/Dense>

#include <vector>

#include "fredsing/jets.hpp"

namespace fredsing {

inline constexpr double kDefaultRankTol = 1e-8;

struct RankDecision {
  int rank = 0;
  std::vector<double> singular_values;  // descending
  double tol_used = kDefaultRankTol;
  // True when some normalized singular value lies in (tol, sqrt(tol)], i.e.
  // the rank would change under a modest change of tolerance.
  bool ambiguous = false;
};

// rank = #{sigma_i > tol * max(1, sigma_max)}.
RankDecision rank_decision(const Eigen::MatrixXd& rows, double tol = kDefaultRankTol);

// rank_decision after scaling each row to unit norm. Rows at or below
// tol * max(1, largest row norm) are left as they are. Stacks of I_h rows
// grow roughly like h!, and without equilibration the largest row sets the
// threshold for all the others.
RankDecision stack_rank(const Eigen::MatrixXd& rows, double tol = kDefaultRankTol);

struct KernelCokernel {
  int kdim = 0;
  std::vector<Eigen::VectorXd> kernel_basis;
  std::vector<Eigen::VectorXd> left_null_basis;
  std::vector<double> singular_values;
};

KernelCokernel kernel_cokernel(const Eigen::MatrixXd& a, double tol = kDefaultRankTol);

struct BorderedSolution {
  Eigen::VectorXd x;
  double s = 0.0;
};

// Solves [[A, b], [c^T, 0]] [x; s] = [rhs_x; rhs_s].
BorderedSolution bordered_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                const Eigen::VectorXd& c, const Eigen::VectorXd& rhs_x,
                                double rhs_s);

struct JetBorderedSolution {
  JetVector x;
  Jet s;
};

// Jet-valued variant: A and rhs carry Taylor coefficients, b and c are fixed.
JetBorderedSolution bordered_solve(const JetMatrix& a, const Eigen::VectorXd& b,
                                   const Eigen::VectorXd& c, const JetVector& rhs_x,
                                   const Jet& rhs_s);

// Solves A X = B for jet-valued A, B, recursing over coefficients against the
// LU factorization of the constant term. Throws SingularBorder when that
// constant term is numerically singular.
JetVector solve_jet(const JetMatrix& a, const JetVector& rhs);

// Minimum-norm w_j with rows * w_j = e_j.
std::vector<Eigen::VectorXd> dual_witnesses(const Eigen::MatrixXd& rows,
                                            double tol = kDefaultRankTol);

// Flip sign so that the entry of largest magnitude (first on ties) is positive.
Eigen::VectorXd sign_normalized(const Eigen::VectorXd& v);

}  // namespace fredsing
