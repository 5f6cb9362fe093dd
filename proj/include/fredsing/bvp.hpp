#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "fredsing/fibering.hpp"
#include "fredsing/linalg.hpp"
#include "fredsing/model.hpp"

namespace fredsing {

// cos_amp * cos(2 pi freq t) + sin_amp * sin(2 pi freq t), freq a non-negative integer.
struct TrigTerm {
  int freq = 0;
  double cos_amp = 0.0;
  double sin_amp = 0.0;
};
using TrigPoly = std::vector<TrigTerm>;

double eval_trig(const TrigPoly& f, double t);
double trig_mean(const TrigPoly& f);
int trig_bandwidth(const TrigPoly& f);
// int_0^t f(s) ds in closed form.
double trig_antiderivative(const TrigPoly& f, double t);

enum class Scheme { spectral, finite_difference };
// p7:   g = a u^2 + p u^4
// poly: g = a * sum_j poly[j] u^j
// exp:  g = a * (exp(u) - 1)
enum class Nonlinearity { p7, poly, exp };

std::string to_string(Scheme s);
std::string to_string(Nonlinearity g);

struct PeriodicProblem {
  int N = 64;
  Nonlinearity form = Nonlinearity::p7;
  TrigPoly a;
  TrigPoly p;
  std::vector<double> poly;
  Scheme scheme = Scheme::spectral;
};

// Grid t_i = i / N on the unit period.
Eigen::VectorXd periodic_grid(int N);

// Differentiation on the unit period. The spectral matrix adds N*pi times the
// projector on the Nyquist mode, which plain Fourier differentiation
// annihilates on even grids; the finite-difference matrix is the backward
// difference.
Eigen::MatrixXd differentiation_matrix(int N, Scheme scheme);

// F(u) = D u + g(t, u) on the grid. Throws AliasedCoefficients,
// ParamOutOfRange (N < 16, nonzero mean of a for p7, negative frequencies).
MapModel make_periodic_bvp(const PeriodicProblem& problem);

struct P7Oracle {
  Eigen::VectorXd I1_row;  // row_i = 2 a(t_i) / N
  Eigen::VectorXd I2_row;  // row_i = -B(t_i) 2 a(t_i) / N, B = int_0^t 2a
  double J3_value = 0.0;   // int_0^1 24 p
  RankDecision rank_I1_I2;
};

// Closed-form functionals at u = 0 for the normalization phi(0) = 1,
// psi(0) = int_0^1 (.) dt. The I2 row is valid as a functional on N(I1).
P7Oracle p7_analytic_oracle(const TrigPoly& a, const TrigPoly& p, int quadN);

// Functionals of the bordered pair rescaled by constants so that phi has grid
// mean 1 and psi has grid sum 1 at u (phi = 1, psi = integral for P7 at 0).
struct NormalizedFunctionals {
  double alpha = 1.0;
  double beta = 1.0;
  FunctionalsRecord functionals;
};
NormalizedFunctionals normalized_functionals(const MapModel& map, const Eigen::VectorXd& u,
                                             int depth, double tol = kDefaultRankTol);

// Rows are compared up to a nonzero factor, so cos_* are absolute values. With
// phi mean 1 and psi sum 1 the computed I2 row is +B 2a / N on N(I1), i.e.
// cos_I2_signed = -1 against the oracle row.
struct OracleComparison {
  double cos_I1 = 0.0;
  double cos_I2 = 0.0;  // both rows projected orthogonally to the computed I1
  double cos_I1_signed = 0.0;
  double cos_I2_signed = 0.0;
  double J3 = 0.0;
  double J3_oracle = 0.0;
  std::vector<double> stack_singular_values;  // stacked I1..I3
  double sigma3_over_sigma1 = 0.0;
};
// Needs depth >= 3 functionals of a p7 problem at u = 0. The stack I1..I3 is
// expected to be dependent (sigma3 / sigma1 ~ 0) when p = 0.
OracleComparison compare_with_oracle(const PeriodicProblem& problem,
                                     const NormalizedFunctionals& computed,
                                     double tol = kDefaultRankTol);

}  // namespace fredsing
