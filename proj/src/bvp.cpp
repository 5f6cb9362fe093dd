#include "fredsing/bvp.hpp"

#include <cmath>
#include <numbers>

#include "fredsing/errors.hpp"

namespace fredsing {

namespace {

constexpr double kPi = std::numbers::pi;

void check_trig(const TrigPoly& f, const std::string& what) {
  for (const auto& term : f)
    if (term.freq < 0) throw ParamOutOfRange(what + ": negative frequency");
}

}  // namespace

double eval_trig(const TrigPoly& f, double t) {
  double s = 0.0;
  for (const auto& term : f) {
    const double w = 2.0 * kPi * term.freq * t;
    s += term.cos_amp * std::cos(w) + term.sin_amp * std::sin(w);
  }
  return s;
}

double trig_mean(const TrigPoly& f) {
  double m = 0.0;
  for (const auto& term : f)
    if (term.freq == 0) m += term.cos_amp;
  return m;
}

int trig_bandwidth(const TrigPoly& f) {
  int b = 0;
  for (const auto& term : f)
    if (term.cos_amp != 0.0 || term.sin_amp != 0.0) b = std::max(b, term.freq);
  return b;
}

double trig_antiderivative(const TrigPoly& f, double t) {
  double s = 0.0;
  for (const auto& term : f) {
    if (term.freq == 0) {
      s += term.cos_amp * t;
      continue;
    }
    const double k = 2.0 * kPi * term.freq;
    s += term.cos_amp * std::sin(k * t) / k + term.sin_amp * (1.0 - std::cos(k * t)) / k;
  }
  return s;
}

std::string to_string(Scheme s) {
  return s == Scheme::spectral ? "spectral" : "finite_difference";
}

std::string to_string(Nonlinearity g) {
  switch (g) {
    case Nonlinearity::p7: return "p7";
    case Nonlinearity::poly: return "poly";
    case Nonlinearity::exp: return "exp";
  }
  return "unknown";
}

Eigen::VectorXd periodic_grid(int N) {
  Eigen::VectorXd t(N);
  for (int i = 0; i < N; ++i) t[i] = static_cast<double>(i) / N;
  return t;
}

Eigen::MatrixXd differentiation_matrix(int N, Scheme scheme) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(N, N);
  if (scheme == Scheme::finite_difference) {
    for (int i = 0; i < N; ++i) {
      d(i, i) = N;
      d(i, (i + N - 1) % N) = -N;
    }
    return d;
  }
  if (N % 2 != 0) throw ParamOutOfRange("spectral scheme needs an even grid size");
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      if (i == j) continue;
      const int k = i - j;
      const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
      d(i, j) = kPi * sgn / std::tan(kPi * k / N);
    }
  }
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) d(i, j) += kPi * (((i + j) % 2 == 0) ? 1.0 : -1.0);
  return d;
}

MapModel make_periodic_bvp(const PeriodicProblem& pr) {
  const int N = pr.N;
  if (N < 16) throw ParamOutOfRange("grid size N must be at least 16");
  check_trig(pr.a, "a");
  check_trig(pr.p, "p");
  if (pr.scheme == Scheme::spectral) {
    if (2 * trig_bandwidth(pr.a) >= N || 2 * trig_bandwidth(pr.p) >= N)
      throw AliasedCoefficients("coefficient frequencies must stay below N/2");
  }
  if (pr.form == Nonlinearity::p7 && std::abs(trig_mean(pr.a)) >= 1e-12)
    throw ParamOutOfRange("p7 requires a coefficient a with zero mean");
  if (pr.form == Nonlinearity::poly && pr.poly.empty())
    throw ParamOutOfRange("poly nonlinearity needs at least one coefficient");

  const Eigen::MatrixXd D = differentiation_matrix(N, pr.scheme);
  const Eigen::VectorXd t = periodic_grid(N);
  Eigen::VectorXd a(N), p(N);
  for (int i = 0; i < N; ++i) {
    a[i] = eval_trig(pr.a, t[i]);
    p[i] = eval_trig(pr.p, t[i]);
  }
  const Nonlinearity form = pr.form;
  const std::vector<double> c = pr.poly;

  auto g = [=](int i, const Jet& u) -> Jet {
    switch (form) {
      case Nonlinearity::p7: {
        const Jet u2 = u * u;
        return a[i] * u2 + p[i] * (u2 * u2);
      }
      case Nonlinearity::poly: {
        Jet s(u.space(), c.back());
        for (int j = static_cast<int>(c.size()) - 2; j >= 0; --j) s = s * u + c[j];
        return a[i] * s;
      }
      case Nonlinearity::exp:
        return a[i] * (exp(u) - 1.0);
    }
    throw std::logic_error("unknown nonlinearity");
  };
  auto g_u = [=](int i, const Jet& u) -> Jet {
    switch (form) {
      case Nonlinearity::p7:
        return (2.0 * a[i]) * u + (4.0 * p[i]) * (u * u * u);
      case Nonlinearity::poly: {
        Jet s(u.space(), 0.0);
        for (int j = static_cast<int>(c.size()) - 1; j >= 1; --j) s = s * u + j * c[j];
        return a[i] * s;
      }
      case Nonlinearity::exp:
        return a[i] * exp(u);
    }
    throw std::logic_error("unknown nonlinearity");
  };

  JetMap eval = [D, g, N](const JetVector& u) {
    JetVector y = mat_vec(D, u);
    for (int i = 0; i < N; ++i) y[i] += g(i, u[i]);
    return y;
  };
  JetJacobian jac = [D, g_u, N](const JetVector& u) {
    JetMatrix m = JetMatrix::constant(u.front().space(), D);
    for (int i = 0; i < N; ++i) {
      Jet gi = g_u(i, u[i]);
      gi[0] += D(i, i);
      m.set(i, i, gi);
    }
    return m;
  };
  const std::string label = "bvp(" + to_string(pr.form) + ",N=" + std::to_string(N) + "," +
                            to_string(pr.scheme) + ")";
  return MapModel(label, N, std::move(eval), kSmoothInfinity, std::move(jac));
}

P7Oracle p7_analytic_oracle(const TrigPoly& a, const TrigPoly& p, int quadN) {
  if (quadN < 64) throw ParamOutOfRange("quadN must be at least 64");
  P7Oracle out;
  out.I1_row.resize(quadN);
  out.I2_row.resize(quadN);
  double j3 = 0.0;
  for (int i = 0; i < quadN; ++i) {
    const double t = static_cast<double>(i) / quadN;
    const double two_a = 2.0 * eval_trig(a, t);
    const double B = 2.0 * trig_antiderivative(a, t);
    out.I1_row[i] = two_a / quadN;
    out.I2_row[i] = -B * two_a / quadN;
    j3 += 24.0 * eval_trig(p, t) / quadN;
  }
  out.J3_value = j3;
  Eigen::MatrixXd rows(2, quadN);
  rows.row(0) = out.I1_row.transpose();
  rows.row(1) = out.I2_row.transpose();
  out.rank_I1_I2 = rank_decision(rows);
  return out;
}

NormalizedFunctionals normalized_functionals(const MapModel& map, const Eigen::VectorXd& u,
                                             int depth, double tol) {
  const FiberingPair raw = make_fibering_pair(map, u, tol);
  const Eigen::VectorXd phi = raw.phi(u);
  const Eigen::VectorXd psi = raw.psi(u);
  NormalizedFunctionals out;
  if (std::abs(phi.mean()) > 1e-12 * phi.norm()) out.alpha = 1.0 / phi.mean();
  if (std::abs(psi.sum()) > 1e-12 * psi.norm()) out.beta = 1.0 / psi.sum();
  const FiberingPair pair =
      rescale_pair(raw, ScaleSpec::constant(out.alpha), ScaleSpec::constant(out.beta));
  out.functionals = fibering_functionals(map, pair, u, depth);
  return out;
}

namespace {

double cosine(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const double d = x.norm() * y.norm();
  return d > 0.0 ? x.dot(y) / d : 0.0;
}

}  // namespace

OracleComparison compare_with_oracle(const PeriodicProblem& problem,
                                     const NormalizedFunctionals& computed, double tol) {
  const FunctionalsRecord& rec = computed.functionals;
  if (rec.k_max < 3) throw std::invalid_argument("compare_with_oracle: need functionals to order 3");
  const P7Oracle oracle = p7_analytic_oracle(problem.a, problem.p, problem.N);
  OracleComparison out;
  const Eigen::VectorXd i1 = rec.I[0];
  out.cos_I1_signed = cosine(i1, oracle.I1_row);
  out.cos_I1 = std::abs(out.cos_I1_signed);
  const Eigen::VectorXd e1 = i1.normalized();
  const Eigen::VectorXd c2 = rec.I[1] - e1 * e1.dot(rec.I[1]);
  const Eigen::VectorXd o2 = oracle.I2_row - e1 * e1.dot(oracle.I2_row);
  out.cos_I2_signed = cosine(c2, o2);
  out.cos_I2 = std::abs(out.cos_I2_signed);
  out.J3 = rec.J[3];
  out.J3_oracle = oracle.J3_value;

  const RankDecision rd = rank_decision(rec.stacked(3), tol);
  out.stack_singular_values = rd.singular_values;
  out.sigma3_over_sigma1 = rd.singular_values[2] / rd.singular_values[0];
  return out;
}

}  // namespace fredsing
