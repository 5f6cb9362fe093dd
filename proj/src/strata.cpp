#include "fredsing/strata.hpp"

#include <algorithm>
#include <cmath>

#include "fredsing/errors.hpp"
#include "fredsing/rng.hpp"

namespace fredsing {

namespace {

constexpr double kProjectionTarget = 1e-12;

double j_scale(const std::vector<double>& J, int upto) {
  double s = 1.0;
  for (int h = 0; h <= upto && h < static_cast<int>(J.size()); ++h) s = std::max(s, std::abs(J[h]));
  return s;
}

}  // namespace

Eigen::VectorXd project_to_singular(const MapModel& map, const Eigen::VectorXd& guess,
                                    const FiberingPair& pair, int max_iter, double grad_tol) {
  Eigen::VectorXd u = guess;
  for (int it = 0; it <= max_iter; ++it) {
    const FunctionalsRecord rec = fibering_functionals(map, pair, u, 1);
    const double g = rec.I[0].norm();
    if (g <= grad_tol)
      throw DegenerateGradient("|I_1| = " + std::to_string(g) + " at iterate " + std::to_string(it));
    if (std::abs(rec.J[0]) <= kProjectionTarget) return u;
    if (it == max_iter) break;
    u -= (rec.J[0] / (g * g)) * rec.I[0];
  }
  throw NoConvergence("projection did not reach |J_0| <= 1e-12 in " + std::to_string(max_iter) +
                      " steps");
}

Membership stratum_membership(const MapModel& map, const Eigen::VectorXd& u, int h,
                              const FiberingPair& pair, const Tolerances& tol) {
  Membership out;
  if (h <= 0) {
    out.member = true;
    return out;
  }
  const FunctionalsRecord rec = fibering_functionals(map, pair, u, h - 1);
  const double scale = j_scale(rec.J, h - 1);
  out.member = true;
  for (int j = 0; j < h; ++j) {
    out.residuals.push_back(std::abs(rec.J[j]));
    if (std::abs(rec.J[j]) > tol.zero * scale) out.member = false;
  }
  return out;
}

Eigen::MatrixXd tangent_space(const MapModel& map, const Eigen::VectorXd& u, int h,
                              const FiberingPair& pair, const Tolerances& tol) {
  const int n = map.dim();
  if (h <= 0) return Eigen::MatrixXd::Identity(n, n);
  const FunctionalsRecord rec = fibering_functionals(map, pair, u, h);
  const Eigen::MatrixXd rows = rec.stacked(h);
  const RankDecision rd = stack_rank(rows, tol.rank);
  if (rd.rank < h) throw RankDeficient("rank(I_1..I_h) = " + std::to_string(rd.rank));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullV);
  Eigen::MatrixXd basis = svd.matrixV().rightCols(n - h);
  for (Eigen::Index j = 0; j < basis.cols(); ++j) basis.col(j) = sign_normalized(basis.col(j));
  return basis;
}

StratumSample sample_singular_set(const MapModel& map, const Eigen::VectorXd& u0,
                                  const FiberingPair& pair, int count, std::uint64_t seed,
                                  int h_max, const Tolerances& tol, double radius) {
  StratumSample out;
  out.seed = seed;
  out.radius = radius;
  const int n = map.dim();
  for (int i = 0; i < count; ++i) {
    Rng rng(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(i + 1));
    const Eigen::VectorXd dir = rng.uniform_vector(n, -1.0, 1.0).normalized();
    const double frac = rng.uniform(0.2, 1.0);
    bool done = false;
    for (int halving = 0; halving <= 4 && !done; ++halving) {
      const double r = radius / std::pow(2.0, halving);
      try {
        const Eigen::VectorXd p = project_to_singular(map, u0 + r * frac * dir, pair);
        int h = 0;
        while (h < h_max && stratum_membership(map, p, h + 1, pair, tol).member) ++h;
        out.points.push_back(p);
        out.h_membership.push_back(h);
        out.residuals.push_back(std::abs(fibering_J0(map, pair, p)));
        out.kdim.push_back(is_simple_singularity(map, p, tol.rank).kdim);
        out.radius = std::min(out.radius, r);
        done = true;
      } catch (const SingularBorder&) {
      } catch (const NoConvergence&) {
      } catch (const DegenerateGradient&) {
      }
    }
    if (!done) ++out.failures;
  }
  return out;
}

StratificationRecord verify_stratification(const MapModel& map, const Eigen::VectorXd& u0, int k,
                                           const FiberingPair& pair, int n_probes,
                                           std::uint64_t seed, const Tolerances& tol) {
  StratificationRecord out;
  out.k = k;
  if (k < 1) {
    out.failures.push_back("k must be at least 1");
    return out;
  }
  const FunctionalsRecord rec = fibering_functionals(map, pair, u0, k);
  for (int h = 1; h <= k; ++h) {
    const RankDecision rd = stack_rank(rec.stacked(h), tol.rank);
    CodimensionCheck c{h, rd.rank, rd.singular_values, rd.rank == h && !rd.ambiguous};
    if (!c.pass) out.failures.push_back("rank(I_1..I_" + std::to_string(h) + ") != " + std::to_string(h));
    out.codimension.push_back(std::move(c));
  }
  out.J_k = rec.J[k];
  const double scale = j_scale(rec.J, k);
  bool lower_zero = true;
  for (int h = 0; h < k; ++h)
    if (std::abs(rec.J[h]) > tol.zero * scale) lower_zero = false;
  out.member_k_plus_1 = lower_zero && std::abs(rec.J[k]) <= tol.zero * scale;

  const int n = map.dim();
  const Eigen::MatrixXd rows = rec.stacked(k);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullV);
  const Eigen::MatrixXd T = svd.matrixV().rightCols(n - k);
  const Eigen::VectorXd phi = rec.phi.normalized();
  out.phi_tangent_distance = (phi - T * (T.transpose() * phi)).norm();
  const bool in_t = out.phi_tangent_distance <= tol.zero;
  const bool out_t = out.phi_tangent_distance > tol.nonzero;
  out.phi_in_tangent = in_t;
  out.dichotomy_pass = (in_t || out_t) && (in_t == out.member_k_plus_1);
  if (!out.dichotomy_pass) out.failures.push_back("kernel-line dichotomy violated");

  if (n_probes > 0) {
    out.probes = sample_singular_set(map, u0, pair, n_probes, seed, 1, tol);
    for (const auto& p : out.probes.points) {
      const FunctionalsRecord r1 = fibering_functionals(map, pair, p, 1);
      if (stack_rank(r1.stacked(1), tol.rank).rank != 1) ++out.probe_rank_failures;
    }
    if (out.probe_rank_failures > 0) out.failures.push_back("rank(I_1) != 1 at a probe");
    if (out.probes.failures > 0) out.failures.push_back("probe projection failed");
  }
  out.pass = out.failures.empty();
  return out;
}

}  // namespace fredsing
