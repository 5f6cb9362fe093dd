#include <doctest.h>

#include <cmath>

#include "fredsing/derivatives.hpp"
#include "fredsing/errors.hpp"
#include "fredsing/gallery.hpp"
#include "fredsing/jets.hpp"
#include "fredsing/rng.hpp"

using namespace fredsing;

namespace {

void check_coeffs(const Jet& j, const std::vector<double>& want, double tol = 1e-14) {
  REQUIRE(j.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(j[i] == doctest::Approx(want[i]).epsilon(tol));
}

Jet random_jet(const JetSpacePtr& sp, Rng& rng) {
  std::vector<double> c(sp->size());
  for (double& x : c) x = rng.uniform(-1.0, 1.0);
  return Jet(sp, c);
}

}  // namespace

TEST_CASE("binomial square") {
  auto sp = JetSpace::make({2});
  const Jet x = Jet::variable(sp, 0, 1.0);
  check_coeffs(x * x, {1, 2, 1});
}

TEST_CASE("exp series") {
  auto sp = JetSpace::make({3});
  check_coeffs(exp(Jet::variable(sp, 0, 0.0)), {1, 1, 0.5, 1.0 / 6.0});
}

TEST_CASE("geometric series from division") {
  auto sp = JetSpace::make({2});
  check_coeffs(Jet(sp, 1.0) / Jet::variable(sp, 0, 1.0), {1, -1, 1});
}

TEST_CASE("elementary functions against closed-form Taylor coefficients") {
  auto sp = JetSpace::make({5});
  const double a = 0.7;
  const Jet x = Jet::variable(sp, 0, a);
  const Jet s = sin(x), c = cos(x), l = log(x), e = exp(x);
  double f = 1.0;
  for (int k = 0; k <= 5; ++k) {
    if (k > 0) f *= k;
    const double dsin = std::sin(a + k * M_PI / 2);
    const double dcos = std::cos(a + k * M_PI / 2);
    CHECK(s[k] == doctest::Approx(dsin / f).epsilon(1e-13));
    CHECK(c[k] == doctest::Approx(dcos / f).epsilon(1e-13));
    CHECK(e[k] == doctest::Approx(std::exp(a) / f).epsilon(1e-13));
    if (k > 0) CHECK(l[k] == doctest::Approx(std::pow(-1.0, k + 1) / (k * std::pow(a, k))).epsilon(1e-13));
  }
  CHECK(l[0] == doctest::Approx(std::log(a)));
}

TEST_CASE("pow_int matches repeated products and inverse") {
  auto sp = JetSpace::make({4, 2});
  Rng rng(3);
  Jet x = random_jet(sp, rng);
  x[0] = 1.3;
  const Jet p3 = pow_int(x, 3);
  const Jet ref = x * x * x;
  for (std::size_t i = 0; i < sp->size(); ++i) CHECK(p3[i] == doctest::Approx(ref[i]).epsilon(1e-13));
  const Jet m2 = pow_int(x, -2) * x * x;
  CHECK(m2[0] == doctest::Approx(1.0));
  for (std::size_t i = 1; i < sp->size(); ++i) CHECK(std::abs(m2[i]) < 1e-12);
  CHECK(pow_int(x, 0)[0] == 1.0);
}

TEST_CASE("domain errors") {
  auto sp = JetSpace::make({2});
  CHECK_THROWS_AS(Jet(sp, 1.0) / Jet::variable(sp, 0, 0.0), DivisionByZeroJet);
  CHECK_THROWS_AS(log(Jet::variable(sp, 0, -1.0)), DomainError);
  CHECK_THROWS_AS(log(Jet::variable(sp, 0, 0.0)), DomainError);
  CHECK_THROWS_AS(Jet(sp, 1.0) + Jet(JetSpace::make({3}), 1.0), JetSpaceMismatch);
}

TEST_CASE("jet_arith dispatches") {
  auto sp = JetSpace::make({3});
  const Jet x = Jet::variable(sp, 0, 0.5);
  const Jet y = Jet::variable(sp, 0, 2.0);
  check_coeffs(jet_arith(JetOp::mul, x, &y), (x * y).coeffs());
  check_coeffs(jet_arith(JetOp::div, x, &y), (x / y).coeffs());
  check_coeffs(jet_arith(JetOp::sub, x, &y), (x - y).coeffs());
  check_coeffs(jet_arith(JetOp::cos, x), cos(x).coeffs());
  check_coeffs(jet_arith(JetOp::pow_int, x, nullptr, 4), pow_int(x, 4).coeffs());
}

TEST_CASE("order-0 jets reproduce plain arithmetic bit for bit") {
  auto sp = JetSpace::scalar();
  Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    const double a = rng.uniform(0.1, 3.0), b = rng.uniform(-2.0, 2.0);
    const Jet ja(sp, a), jb(sp, b);
    CHECK((ja + jb)[0] == a + b);
    CHECK((ja - jb)[0] == a - b);
    CHECK((ja * jb)[0] == a * b);
    CHECK((jb / ja)[0] == b / a);
    CHECK(exp(jb)[0] == std::exp(b));
    CHECK(log(ja)[0] == std::log(a));
    CHECK(sin(jb)[0] == std::sin(b));
    CHECK(cos(jb)[0] == std::cos(b));
  }
}

TEST_CASE("Leibniz: product equals the truncated convolution") {
  auto sp = JetSpace::make({3, 2, 1});
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const Jet a = random_jet(sp, rng), b = random_jet(sp, rng);
    const Jet p = a * b;
    for (std::size_t m = 0; m < sp->size(); ++m) {
      double ref = 0.0;
      for (std::size_t i = 0; i < sp->size(); ++i)
        for (std::size_t j = 0; j < sp->size(); ++j) {
          bool ok = true;
          for (int v = 0; v < sp->num_vars(); ++v)
            ok = ok && sp->degree(i, v) + sp->degree(j, v) == sp->degree(m, v);
          if (ok) ref += a[i] * b[j];
        }
      CHECK(std::abs(p[m] - ref) < 1e-13);
    }
  }
}

TEST_CASE("polynomial exactness up to degree 6") {
  // p(x, y) = sum c_ij x^i y^j, expanded at (x0, y0) along both variables.
  Rng rng(17);
  auto sp = JetSpace::make({6, 6});
  Eigen::MatrixXd c = rng.uniform_matrix(7, 7, -1.0, 1.0);
  const double x0 = 0.3, y0 = -0.8;
  const Jet x = Jet::variable(sp, 0, x0), y = Jet::variable(sp, 1, y0);
  Jet p(sp, 0.0);
  for (int i = 0; i <= 6; ++i)
    for (int j = 0; i + j <= 6; ++j) p += c(i, j) * pow_int(x, i) * pow_int(y, j);
  auto binom = [](int n, int k) {
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b) {
      double ref = 0.0, mag = 0.0;
      for (int i = a; i <= 6; ++i)
        for (int j = b; i + j <= 6; ++j) {
          const double term = c(i, j) * binom(i, a) * binom(j, b) * std::pow(x0, i - a) * std::pow(y0, j - b);
          ref += term;
          mag += std::abs(term);
        }
      CHECK(std::abs(p.coeff({a, b}) - ref) <= 1e-12 * std::max(1.0, mag));
    }
}

TEST_CASE("slice, times_variable and restrict_to") {
  auto sp = JetSpace::make({2, 1});
  auto lower = JetSpace::make({1, 1});
  const Jet x = Jet::variable(sp, 0, 1.0), y = Jet::variable(sp, 1, 2.0);
  const Jet f = x * x * y;  // (1+s)^2 (2+r)
  CHECK(f.slice(1, 1).coeff({0, 0}) == doctest::Approx(1.0));
  CHECK(f.slice(1, 1).coeff({2, 0}) == doctest::Approx(1.0));
  CHECK(f.slice(1, 1).coeff({1, 1}) == 0.0);
  const Jet g = Jet(sp, 1.0).times_variable(0);
  CHECK(g.coeff({1, 0}) == 1.0);
  CHECK(g.coeff({0, 0}) == 0.0);
  const Jet r = f.restrict_to(lower);
  CHECK(r.size() == 4);
  CHECK(r.coeff({1, 1}) == doctest::Approx(2.0));
}

TEST_CASE("directional derivatives") {
  const GalleryEntry fold = gallery_map("fold_t2");
  const auto d = directional_derivatives(fold.model, Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0), 2);
  REQUIRE(d.size() == 3);
  CHECK(d[0].norm() == 0.0);
  CHECK(d[1].norm() == 0.0);
  CHECK(d[2][0] == doctest::Approx(2.0));
  CHECK(d[2][1] == 0.0);

  // Linear map: [Au, Av, 0].
  Eigen::Matrix3d A;
  A << 1, 2, 0, -1, 0.5, 3, 0, 0, 2;
  MapModel lin("linear", 3, [A](const JetVector& u) { return mat_vec(A, u); });
  const Eigen::Vector3d u(0.2, -0.4, 1.0), v(1.0, 0.5, -2.0);
  const auto dl = directional_derivatives(lin, u, v, 2);
  CHECK((dl[0] - A * u).norm() < 1e-14);
  CHECK((dl[1] - A * v).norm() < 1e-14);
  CHECK(dl[2].norm() == 0.0);

  MapModel low("low", 1, [](const JetVector& u) { return u; }, 2);
  CHECK_THROWS_AS(directional_derivatives(low, Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1), 3),
                  OrderExceedsSmoothness);
}

TEST_CASE("directional derivatives match central differences on the Whitney map") {
  const GalleryEntry w = gallery_map("whitney", {{"k", 2}, {"dimZ", 1}});
  const Eigen::VectorXd u = Eigen::VectorXd::Zero(3);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(3);
  v[0] = 1.0;
  const auto d = directional_derivatives(w.model, u, v, 3);
  const double h = 1e-3;
  auto F = [&](double s) { return w.model.eval(Eigen::VectorXd(u + s * v)); };
  const Eigen::VectorXd fd3 = (F(2 * h) - 2 * F(h) + 2 * F(-h) - F(-2 * h)) / (2 * h * h * h);
  CHECK((d[3] - fd3).norm() <= 1e-6 * std::max(1.0, d[3].norm()));
  CHECK(d[3][0] == doctest::Approx(6.0));
}

TEST_CASE("nested Lie derivatives") {
  auto g1 = [](const JetVector& u) { return u[0]; };
  auto g2 = [](const JetVector& u) { return u[0] * u[0]; };
  auto xi = [](const JetVector& u) {
    JetVector out(u.size(), Jet(u[0].space()));
    out[0] += 1.0;
    return out;
  };
  const Eigen::Vector2d u(1.0, 0.0);
  CHECK(nested_lie_derivative(g1, xi, u, 3) == 0.0);
  CHECK(nested_lie_derivative(g1, xi, u, 1) == doctest::Approx(1.0));
  CHECK(nested_lie_derivative(g2, xi, u, 1) == doctest::Approx(2.0));
  CHECK(nested_lie_derivative(g2, xi, u, 2) == doctest::Approx(2.0));

  // Rotation field: L_xi of u0 is -u1, then -u0, then u1.
  auto rot = [](const JetVector& u) { return JetVector{-1.0 * u[1], u[0]}; };
  const Eigen::Vector2d p(0.3, 0.8);
  CHECK(nested_lie_derivative(g1, rot, p, 1) == doctest::Approx(-0.8));
  CHECK(nested_lie_derivative(g1, rot, p, 2) == doctest::Approx(-0.3));
  CHECK(nested_lie_derivative(g1, rot, p, 3) == doctest::Approx(0.8));
  CHECK_THROWS_AS(nested_lie_derivative(g1, rot, p, 9), DepthCapExceeded);
}

TEST_CASE("finite-difference consistency on every gallery map") {
  Rng rng(23);
  for (const auto& [name, params] : gallery_catalogue()) {
    const GalleryEntry e = gallery_map(name, params);
    const int n = e.model.dim();
    for (int t = 0; t < 3; ++t) {
      const Eigen::VectorXd u = rng.uniform_vector(n, -0.5, 0.5);
      const Eigen::VectorXd v = rng.uniform_vector(n, -1.0, 1.0);
      const auto d = directional_derivatives(e.model, u, v, 2);
      const double h = 1e-4;
      auto F = [&](double s) { return e.model.eval(Eigen::VectorXd(u + s * v)); };
      const Eigen::VectorXd fd1 = (F(h) - F(-h)) / (2 * h);
      const Eigen::VectorXd fd2 = (F(h) - 2 * F(0) + F(-h)) / (h * h);
      CHECK((d[1] - fd1).norm() <= 1e-5 * std::max(1.0, d[1].norm()));
      CHECK((d[2] - fd2).norm() <= 1e-5 * std::max(1.0, d[2].norm()));
    }
  }
}
