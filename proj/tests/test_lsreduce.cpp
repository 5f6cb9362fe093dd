#include <doctest.h>

#include <cmath>

#include "fredsing/errors.hpp"
#include "fredsing/gallery.hpp"
#include "fredsing/linalg.hpp"
#include "fredsing/lsreduce.hpp"
#include "fredsing/rng.hpp"

using namespace fredsing;

TEST_CASE("local representation postconditions on every gallery fixture") {
  for (const auto& [name, params] : gallery_catalogue()) {
    const GalleryEntry e = gallery_map(name, params);
    for (const GalleryFixture& f : e.expected) {
      if (f.expected.kind == Kind::Regular) continue;
      const LSModel ls = local_representation(e.model, f.point);
      const CanonicalRecord c = canonical_functionals(ls, 1);
      CHECK(std::abs(c.f0) < 1e-9);
      CHECK(c.grad_f0.norm() < 1e-9);
      CHECK(ls.kernel_vector().norm() == doctest::Approx(1.0));
      CHECK((e.model.jacobian(f.point) * ls.kernel_vector()).norm() < 1e-9);
      CHECK((ls.cokernel_vector().transpose() * e.model.jacobian(f.point)).norm() < 1e-9);
    }
  }
}

TEST_CASE("alpha_inverse is a jet-level inverse of alpha") {
  const GalleryEntry e = gallery_map("whitney", {{"k", 3}, {"dimZ", 1}});
  const Eigen::VectorXd u0 = e.expected.back().point;
  const LSModel ls = local_representation(e.model, u0);
  const int n = e.model.dim();
  const JetSpacePtr sp = JetSpace::make({5});
  Rng rng(2);
  for (int t = 0; t < 10; ++t) {
    const Eigen::VectorXd d = rng.uniform_vector(n, -1, 1);
    JetVector tz(n, Jet(sp));
    for (int i = 0; i < n; ++i) tz[i][1] = d[i];
    const JetVector u = ls.alpha_inverse(tz);
    CHECK((constant_part(u) - u0).norm() < 1e-15);
    const JetVector y = e.model.eval(u);
    for (std::size_t m = 1; m < sp->size(); ++m) {
      Eigen::VectorXd back(n);
      back[0] = ls.kernel_vector().dot(coefficient(u, m));
      back.tail(n - 1) = ls.range_basis().transpose() * coefficient(y, m);
      CHECK((back - coefficient(tz, m)).norm() < 1e-10);
    }
  }
}

TEST_CASE("canonical functionals of the fold and of whitney(3)") {
  const GalleryEntry fold = gallery_map("fold_t2");
  const CanonicalRecord cf = canonical_functionals(local_representation(fold.model, Eigen::Vector2d::Zero()), 2);
  CHECK(std::abs(cf.functionals.J[0]) < 1e-12);
  CHECK(std::abs(cf.functionals.J[1]) == doctest::Approx(2.0));
  CHECK(std::abs(cf.functionals.J[2]) < 1e-12);

  const GalleryEntry w = gallery_map("whitney", {{"k", 3}});
  const LSModel ls = local_representation(w.model, Eigen::VectorXd::Zero(3));
  const CanonicalRecord cw = canonical_functionals(ls, 3);
  for (int h = 0; h < 3; ++h) CHECK(std::abs(cw.functionals.J[h]) < 1e-10);
  CHECK(std::abs(cw.functionals.J[3]) == doctest::Approx(24.0));
  const LSConditions lc = ls_conditions(ls, 3, Tolerances{});
  CHECK(lc.Sk);
  CHECK(lc.Tk);
  CHECK_FALSE(lc.Mk);
}

TEST_CASE("family_kn(2, 4): rows I_eta are eta! times a unit vector") {
  const GalleryEntry e = gallery_map("family_kn", {{"k", 2}, {"n", 4}, {"dimZ", 0}});
  const LSModel ls = local_representation(e.model, Eigen::VectorXd::Zero(3));
  const CanonicalRecord c = canonical_functionals(ls, 3);
  const FunctionalsRecord& r = c.functionals;
  CHECK(r.I[0].norm() == doctest::Approx(1.0));
  CHECK(r.I[1].norm() == doctest::Approx(2.0));
  CHECK(std::abs(r.I[0].dot(r.I[1])) < 1e-12);
  CHECK(std::abs(r.J[3]) == doctest::Approx(24.0));
  const LSConditions l2 = ls_conditions(ls, 2, Tolerances{});
  CHECK(l2.Tk);
  CHECK_FALSE(l2.Sk);
  CHECK_FALSE(l2.Mk);
  REQUIRE(l2.witnesses.size() == 2);
  const Eigen::MatrixXd rows = r.stacked(2);
  for (int j = 0; j < 2; ++j) CHECK((rows * l2.witnesses[j] - Eigen::VectorXd::Unit(2, j)).norm() < 1e-9);
  CHECK(ls_conditions(ls, 3, Tolerances{}).Sk);
}

TEST_CASE("maximal transversality and the dependence implication") {
  const GalleryEntry e = gallery_map("transverse_k", {{"k", 2}});
  const LSModel ls = local_representation(e.model, Eigen::VectorXd::Zero(e.model.dim()));
  const LSConditions l = ls_conditions(ls, 2, Tolerances{});
  CHECK(l.Tk);
  CHECK(l.Mk);
  CHECK(l.Mk_implication);
  CHECK_FALSE(l.Sk);
}

TEST_CASE("errors") {
  const GalleryEntry fold = gallery_map("fold_t2");
  CHECK_THROWS_AS(local_representation(fold.model, Eigen::Vector2d(1, 0)), NotSimple);
  const MapModel c2("c2_fold", 2, [](const JetVector& u) { return JetVector{u[0] * u[0], u[1]}; }, 2);
  const LSModel ls = local_representation(c2, Eigen::Vector2d::Zero());
  CHECK_NOTHROW(canonical_functionals(ls, 1));
  CHECK_THROWS_AS(canonical_functionals(ls, 2), OrderExceedsSmoothness);
}
