#include "holorot/k3product.hpp"
#include "holorot/models.hpp"
#include "holorot/numerics.hpp"

#include <doctest.h>

#include <numbers>

using namespace holorot;

namespace {

KForm mixed_sum(double sign) { return KForm::monomial(8, {1, 5}) + sign * KForm::monomial(8, {2, 6}); }

}  // namespace

TEST_CASE("five summand ranks") {
  const auto p = product_projectors(ProductStructure::standard());
  CHECK(projector_rank(p[0]) == 3);
  CHECK(projector_rank(p[1]) == 3);
  CHECK(projector_rank(p[2]) == 3);
  CHECK(projector_rank(p[3]) == 3);
  CHECK(projector_rank(p[4]) == 16);
  Rng rng(31);
  const KForm a(8, 2, rng.normal_vector(28));
  const FiveWayDecomposition d = decompose_product(a, ProductStructure::standard());
  CHECK((d.sum() - a).norm() < 1e-12);
  CHECK((d.f5 - KForm(8, 2, p[4] * a.coeffs())).norm() < 1e-12);
}

TEST_CASE("embedding factor forms") {
  const KForm a = KForm::monomial(4, {1, 2});
  CHECK((embed_factor_form(a, 4) - KForm::monomial(8, {5, 6})).norm() == 0.0);
  CHECK_THROWS_AS(embed_factor_form(a, 2), Error);
}

TEST_CASE("mixed forms split by type") {
  const ProductStructure p = ProductStructure::standard();
  const ComplexStructure i = p.left.i(), ip = p.right.i();
  const DSplit plus = d_split(mixed_sum(1.0), i, ip);
  CHECK((plus.alpha2 - mixed_sum(1.0)).norm() < 1e-14);
  CHECK(plus.alpha1.norm() < 1e-14);
  const DSplit minus = d_split(mixed_sum(-1.0), i, ip);
  CHECK((minus.alpha1 - mixed_sum(-1.0)).norm() < 1e-14);
  CHECK(lemma_ll_value(mixed_sum(1.0), i, ip) == doctest::Approx(2.0));
  CHECK(lemma_ll_value(mixed_sum(-1.0), i, ip) == doctest::Approx(-2.0));
}

TEST_CASE("psi for an explicit mixed curvature") {
  using cd = std::complex<double>;
  const ProductStructure p = ProductStructure::standard();
  const MatrixValuedForm f = MatrixValuedForm::tensor(mixed_sum(1.0), cd(0.0, 1.0) * Eigen::MatrixXcd::Identity(1, 1));
  // Tr(F ^ F) = 2 dx1256, paired with omega_I ^ omega_I'.
  const double want = 2.0 / (8.0 * std::numbers::pi * std::numbers::pi);
  CHECK(psi_value(f, p, Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitX()) == doctest::Approx(want));
  const PsiMatrix m = psi_matrix(f, p);
  CHECK(m.m(0, 0) == doctest::Approx(want));
}

TEST_CASE("signed diagonalization") {
  Rng rng(32);
  for (int rep = 0; rep < 10; ++rep) {
    Eigen::Matrix3d m;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) m(a, b) = rng.normal();
    const PsiMatrix s = signed_diagonalize(m);
    CHECK(s.rot_l.determinant() == doctest::Approx(1.0));
    CHECK(s.rot_r.determinant() == doctest::Approx(1.0));
    CHECK((s.rot_l.transpose() * m * s.rot_r - Eigen::Matrix3d(s.sv.asDiagonal())).norm() < 1e-12);
    CHECK(s.sv[0] >= s.sv[1]);
    CHECK(s.sv[1] >= std::abs(s.sv[2]));
    CHECK((s.sv[2] < 0) == (m.determinant() < 0));
  }
}

TEST_CASE("verdict names") {
  for (auto k : {Rotability::FullProduct, Rotability::LeftSphere, Rotability::RightSphere, Rotability::DiagonalSphere,
                 Rotability::NotRotable})
    CHECK(rotability_from_string(to_string(k)) == k);
  CHECK_THROWS_AS(rotability_from_string("Sideways"), Error);
}

TEST_CASE("classifier on constructed models") {
  const ProductStructure p = ProductStructure::standard();
  for (auto k : {Rotability::FullProduct, Rotability::LeftSphere, Rotability::RightSphere, Rotability::DiagonalSphere,
                 Rotability::NotRotable}) {
    const CurvatureModel m = random_product(k, 2, 33);
    const RotabilityVerdict v = classify(m.f, p);
    CHECK(v.kind == k);
    CHECK(v.witness.hym);
    const FamilyGridReport g = family_grid_check(m.f, p, v, 8);
    CHECK(g.mismatches == 0);
  }
  const CurvatureModel both = random_product(Rotability::NotRotable, 2, 34, 1);
  const RotabilityVerdict v = classify(both.f, p);
  CHECK(v.kind == Rotability::NotRotable);
  CHECK(std::abs(v.witness.lambda) > 0.1);
  CHECK(std::abs(v.witness.lambda_prime) > 0.1);
}

TEST_CASE("non-HYM input") {
  const ProductStructure p = ProductStructure::standard();
  Rng rng(35);
  const MatrixValuedForm f = random_matrix_form(8, 2, rng);
  CHECK_THROWS_AS(classify(f, p), Error);
  ClassifyOptions o;
  o.allow_non_hym = true;
  const RotabilityVerdict v = classify(f, p, o);
  CHECK(v.kind == Rotability::NotRotable);
  CHECK_FALSE(v.witness.hym);
}

TEST_CASE("corollary and Bogomolov") {
  const ProductStructure p = ProductStructure::standard();
  const CurvatureModel d = random_product(Rotability::DiagonalSphere, 2, 36);
  const CorollaryResult c = corollary_check(d.f, p);
  CHECK(c.lhs == doctest::Approx(c.rhs).epsilon(1e-9));
  CHECK(c.rotable);
  CHECK(c.identity_gap < 1e-9);
  const CurvatureModel n = random_product(Rotability::NotRotable, 2, 37);
  const CorollaryResult cn = corollary_check(n.f, p);
  CHECK_FALSE(cn.rotable);
  CHECK(std::abs(cn.lhs - cn.rhs) > 1e-6);
  const BogomolovResult b = bogomolov_check(n.f, p);
  CHECK(b.value >= 0.0);
  CHECK_FALSE(b.tight);
  const CurvatureModel l = random_product(Rotability::LeftSphere, 2, 38);
  CHECK_THROWS_AS(corollary_check(l.f, p), Error);
}

TEST_CASE("Chern data of a scalar summand") {
  const ProductStructure p = ProductStructure::standard();
  const CurvatureModel m = random_product(Rotability::RightSphere, 1, 39);
  const ChernData c = chern_data(m.f, p);
  const RotabilityVerdict v = classify(m.f, p);
  CHECK(c.lambda == doctest::Approx(v.witness.lambda));
  CHECK(c.lambda_prime == doctest::Approx(0.0));
  CHECK(c.lambda_tilde == doctest::Approx(0.5 * (c.lambda + c.lambda_prime)));
  CHECK(c.lambda_c1 == doctest::Approx(-c.lambda / (2.0 * std::numbers::pi)));
}
