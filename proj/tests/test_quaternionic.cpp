#include "holorot/models.hpp"
#include "holorot/numerics.hpp"
#include "holorot/quaternionic.hpp"

#include <doctest.h>

using namespace holorot;

TEST_CASE("standard triple satisfies the quaternion relations") {
  for (int n = 1; n <= 3; ++n) {
    const QuaternionicTriple t = standard_triple(n);
    CHECK((t.i().matrix() * t.j().matrix() - t.k().matrix()).norm() < 1e-14);
    CHECK((t.i().matrix() - ComplexStructure::standard(4 * n).matrix()).norm() == 0.0);
  }
}

TEST_CASE("summand ranks") {
  CHECK(quat_projector_ranks(standard_triple(1)) == std::array<int, 5>{3, 3, 0, 0, 0});
  CHECK(quat_projector_ranks(standard_triple(2)) == std::array<int, 5>{3, 10, 5, 5, 5});
  const auto p = quat_projectors(standard_triple(2));
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(28, 28);
  for (const auto& q : p) sum += q;
  CHECK((sum - Eigen::MatrixXd::Identity(28, 28)).norm() < 1e-12);
  CHECK((p[1] * p[2]).norm() < 1e-12);
}

TEST_CASE("decomposition reconstructs the input") {
  Rng rng(6);
  const QuaternionicTriple t = standard_triple(2);
  const KForm a(8, 2, rng.normal_vector(28));
  const QuatDecomposition d = decompose_quat(a, t);
  CHECK((d.sum() - a).norm() < 1e-12);
  CHECK(d.residual < 1e-12);
  CHECK(inner(d.w_h, d.w_i_prim) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("rotated structures") {
  const QuaternionicTriple t = standard_triple(2);
  CHECK((rotate_structure(t, 1.0, 0.0, 0.0).matrix() - t.i().matrix()).norm() == 0.0);
  const double s = 1.0 / std::sqrt(3.0);
  const ComplexStructure l = rotate_structure(t, s, s, s);
  CHECK((l.matrix() * l.matrix() + Eigen::MatrixXd::Identity(8, 8)).norm() < 1e-12);
  CHECK_THROWS_AS(rotate_structure(t, 1.0, 1.0, 0.0), Error);
}

TEST_CASE("pointwise identities") {
  const QuaternionicTriple t = standard_triple(2);
  const ComplexStructure i = t.i();
  const KForm re = KForm::monomial(8, {1, 3}) - KForm::monomial(8, {2, 4});
  CHECK(pointwise_square_pairing((1.0 / re.norm()) * re, i) == doctest::Approx(1.0));
  const KForm prim = KForm::monomial(8, {1, 2}) - KForm::monomial(8, {3, 4});
  CHECK(pointwise_square_pairing((1.0 / prim.norm()) * prim, i) == doctest::Approx(-1.0));
  const KForm w = kahler_form(i);
  CHECK(pointwise_square_pairing((1.0 / w.norm()) * w, i) == doctest::Approx(3.0));
}

TEST_CASE("hyperholomorphic models are HYM on the whole sphere") {
  const QuaternionicTriple t = standard_triple(2);
  const CurvatureModel m = random_hyperholomorphic(t, 2, 11);
  CHECK(hyperholomorphic_check(m.f, t));
  Rng rng(12);
  for (int k = 0; k < 10; ++k) {
    const Eigen::VectorXd v = rng.unit_vector(3);
    CHECK(hym_check(m.f, rotate_structure(t, v[0], v[1], v[2])).is_hym);
  }
  const CalibrationSweep sweep(m.f);
  CHECK(sweep(t.j()) == doctest::Approx(sweep(t.i())).epsilon(1e-10));
  CHECK(calibration_by_norms(m.f, t.i()) == doctest::Approx(calibration_functional(m.f, t.i())).epsilon(1e-10));
}

TEST_CASE("generic HYM model is strictly maximal at +-I") {
  const QuaternionicTriple t = standard_triple(2);
  const CurvatureModel m = random_hym(t, 2, 13);
  CHECK_FALSE(hyperholomorphic_check(m.f, t));
  const CalibrationReport r = calibration_sphere_scan(m.f, t, 200);
  CHECK(r.max_at_i);
  CHECK(r.equality_matches_hym);
  CHECK(r.equality_set.size() == 2);
}

TEST_CASE("W_H basis") {
  const Eigen::MatrixXd b = w_h_basis(standard_triple(2));
  CHECK(b.cols() == 10);
  CHECK((b.transpose() * b - Eigen::MatrixXd::Identity(10, 10)).norm() < 1e-12);
}
