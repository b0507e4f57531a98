#include "holorot/chern.hpp"
#include "holorot/models.hpp"
#include "holorot/numerics.hpp"
#include "holorot/quaternionic.hpp"
#include "holorot/spin7.hpp"

#include <doctest.h>

using namespace holorot;

TEST_CASE("Cayley form coefficients") {
  const KForm o = cayley_form().omega4;
  CHECK(o.coefficient(FormIndex(8, {1, 2, 3, 4}).mask()) == 1.0);
  CHECK(o.coefficient(FormIndex(8, {5, 6, 7, 8}).mask()) == 1.0);
  CHECK(o.coefficient(FormIndex(8, {2, 4, 6, 8}).mask()) == 1.0);
  CHECK(o.coefficient(FormIndex(8, {1, 3, 6, 8}).mask()) == -1.0);
  CHECK(o.norm() == doctest::Approx(std::sqrt(14.0)));
  CHECK(top_coefficient(wedge(o, o)) == 14.0);
}

TEST_CASE("Lambda^2 splitting") {
  const Eigen::MatrixXd p7 = projector_7(), p21 = projector_21();
  CHECK(projector_rank(p7) == 7);
  CHECK(projector_rank(p21) == 21);
  CHECK((p7 + p21 - Eigen::MatrixXd::Identity(28, 28)).norm() < 1e-12);
  CHECK((p7 * p21).norm() < 1e-12);
  Rng rng(21);
  const KForm a(8, 2, rng.normal_vector(28));
  const Spin7Split s = split27_21(a);
  CHECK((s.part7 + s.part21 - a).norm() < 1e-12);
  CHECK((hodge_star(wedge(cayley_form().omega4, s.part7)) - 3.0 * s.part7).norm() < 1e-12);
}

TEST_CASE("canonical SU(4) structure") {
  const SU4Structure& su4 = standard_su4();
  CHECK(su4.theta_norm() == doctest::Approx(4.0));
  CHECK(((0.5 * wedge(su4.omega(), su4.omega()) + su4.re_theta()) - cayley_form().omega4).norm() < 1e-14);
  CHECK_FALSE(compatible_coordinate_frames().empty());
  REQUIRE(su4.frame().has_value());
  CHECK(su4.frame()->sign == 1);
  // The Kahler form is in Lambda^2_7.
  const KForm w = su4.omega();
  CHECK(w.norm() == doctest::Approx(2.0));
  CHECK((projector_7() * w.coeffs() - w.coeffs()).norm() < 1e-12);
}

TEST_CASE("theta involution splits Delta^{2,0}") {
  const SU4Structure& su4 = standard_su4();
  const Delta20Split d = delta20_plus_minus(su4);
  CHECK(d.plus_basis.size() == 6);
  CHECK(d.minus_basis.size() == 6);
  const Eigen::MatrixXd l = theta_involution(su4);
  for (const auto& b : d.plus_basis) CHECK((l * b.coeffs() - b.coeffs()).norm() < 1e-10);
  for (const auto& b : d.minus_basis) CHECK((l * b.coeffs() + b.coeffs()).norm() < 1e-10);
}

TEST_CASE("rotation chart") {
  const SU4Structure& su4 = standard_su4();
  const KForm zero(8, 2);
  CHECK((rotate_su4(su4, zero).matrix() - su4.i().matrix()).norm() < 1e-12);
  const Delta20Split d = delta20_plus_minus(su4);
  const KForm g = d.plus_basis.front();
  const KForm far = rotated_kahler_form(su4, 1e3 * g);
  CHECK((far - (2.0 / g.norm()) * g).norm() < 1e-2);
  const ComplexStructure l = rotate_su4(su4, 1e3 * g);
  CHECK((kahler_form(l) - far).norm() < 1e-9);
}

TEST_CASE("beta from curvature and from Chern forms agree") {
  Rng rng(22);
  const MatrixValuedForm f = random_matrix_form(8, 3, rng);
  CHECK((beta_form(f) - beta_form_from_chern(f)).norm() < 1e-12);
}

TEST_CASE("spinstanton models") {
  const CurvatureModel m = random_spinstanton(standard_su4(), 2, 23);
  CHECK(spinstanton_check(m.f));
  CHECK(hym_check(m.f, standard_su4().i()).is_hym);
  const CurvatureModel nh = random_spinstanton(standard_su4(), 2, 24, false);
  CHECK(spinstanton_check(nh.f));
}

TEST_CASE("rotation sphere of a generic model is trivial") {
  const CurvatureModel m = random_spinstanton(standard_su4(), 2, 25);
  const RotationSphereReport r = rotation_sphere_scan(m.f, standard_su4(), 500);
  CHECK(r.r == 0);
  CHECK(r.inequality_holds);
  CHECK(r.equality_matches_hym);
  CHECK(r.chain.ok);
}

TEST_CASE("hyperkahler model rotates along omega_J") {
  const CurvatureModel m = random_hyperkahler_spinstanton(2, 26);
  const RotationSphereReport r = rotation_sphere_scan(m.f, standard_su4(), 500);
  REQUIRE(r.r == 1);
  REQUIRE(r.kernel_basis.size() == 1);
  const KForm wj = kahler_form(standard_triple(2).j());
  const KForm& k = r.kernel_basis.front();
  CHECK(std::abs(inner(k, wj)) / (k.norm() * wj.norm()) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.equality_matches_kernel);
}

TEST_CASE("non-HYM input is rejected") {
  const CurvatureModel m = random_spinstanton(standard_su4(), 2, 27, false);
  CHECK_THROWS_AS(rotation_sphere_scan(m.f, standard_su4(), 10), Error);
}
