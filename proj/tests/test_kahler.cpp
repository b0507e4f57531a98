#include "holorot/kahler.hpp"
#include "holorot/numerics.hpp"

#include <doctest.h>

using namespace holorot;

TEST_CASE("standard structure and its Kahler form") {
  const ComplexStructure j = ComplexStructure::standard(4);
  CHECK(j.matrix()(1, 0) == 1.0);  // J e1 = e2
  const KForm w = kahler_form(j);
  CHECK((w - KForm::monomial(4, {1, 2}) - KForm::monomial(4, {3, 4})).norm() == 0.0);
  CHECK(top_coefficient(wedge(w, w)) == 2.0);
  CHECK(lefschetz_contract(w, j) == doctest::Approx(2.0));
  CHECK_THROWS_AS(ComplexStructure(Eigen::MatrixXd::Identity(4, 4)), Error);
}

TEST_CASE("two form matrices") {
  const KForm a = KForm::monomial(4, {1, 3}, 2.5);
  const Eigen::MatrixXd m = two_form_matrix(a);
  CHECK(m(0, 2) == 2.5);
  CHECK(m(2, 0) == -2.5);
  CHECK((two_form_from_matrix(m) - a).norm() == 0.0);
}

TEST_CASE("type projector ranks") {
  for (int m = 1; m <= 4; ++m) {
    const ComplexStructure j = ComplexStructure::standard(2 * m);
    CHECK(projector_rank(projector_11(j)) == m * m);
    CHECK(projector_rank(projector_20(j)) == m * (m - 1));
    CHECK(projector_rank(projector_11_prim(j)) == m * m - 1);
  }
}

TEST_CASE("type of explicit forms") {
  const ComplexStructure j = ComplexStructure::standard(4);
  // Re(dz1 ^ dz2) = dx13 - dx24 is (2,0) + (0,2); dx13 + dx24 is (1,1).
  const KForm re = KForm::monomial(4, {1, 3}) - KForm::monomial(4, {2, 4});
  const KForm mix = KForm::monomial(4, {1, 3}) + KForm::monomial(4, {2, 4});
  CHECK((projector_20(j) * re.coeffs() - re.coeffs()).norm() < 1e-14);
  CHECK((projector_11_prim(j) * mix.coeffs() - mix.coeffs()).norm() < 1e-14);
  const TypeSplit s = type_split(KForm::monomial(4, {1, 2}), j);
  CHECK(s.form_11_trace == doctest::Approx(0.5));
  CHECK((s.reconstruct() - KForm::monomial(4, {1, 2})).norm() < 1e-14);
}

TEST_CASE("pullback by the structure") {
  Rng rng(3);
  const ComplexStructure j = random_complex_structure(6, rng);
  const KForm w = kahler_form(j);
  CHECK((pull_back(w, j.matrix()) - w).norm() < 1e-12);
  const Eigen::MatrixXd c = type_involution(j);
  CHECK((c * c - Eigen::MatrixXd::Identity(15, 15)).norm() < 1e-12);
}

TEST_CASE("HYM check") {
  using cd = std::complex<double>;
  const ComplexStructure j = ComplexStructure::standard(6);
  // i (lambda/m) omega Id contracts to i lambda Id.
  const MatrixValuedForm f =
      MatrixValuedForm::tensor(kahler_form(j), cd(0.0, 1.5 / 3.0) * Eigen::MatrixXcd::Identity(2, 2));
  const HymResult h = hym_check(f, j);
  CHECK(h.is_hym);
  CHECK(h.lambda == doctest::Approx(1.5));
  const MatrixValuedForm g =
      MatrixValuedForm::tensor(KForm::monomial(6, {1, 3}), cd(0.0, 1.0) * Eigen::MatrixXcd::Identity(2, 2));
  CHECK_FALSE(hym_check(g, j).is_hym);
}

TEST_CASE("structure recovery from a Kahler form") {
  Rng rng(4);
  const ComplexStructure j = random_complex_structure(8, rng);
  const ComplexStructure back = structure_from_unit_form(3.0 * kahler_form(j));
  CHECK((back.matrix() - j.matrix()).norm() < 1e-10);
}

TEST_CASE("common (1,1) forms") {
  Rng rng(5);
  std::vector<ComplexStructure> js;
  for (int k = 0; k < 10; ++k) js.push_back(random_complex_structure(4, rng));
  CHECK(common_11_dimension(js) == 3);
  std::vector<ComplexStructure> one{ComplexStructure::standard(6)};
  CHECK(common_11_dimension(one) == 9);
}
