#include "holorot/exterior.hpp"
#include "holorot/numerics.hpp"

#include <doctest.h>

using namespace holorot;

namespace {

KForm random_form(int dim, int degree, Rng& rng) {
  return KForm(dim, degree, rng.normal_vector(static_cast<Eigen::Index>(binomial(dim, degree))));
}

}  // namespace

TEST_CASE("basis ordering and binomials") {
  CHECK(binomial(8, 4) == 70);
  CHECK(binomial(4, 2) == 6);
  const auto& m = basis_masks(4, 2);
  REQUIRE(m.size() == 6);
  CHECK(m[0] == 0b0011);  // dx12
  CHECK(m[1] == 0b0101);  // dx13
  CHECK(m[5] == 0b1100);  // dx34
  CHECK(lex_position(4, 0b1010) == 4);  // dx24
}

TEST_CASE("monomials with unsorted and repeated indices") {
  CHECK(KForm::monomial(4, {2, 1}).coefficient(0b0011) == -1.0);
  CHECK(KForm::monomial(4, {3, 1, 2}).coefficient(0b0111) == 1.0);
  CHECK(KForm::monomial(4, {1, 1}).norm() == 0.0);
  CHECK_THROWS_AS(KForm::monomial(4, {1, 5}), Error);
}

TEST_CASE("wedge signs") {
  const KForm dx13 = KForm::monomial(4, {1, 3});
  const KForm dx24 = KForm::monomial(4, {2, 4});
  CHECK(top_coefficient(wedge(dx13, dx24)) == -1.0);
  CHECK(top_pairing(dx13, dx24) == -1.0);
  const KForm dx1 = KForm::monomial(4, {1});
  const KForm dx2 = KForm::monomial(4, {2});
  CHECK((wedge(dx1, dx2) + wedge(dx2, dx1)).norm() == 0.0);
  CHECK(wedge(dx1, dx1).norm() == 0.0);
}

TEST_CASE("wedge is associative and graded commutative") {
  Rng rng(1);
  for (int rep = 0; rep < 5; ++rep) {
    const KForm a = random_form(7, 2, rng), b = random_form(7, 1, rng), c = random_form(7, 3, rng);
    CHECK((wedge(wedge(a, b), c) - wedge(a, wedge(b, c))).norm() < 1e-12);
    CHECK((wedge(b, c) + wedge(c, b)).norm() < 1e-12);
    CHECK((wedge(a, c) - wedge(c, a)).norm() < 1e-12);
    CHECK((wedge(b, b)).norm() < 1e-12);
  }
}

TEST_CASE("hodge star") {
  const KForm dx13 = KForm::monomial(4, {1, 3});
  CHECK((hodge_star(dx13) - KForm::monomial(4, {2, 4}, -1.0)).norm() == 0.0);
  CHECK((hodge_star(KForm::monomial(4, {1, 2})) - KForm::monomial(4, {3, 4})).norm() == 0.0);
  Rng rng(2);
  for (int m = 3; m <= 8; ++m)
    for (int k = 0; k <= m; ++k) {
      const KForm a = random_form(m, k, rng);
      const double sign = (k * (m - k)) % 2 == 0 ? 1.0 : -1.0;
      CHECK((hodge_star(hodge_star(a)) - sign * a).norm() < 1e-12);
      const KForm b = random_form(m, k, rng);
      CHECK(top_coefficient(wedge(a, hodge_star(b))) == doctest::Approx(inner(a, b)).epsilon(1e-12));
    }
}

TEST_CASE("wedge powers") {
  const KForm w = KForm::monomial(4, {1, 2}) + KForm::monomial(4, {3, 4});
  CHECK(top_coefficient(wedge_power(w, 2)) == 2.0);
  CHECK(wedge_power(w, 0).coeffs()[0] == 1.0);
  CHECK(wedge_power(w, 3).norm() == 0.0);
}

TEST_CASE("matrix valued forms") {
  using cd = std::complex<double>;
  const KForm w = KForm::monomial(4, {1, 2}) + KForm::monomial(4, {3, 4});
  const MatrixValuedForm f = MatrixValuedForm::tensor(w, cd(0.0, 1.0) * Eigen::MatrixXcd::Identity(1, 1));
  // i w ^ i w = -w^2 = -2 vol
  CHECK(top_coefficient(trace_wedge(f, f)) == doctest::Approx(-2.0));
  const MatrixValuedForm g = MatrixValuedForm::tensor(KForm::monomial(4, {1, 2}), cd(0.0, 1.0) * Eigen::MatrixXcd::Identity(2, 2));
  CHECK(g.killing_norm_sq() == doctest::Approx(2.0));
  CHECK(g.trace_free().killing_norm() < 1e-15);
  CHECK(g.trace_imag().coefficient(0b0011) == doctest::Approx(2.0));
  Eigen::MatrixXcd bad(1, 1);
  bad(0, 0) = cd(1.0, 0.0);
  CHECK_THROWS_AS(MatrixValuedForm::tensor(w, bad), Error);
}

TEST_CASE("operator matrices") {
  const Eigen::MatrixXd star = operator_matrix(4, 2, [](const KForm& a) { return hodge_star(a); });
  CHECK((star * star - Eigen::MatrixXd::Identity(6, 6)).norm() < 1e-14);
  CHECK(projector_rank(0.5 * (Eigen::MatrixXd::Identity(6, 6) + star)) == 3);
}
