#include "holorot/io.hpp"
#include "holorot/models.hpp"

#include <doctest.h>

#include <filesystem>

using namespace holorot;

TEST_CASE("generators are deterministic in the seed") {
  const QuaternionicTriple t = standard_triple(2);
  CHECK(dump_model(random_hym(t, 2, 5)) == dump_model(random_hym(t, 2, 5)));
  CHECK(dump_model(random_hym(t, 2, 5)) != dump_model(random_hym(t, 2, 6)));
  CHECK(dump_model(random_product(Rotability::DiagonalSphere, 3, 7)) ==
        dump_model(random_product(Rotability::DiagonalSphere, 3, 7)));
}

TEST_CASE("generated models have the advertised properties") {
  Rng rng(41);
  const Eigen::MatrixXcd x = random_anti_hermitian(3, rng, true);
  CHECK(std::abs(x.trace()) < 1e-14);
  CHECK((x + x.adjoint()).norm() < 1e-14);
  const ComplexStructure j = ComplexStructure::standard(6);
  const CurvatureModel m = random_hym(j, 2, 42, 2.0);
  const HymResult h = hym_check(m.f, j);
  CHECK(h.is_hym);
  CHECK(h.lambda == doctest::Approx(2.0));
  CHECK(m.ambient.kind == AmbientKind::Complex);
}

TEST_CASE("model JSON round trip is exact") {
  const CurvatureModel m = random_product(Rotability::NotRotable, 2, 43);
  const CurvatureModel back = parse_model(dump_model(m));
  CHECK(back.seed == m.seed);
  CHECK(back.provenance == m.provenance);
  CHECK(back.ambient == m.ambient);
  for (std::size_t s = 0; s < m.f.coeffs().size(); ++s) CHECK((back.f.coeff(s).array() == m.f.coeff(s).array()).all());
  const auto path = std::filesystem::temp_directory_path() / "holorot_roundtrip.json";
  save_model(m, path);
  CHECK(dump_model(load_model(path)) == dump_model(m));
  std::filesystem::remove(path);
}

TEST_CASE("schema errors name the field") {
  Json j = to_json(random_spinstanton(standard_su4(), 1, 44));
  SUBCASE("degree") {
    j["form"]["degree"] = 3;
    CHECK_THROWS_WITH_AS(model_from_json(j), doctest::Contains("form"), SchemaError);
  }
  SUBCASE("degree type") {
    j["form"]["degree"] = "two";
    CHECK_THROWS_WITH_AS(model_from_json(j), doctest::Contains("form.degree"), SchemaError);
  }
  SUBCASE("version") {
    j["schema_version"] = 7;
    CHECK_THROWS_WITH_AS(model_from_json(j), doctest::Contains("schema_version"), SchemaError);
  }
  SUBCASE("ambient") {
    j["ambient"]["kind"] = "octonionic";
    CHECK_THROWS_WITH_AS(model_from_json(j), doctest::Contains("ambient.kind"), SchemaError);
  }
  SUBCASE("coefficient count") {
    j["form"]["coeffs"].erase(0);
    CHECK_THROWS_AS(model_from_json(j), SchemaError);
  }
  CHECK_THROWS_AS(parse_model("{not json"), SchemaError);
}

TEST_CASE("real forms") {
  const KForm a = KForm::monomial(5, {2, 4}, -0.25);
  CHECK((kform_from_json(to_json(a)) - a).norm() == 0.0);
}

TEST_CASE("verdict JSON round trip") {
  const ProductStructure p = ProductStructure::standard();
  for (auto k : {Rotability::DiagonalSphere, Rotability::LeftSphere}) {
    const RotabilityVerdict v = classify(random_product(k, 2, 45).f, p);
    const RotabilityVerdict back = verdict_from_json(to_json(v));
    CHECK(back.kind == v.kind);
    CHECK(back.witness.lambda == v.witness.lambda);
    CHECK(back.witness.m == v.witness.m);
    CHECK(back.basis_change.has_value() == v.basis_change.has_value());
    CHECK(to_json(back).dump() == to_json(v).dump());
  }
}
