// JSON encoding of forms, models and reports (schema_version 1).
//
// Model files:
//   {"schema_version": 1,
//    "ambient": {"dim": m, "kind": "complex|quaternionic|spin7|k3xk3", "n": n},
//    "seed": s, "provenance": "...",
//    "form": {"dim": m, "degree": k, "rank": r,
//             "coeffs": [[[re, im], ...r*r row-major...], ...C(m,k) lexicographic...]}}
// A real KForm is {"dim", "degree", "coeffs": [c, ...]}.
#pragma once

#include "holorot/k3product.hpp"
#include "holorot/models.hpp"
#include "holorot/quaternionic.hpp"
#include "holorot/spin7.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace holorot {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Malformed input; the message names the offending field.
class SchemaError : public Error {
 public:
  using Error::Error;
};

Json to_json(const KForm& a);
KForm kform_from_json(const Json& j, const std::string& where = "form");

Json to_json(const MatrixValuedForm& f);
MatrixValuedForm matrix_form_from_json(const Json& j, const std::string& where = "form");

Json to_json(const Ambient& a);
Ambient ambient_from_json(const Json& j, const std::string& where = "ambient");

Json to_json(const CurvatureModel& m);
CurvatureModel model_from_json(const Json& j);

std::string dump_model(const CurvatureModel& m);
CurvatureModel parse_model(const std::string& text);
void save_model(const CurvatureModel& m, const std::filesystem::path& path);
CurvatureModel load_model(const std::filesystem::path& path);

Json to_json(const Eigen::MatrixXd& m);
Json to_json(const Eigen::VectorXd& v);

Json to_json(const QuatDecomposition& d, const QuaternionicTriple& t);
Json to_json(const CalibrationReport& r);
Json to_json(const RotationSphereReport& r);
Json to_json(const RotabilityVerdict& v);
RotabilityVerdict verdict_from_json(const Json& j);
Json to_json(const CorollaryResult& c);
Json to_json(const BogomolovResult& b);
Json to_json(const FamilyGridReport& g);

}  // namespace holorot
