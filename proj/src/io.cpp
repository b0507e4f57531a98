#include "holorot/io.hpp"

#include <fstream>
#include <sstream>

namespace holorot {

namespace {

const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw SchemaError(where + "." + key + ": missing field");
  return *it;
}

int int_field(const Json& j, const std::string& key, const std::string& where, int lo, int hi) {
  const Json& v = field(j, key, where);
  if (!v.is_number_integer()) throw SchemaError(where + "." + key + ": expected an integer");
  const auto x = v.get<long long>();
  if (x < lo || x > hi)
    throw SchemaError(where + "." + key + ": value " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  return static_cast<int>(x);
}

double number(const Json& v, const std::string& where) {
  if (!v.is_number()) throw SchemaError(where + ": expected a number");
  return v.get<double>();
}

const Json& array_of_size(const Json& v, std::size_t n, const std::string& where) {
  if (!v.is_array()) throw SchemaError(where + ": expected an array");
  if (v.size() != n)
    throw SchemaError(where + ": expected " + std::to_string(n) + " entries, found " + std::to_string(v.size()));
  return v;
}

Json vec3(const Eigen::Vector3d& v) { return Json::array({v[0], v[1], v[2]}); }

Eigen::Matrix3d matrix3_from_json(const Json& j, const std::string& where) {
  array_of_size(j, 3, where);
  Eigen::Matrix3d m;
  for (int r = 0; r < 3; ++r) {
    const std::string w = where + "[" + std::to_string(r) + "]";
    array_of_size(j[static_cast<std::size_t>(r)], 3, w);
    for (int c = 0; c < 3; ++c)
      m(r, c) = number(j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)], w + "[" + std::to_string(c) + "]");
  }
  return m;
}

}  // namespace

Json to_json(const KForm& a) {
  Json coeffs = Json::array();
  for (Eigen::Index s = 0; s < a.coeffs().size(); ++s) coeffs.push_back(a.coeffs()[s]);
  return Json{{"dim", a.dim()}, {"degree", a.degree()}, {"coeffs", coeffs}};
}

KForm kform_from_json(const Json& j, const std::string& where) {
  const int dim = int_field(j, "dim", where, 1, kMaxDim);
  const int degree = int_field(j, "degree", where, 0, dim);
  const std::size_t n = binomial(dim, degree);
  const Json& c = array_of_size(field(j, "coeffs", where), n, where + ".coeffs");
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (std::size_t s = 0; s < n; ++s) v[static_cast<Eigen::Index>(s)] = number(c[s], where + ".coeffs[" + std::to_string(s) + "]");
  return KForm(dim, degree, v);
}

Json to_json(const MatrixValuedForm& f) {
  Json coeffs = Json::array();
  for (const auto& m : f.coeffs()) {
    Json entries = Json::array();
    for (int r = 0; r < f.rank(); ++r)
      for (int c = 0; c < f.rank(); ++c) entries.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    coeffs.push_back(entries);
  }
  return Json{{"dim", f.dim()}, {"degree", f.degree()}, {"rank", f.rank()}, {"coeffs", coeffs}};
}

MatrixValuedForm matrix_form_from_json(const Json& j, const std::string& where) {
  const int dim = int_field(j, "dim", where, 1, kMaxDim);
  const int degree = int_field(j, "degree", where, 0, dim);
  const int rank = int_field(j, "rank", where, 1, 64);
  const std::size_t n = binomial(dim, degree);
  const auto rr = static_cast<std::size_t>(rank * rank);
  const Json& c = array_of_size(field(j, "coeffs", where), n, where + ".coeffs");
  std::vector<Eigen::MatrixXcd> coeffs;
  coeffs.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    const std::string ws = where + ".coeffs[" + std::to_string(s) + "]";
    array_of_size(c[s], rr, ws);
    Eigen::MatrixXcd m(rank, rank);
    for (std::size_t e = 0; e < rr; ++e) {
      const std::string we = ws + "[" + std::to_string(e) + "]";
      const Json& pair = array_of_size(c[s][e], 2, we);
      m(static_cast<Eigen::Index>(e) / rank, static_cast<Eigen::Index>(e) % rank) = {number(pair[0], we + "[0]"),
                                                                                     number(pair[1], we + "[1]")};
    }
    coeffs.push_back(std::move(m));
  }
  try {
    return MatrixValuedForm(dim, degree, rank, std::move(coeffs));
  } catch (const Error& e) {
    throw SchemaError(where + ".coeffs: " + e.what());
  }
}

Json to_json(const Ambient& a) { return Json{{"dim", a.dim}, {"kind", to_string(a.kind)}, {"n", a.n}}; }

Ambient ambient_from_json(const Json& j, const std::string& where) {
  Ambient a;
  a.dim = int_field(j, "dim", where, 1, kMaxDim);
  const Json& kind = field(j, "kind", where);
  if (!kind.is_string()) throw SchemaError(where + ".kind: expected a string");
  try {
    a.kind = ambient_kind_from_string(kind.get<std::string>());
  } catch (const Error& e) {
    throw SchemaError(where + ".kind: " + e.what());
  }
  a.n = j.contains("n") ? int_field(j, "n", where, 0, kMaxDim) : 0;
  switch (a.kind) {
    case AmbientKind::Quaternionic:
      if (a.n < 1 || a.dim != 4 * a.n) throw SchemaError(where + ": quaternionic ambient needs dim = 4n");
      break;
    case AmbientKind::Spin7:
    case AmbientKind::Product:
      if (a.dim != 8) throw SchemaError(where + ".dim: this ambient kind lives on R^8");
      break;
    case AmbientKind::Complex:
      if (a.dim % 2 != 0) throw SchemaError(where + ".dim: complex ambient needs an even dimension");
      break;
  }
  return a;
}

Json to_json(const CurvatureModel& m) {
  return Json{{"schema_version", kSchemaVersion},
              {"ambient", to_json(m.ambient)},
              {"seed", m.seed},
              {"provenance", m.provenance},
              {"form", to_json(m.f)}};
}

CurvatureModel model_from_json(const Json& j) {
  const int version = int_field(j, "schema_version", "model", 0, 1 << 20);
  if (version != kSchemaVersion)
    throw SchemaError("model.schema_version: unsupported version " + std::to_string(version));
  const Ambient ambient = ambient_from_json(field(j, "ambient", "model"), "model.ambient");
  const Json& seed = field(j, "seed", "model");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0))
    throw SchemaError("model.seed: expected a non-negative integer");
  std::string provenance;
  if (j.contains("provenance")) {
    if (!j["provenance"].is_string()) throw SchemaError("model.provenance: expected a string");
    provenance = j["provenance"].get<std::string>();
  }
  MatrixValuedForm f = matrix_form_from_json(field(j, "form", "model"), "model.form");
  if (f.dim() != ambient.dim) throw SchemaError("model.form.dim: does not match model.ambient.dim");
  if (f.degree() != 2) throw SchemaError("model.form.degree: a curvature must have degree 2");
  return {std::move(f), ambient, seed.get<std::uint64_t>(), provenance};
}

std::string dump_model(const CurvatureModel& m) { return to_json(m).dump(2) + "\n"; }

CurvatureModel parse_model(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  return model_from_json(j);
}

void save_model(const CurvatureModel& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << dump_model(m);
  if (!out) throw Error("failed writing " + path.string());
}

CurvatureModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_model(buf.str());
  } catch (const SchemaError& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

Json to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Json to_json(const QuatDecomposition& d, const QuaternionicTriple& t) {
  const auto ranks = quat_projector_ranks(t);
  return Json{{"components",
               {{"sp2span", d.sp2span.norm()},
                {"w_h", d.w_h.norm()},
                {"w_i_prim", d.w_i_prim.norm()},
                {"w_j_prim", d.w_j_prim.norm()},
                {"w_k_prim", d.w_k_prim.norm()}}},
              {"ranks", Json::array({ranks[0], ranks[1], ranks[2], ranks[3], ranks[4]})},
              {"residual", d.residual}};
}

Json to_json(const CalibrationReport& r) {
  Json eq = Json::array();
  for (const auto& p : r.equality_set) eq.push_back(vec3(p));
  return Json{{"value_at_i", r.value_at_i},
              {"max_value", r.max_value},
              {"argmax", vec3(r.argmax)},
              {"max_at_i", r.max_at_i},
              {"equality_matches_hym", r.equality_matches_hym},
              {"samples", r.samples.size()},
              {"equality_samples", eq}};
}

Json to_json(const RotationSphereReport& r) {
  Json kernel = Json::array();
  for (const auto& k : r.kernel_basis) kernel.push_back(to_json(k));
  return Json{{"r", r.r},
              {"k", r.k_const},
              {"Q_eigenvalues", to_json(r.q_eigenvalues)},
              {"kernel_basis", kernel},
              {"samples_checked", r.samples_checked},
              {"value_at_i", r.value_at_i},
              {"max_excess", r.max_excess},
              {"inequality_holds", r.inequality_holds},
              {"equality_matches_hym", r.equality_matches_hym},
              {"equality_matches_kernel", r.equality_matches_kernel},
              {"equality_count", r.equality_count},
              {"cross_term_max", r.cross_term_max},
              {"scaling_identity_max", r.scaling_identity_max},
              {"chain", {{"ok", r.chain.ok}, {"checked", r.chain.checked},
                         {"worst_equality_gap", r.chain.worst_equality_gap},
                         {"worst_inequality", r.chain.worst_inequality}}}};
}

Json to_json(const RotabilityVerdict& v) {
  Json out{{"verdict", to_string(v.kind)},
           {"lambda", v.witness.lambda},
           {"lambda_prime", v.witness.lambda_prime},
           {"m", vec3(v.witness.m)},
           {"f5_norm", v.witness.f5_norm},
           {"scalar_residual_left", v.witness.scalar_residual_left},
           {"scalar_residual_right", v.witness.scalar_residual_right},
           {"hym", v.witness.hym},
           {"note", v.witness.note}};
  if (v.basis_change) {
    out["basis_change"] = {{"rot_l", to_json(Eigen::MatrixXd(v.basis_change->first))},
                           {"rot_r", to_json(Eigen::MatrixXd(v.basis_change->second))}};
  } else {
    out["basis_change"] = nullptr;
  }
  return out;
}

RotabilityVerdict verdict_from_json(const Json& j) {
  RotabilityVerdict v;
  const Json& kind = field(j, "verdict", "verdict");
  if (!kind.is_string()) throw SchemaError("verdict.verdict: expected a string");
  try {
    v.kind = rotability_from_string(kind.get<std::string>());
  } catch (const Error& e) {
    throw SchemaError(std::string("verdict.verdict: ") + e.what());
  }
  v.witness.lambda = number(field(j, "lambda", "verdict"), "verdict.lambda");
  v.witness.lambda_prime = number(field(j, "lambda_prime", "verdict"), "verdict.lambda_prime");
  const Json& m = array_of_size(field(j, "m", "verdict"), 3, "verdict.m");
  for (std::size_t i = 0; i < 3; ++i) v.witness.m[static_cast<Eigen::Index>(i)] = number(m[i], "verdict.m");
  if (j.contains("f5_norm")) v.witness.f5_norm = number(j["f5_norm"], "verdict.f5_norm");
  if (j.contains("scalar_residual_left"))
    v.witness.scalar_residual_left = number(j["scalar_residual_left"], "verdict.scalar_residual_left");
  if (j.contains("scalar_residual_right"))
    v.witness.scalar_residual_right = number(j["scalar_residual_right"], "verdict.scalar_residual_right");
  if (j.contains("hym")) v.witness.hym = j["hym"].get<bool>();
  if (j.contains("note")) v.witness.note = j["note"].get<std::string>();
  if (j.contains("basis_change") && !j["basis_change"].is_null()) {
    const Json& b = j["basis_change"];
    v.basis_change = std::make_pair(matrix3_from_json(field(b, "rot_l", "verdict.basis_change"), "verdict.basis_change.rot_l"),
                                    matrix3_from_json(field(b, "rot_r", "verdict.basis_change"), "verdict.basis_change.rot_r"));
  }
  return v;
}

Json to_json(const CorollaryResult& c) {
  return Json{{"lhs", c.lhs}, {"rhs", c.rhs}, {"factor_terms", c.factor_terms},
              {"identity_gap", c.identity_gap}, {"rotable", c.rotable}};
}

Json to_json(const BogomolovResult& b) {
  return Json{{"value", b.value}, {"f5_part", b.f5_part}, {"tight", b.tight}};
}

Json to_json(const FamilyGridReport& g) {
  return Json{{"points", g.points},
              {"family_points", g.family_points},
              {"hym_points", g.hym_points},
              {"mismatches", g.mismatches},
              {"psi_max_at_reference", g.psi_max_at_reference},
              {"psi_reference", g.psi_reference},
              {"psi_grid_max", g.psi_grid_max}};
}

}  // namespace holorot
