#include "holorot/cli.hpp"

#include "holorot/chern.hpp"
#include "holorot/io.hpp"
#include "holorot/k3product.hpp"
#include "holorot/models.hpp"
#include "holorot/numerics.hpp"
#include "holorot/quaternionic.hpp"
#include "holorot/spin7.hpp"
#include "holorot/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

namespace holorot::cli {

namespace {

const std::vector<std::string> kCommands{"decompose", "classify", "calibrate", "verify", "generate", "spin7"};

struct Structure {
  AmbientKind kind = AmbientKind::Complex;
  int dim = 0;
  int n = 0;
};

Structure parse_structure(const std::string& s, int n_flag) {
  const auto colon = s.find(':');
  const std::string head = s.substr(0, colon);
  const auto arg = [&]() -> int {
    if (colon == std::string::npos) return -1;
    try {
      return std::stoi(s.substr(colon + 1));
    } catch (const std::exception&) {
      throw Error("bad structure argument: " + s);
    }
  };
  if (head == "quat" || head == "quaternionic") {
    const int n = colon == std::string::npos ? n_flag : arg();
    if (n < 1 || n > 4) throw Error("quaternionic n must be in 1..4");
    return {AmbientKind::Quaternionic, 4 * n, n};
  }
  if (head == "complex") {
    const int m = colon == std::string::npos ? 2 * n_flag : arg();
    if (m < 2 || m % 2 != 0 || m > kMaxDim) throw Error("complex dimension must be even and in 2..16");
    return {AmbientKind::Complex, m, 0};
  }
  if (s == "spin7") return {AmbientKind::Spin7, 8, 0};
  if (s == "k3xk3") return {AmbientKind::Product, 8, 0};
  throw Error("unknown structure: " + s);
}

Structure resolve_structure(const RunConfig& c, const CurvatureModel* m) {
  if (!c.structure.empty()) {
    Structure s = parse_structure(c.structure, c.n);
    if (m && m->f.dim() != s.dim)
      throw Error("model dimension " + std::to_string(m->f.dim()) + " does not match structure " + c.structure);
    return s;
  }
  if (!m) throw Error("--structure is required");
  return {m->ambient.kind, m->ambient.dim, m->ambient.n};
}

CurvatureModel load_input(const RunConfig& c) {
  if (c.input.empty()) throw Error("--in is required for " + c.command);
  return load_model(c.input);
}

Json ranks_and_norms(const MatrixValuedForm& f, const std::vector<std::pair<std::string, Eigen::MatrixXd>>& parts,
                     Json& table) {
  Json out = Json::object();
  table = Json{{"columns", {"summand", "rank", "norm"}}, {"rows", Json::array()}};
  for (const auto& [name, proj] : parts) {
    const int rank = projector_rank(proj);
    const double norm = f.apply(proj).killing_norm();
    out[name] = {{"rank", rank}, {"norm", norm}};
    table["rows"].push_back({name, rank, norm});
  }
  return out;
}

Json hym_json(const HymResult& h) {
  return {{"is_hym", h.is_hym},
          {"lambda", h.lambda},
          {"residual_20", h.residual_20},
          {"residual_trace", h.residual_trace},
          {"tolerance", h.tolerance}};
}

Json chern_json(const ChernData& d) {
  return {{"lambda", d.lambda},
          {"lambda_prime", d.lambda_prime},
          {"lambda_tilde", d.lambda_tilde},
          {"lambda_c1", d.lambda_c1},
          {"lambda_prime_c1", d.lambda_prime_c1},
          {"c2_pairing", to_json(Eigen::MatrixXd(d.c2_pairing))},
          {"c1_left", to_json(d.c1_left)},
          {"c1_right", to_json(d.c1_right)}};
}

Json vec3_json(const Eigen::Vector3d& v) { return Json::array({v[0], v[1], v[2]}); }

// ---- decompose -------------------------------------------------------------

Json cmd_decompose(const RunConfig& c) {
  const CurvatureModel m = load_input(c);
  const Structure s = resolve_structure(c, &m);
  Json report{{"command", "decompose"}, {"structure", to_string(s.kind)}, {"rank", m.f.rank()}};
  Json table;
  switch (s.kind) {
    case AmbientKind::Complex: {
      const ComplexStructure j = ComplexStructure::standard(s.dim);
      const Eigen::MatrixXd p11 = projector_11(j);
      const Eigen::MatrixXd prim = projector_11_prim(j);
      report["summands"] = ranks_and_norms(
          m.f, {{"(2,0)+(0,2)", projector_20(j)}, {"(1,1)_0", prim}, {"omega", p11 - prim}}, table);
      report["hym"] = hym_json(hym_check(m.f, j, c.tol));
      break;
    }
    case AmbientKind::Quaternionic: {
      const QuaternionicTriple t = standard_triple(s.n);
      const auto p = quat_projectors(t);
      report["n"] = s.n;
      report["summands"] = ranks_and_norms(
          m.f, {{"sp2span", p[0]}, {"W_H", p[1]}, {"W_I_prim", p[2]}, {"W_J_prim", p[3]}, {"W_K_prim", p[4]}},
          table);
      report["hym_I"] = hym_json(hym_check(m.f, t.i(), c.tol));
      report["hyperholomorphic_residual"] = hyperholomorphic_residual(m.f, t);
      report["hyperholomorphic"] = hyperholomorphic_check(m.f, t, c.tol);
      break;
    }
    case AmbientKind::Spin7: {
      const MatrixValuedForm f0 = m.f.trace_free();
      report["summands"] = ranks_and_norms(f0, {{"Lambda2_7", projector_7()}, {"Lambda2_21", projector_21()}}, table);
      report["trace_norm"] = m.f.trace_imag().norm();
      report["spinstanton_residual"] = spinstanton_residual(m.f);
      report["spinstanton"] = spinstanton_check(m.f, c.tol);
      report["hym_I"] = hym_json(hym_check(m.f, standard_su4().i(), c.tol));
      break;
    }
    case AmbientKind::Product: {
      const ProductStructure p = ProductStructure::standard();
      const auto pr = product_projectors(p);
      report["summands"] = ranks_and_norms(
          m.f, {{"f1", pr[0]}, {"f2", pr[1]}, {"f3", pr[2]}, {"f4", pr[3]}, {"f5", pr[4]}}, table);
      const PsiMatrix psi = psi_matrix(m.f.apply(pr[4]), p, c.tol);
      report["psi"] = {{"matrix", to_json(Eigen::MatrixXd(psi.m))}, {"signed_singular_values", vec3_json(psi.sv)}};
      report["hym_reference"] = hym_json(hym_check(m.f, p.reference(), c.tol));
      report["chern"] = chern_json(chern_data(m.f, p));
      break;
    }
  }
  report["table"] = table;
  return report;
}

// ---- classify --------------------------------------------------------------

Json cmd_classify(const RunConfig& c, int& exit_code) {
  const CurvatureModel m = load_input(c);
  const Structure s = resolve_structure(c, &m);
  Json report{{"command", "classify"}, {"structure", to_string(s.kind)}};
  bool rotable = true;
  std::string verdict;
  switch (s.kind) {
    case AmbientKind::Product: {
      const ProductStructure p = ProductStructure::standard();
      ClassifyOptions opt;
      opt.tol = c.tol;
      opt.allow_non_hym = c.allow_non_hym;
      const RotabilityVerdict v = classify(m.f, p, opt);
      verdict = to_string(v.kind);
      rotable = v.kind != Rotability::NotRotable;
      report.update(to_json(v));
      if (v.witness.hym) {
        report["chern"] = chern_json(chern_data(m.f, p));
        if (std::abs(v.witness.lambda) < c.tol && std::abs(v.witness.lambda_prime) < c.tol) {
          const CorollaryResult cr = corollary_check(m.f, p, c.tol);
          report["corollary"] = to_json(cr);
        }
        try {
          report["bogomolov"] = to_json(bogomolov_check(m.f, p, c.tol));
        } catch (const Error& e) {
          report["bogomolov"] = {{"skipped", e.what()}};
        }
      }
      break;
    }
    case AmbientKind::Spin7: {
      RotationScanOptions opt;
      opt.hym_tol = c.tol;
      const RotationSphereReport r = rotation_sphere_scan(m.f, standard_su4(), c.samples, opt);
      verdict = r.r == 0 ? "Rigid" : "RotationSphere";
      rotable = r.r > 0;
      report["verdict"] = verdict;
      report["sphere_dimension"] = r.r;
      report["report"] = to_json(r);
      break;
    }
    case AmbientKind::Quaternionic: {
      const QuaternionicTriple t = standard_triple(s.n);
      const bool hh = hyperholomorphic_check(m.f, t, c.tol);
      const HymResult h = hym_check(m.f, t.i(), c.tol);
      verdict = hh ? "Hyperholomorphic" : (h.is_hym ? "PlusMinusI" : "NotHYM");
      rotable = hh;
      report["verdict"] = verdict;
      report["hym_I"] = hym_json(h);
      report["hyperholomorphic_residual"] = hyperholomorphic_residual(m.f, t);
      break;
    }
    case AmbientKind::Complex: {
      const HymResult h = hym_check(m.f, ComplexStructure::standard(s.dim), c.tol);
      verdict = h.is_hym ? "HYM" : "NotHYM";
      rotable = false;
      report["verdict"] = verdict;
      report["hym"] = hym_json(h);
      break;
    }
  }
  if (c.expect == "rotable" && !rotable) exit_code = kExitNotRotable;
  if (!c.expect.empty() && c.expect != "rotable" && c.expect != verdict) exit_code = kExitNotRotable;
  return report;
}

// ---- calibrate -------------------------------------------------------------

Json cmd_calibrate(const RunConfig& c) {
  const CurvatureModel m = load_input(c);
  const Structure s = resolve_structure(c, &m);
  Json report{{"command", "calibrate"}, {"structure", to_string(s.kind)}};
  switch (s.kind) {
    case AmbientKind::Quaternionic: {
      const QuaternionicTriple t = standard_triple(s.n);
      const CalibrationSweep sweep(m.f);
      std::vector<Eigen::Vector3d> pts{Eigen::Vector3d::UnitX(), -Eigen::Vector3d::UnitX()};
      for (const auto& p : fibonacci_sphere(c.samples)) pts.push_back(p);
      const std::vector<double> values = parallel_map<double>(pts.size(), [&](std::size_t k) {
        return sweep(rotate_structure(t, pts[k]));
      });
      const double at_i = values[0];
      double lo = at_i, hi = at_i;
      Json rows = Json::array();
      for (std::size_t k = 0; k < pts.size(); ++k) {
        lo = std::min(lo, values[k]);
        hi = std::max(hi, values[k]);
        rows.push_back({pts[k][0], pts[k][1], pts[k][2], values[k]});
      }
      report["n"] = s.n;
      report["value_at_i"] = at_i;
      report["min"] = lo;
      report["max"] = hi;
      report["spread"] = hi - lo;
      report["table"] = {{"columns", {"a", "b", "c", "functional"}}, {"rows", rows}};
      break;
    }
    case AmbientKind::Spin7: {
      RotationScanOptions opt;
      opt.hym_tol = c.tol;
      report["report"] = to_json(rotation_sphere_scan(m.f, standard_su4(), c.samples, opt));
      break;
    }
    case AmbientKind::Product: {
      const ProductStructure p = ProductStructure::standard();
      const MatrixValuedForm f5 = m.f.apply(product_projectors(p)[4]);
      const std::vector<Eigen::Vector3d> pts = fibonacci_sphere(c.grid);
      const std::vector<double> values = parallel_map<double>(pts.size() * pts.size(), [&](std::size_t k) {
        return psi_value(f5, p, pts[k / pts.size()], pts[k % pts.size()]);
      });
      Json rows = Json::array();
      double hi = psi_value(f5, p, Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitX());
      report["psi_reference"] = hi;
      for (std::size_t k = 0; k < values.size(); ++k) {
        const auto& u = pts[k / pts.size()];
        const auto& v = pts[k % pts.size()];
        hi = std::max(hi, values[k]);
        rows.push_back({u[0], u[1], u[2], v[0], v[1], v[2], values[k]});
      }
      report["psi_max"] = hi;
      report["table"] = {{"columns", {"a", "b", "c", "a'", "b'", "c'", "psi"}}, {"rows", rows}};
      break;
    }
    case AmbientKind::Complex:
      throw Error("calibrate needs a quaternionic, spin7 or k3xk3 structure");
  }
  return report;
}

// ---- verify ----------------------------------------------------------------

Json cmd_verify(const RunConfig& c, int& exit_code) {
  VerifyOptions o;
  if (!c.golden.empty()) o.golden_dir = std::filesystem::path(c.golden);
  const std::vector<CriterionResult> results = run_suite(c.suite, o);
  Json rows = Json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    rows.push_back({r.id, r.name, r.passed ? "pass" : "fail", r.detail});
  }
  if (!all) exit_code = kExitError;
  return {{"command", "verify"},
          {"suite", c.suite},
          {"passed", all},
          {"table", {{"columns", {"id", "criterion", "result", "detail"}}, {"rows", rows}}}};
}

// ---- generate --------------------------------------------------------------

CurvatureModel cmd_generate(const RunConfig& c) {
  if (c.kind.empty()) throw Error("--kind is required for generate");
  if (c.kind.rfind("product:", 0) == 0)
    return random_product(rotability_from_string(c.kind.substr(8)), c.rank, c.seed, c.variant);
  if (c.kind == "spinstanton" || c.kind == "spinstanton-nonhym")
    return random_spinstanton(standard_su4(), c.rank, c.seed, c.kind == "spinstanton");
  if (c.kind == "spinstanton-hyperkahler") return random_hyperkahler_spinstanton(c.rank, c.seed);
  const Structure s = parse_structure(c.structure.empty() ? "quat:" + std::to_string(c.n) : c.structure, c.n);
  if (c.kind == "hym") {
    if (s.kind == AmbientKind::Quaternionic) return random_hym(standard_triple(s.n), c.rank, c.seed);
    if (s.kind == AmbientKind::Complex) return random_hym(ComplexStructure::standard(s.dim), c.rank, c.seed, c.lambda);
    throw Error("hym models need a complex or quaternionic structure");
  }
  if (c.kind == "hyperholomorphic") {
    if (s.kind != AmbientKind::Quaternionic) throw Error("hyperholomorphic models need a quaternionic structure");
    return random_hyperholomorphic(standard_triple(s.n), c.rank, c.seed);
  }
  throw Error("unknown model kind: " + c.kind);
}

// ---- spin7 -----------------------------------------------------------------

Json cmd_spin7() {
  const CayleyForm cf = cayley_form();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cayley_operator());
  std::map<long long, int> mult;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) ++mult[std::llround(es.eigenvalues()[k])];
  Json spectrum = Json::array();
  for (const auto& [ev, count] : mult) spectrum.push_back({{"eigenvalue", ev}, {"multiplicity", count}});
  Json rows = Json::array();
  const auto& masks = basis_masks(8, 4);
  for (std::size_t k = 0; k < masks.size(); ++k) {
    const double v = cf.omega4.coeffs()[static_cast<Eigen::Index>(k)];
    if (v == 0.0) continue;
    std::string name = "dx";
    for (int i : FormIndex(8, masks[k]).subset()) name += std::to_string(i);
    rows.push_back({name, v});
  }
  const Delta20Split d = delta20_plus_minus(standard_su4());
  return {{"command", "spin7"},
          {"spectrum", spectrum},
          {"self_dual", hodge_star(cf.omega4).coeffs() == cf.omega4.coeffs()},
          {"compatible_frames", compatible_coordinate_frames().size()},
          {"delta20_plus_dim", d.plus_basis.size()},
          {"delta20_minus_dim", d.minus_basis.size()},
          {"table", {{"columns", {"monomial", "coefficient"}}, {"rows", rows}}}};
}

// ---- rendering -------------------------------------------------------------

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string csv_cell(const Json& v) {
  std::string s = scalar_text(v);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, Json>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (prefix.empty() && it.key() == "table") continue;
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
    return;
  }
  if (j.is_array() && !j.empty() && (j.front().is_object())) {
    for (std::size_t k = 0; k < j.size(); ++k) flatten(j[k], prefix + "." + std::to_string(k), out);
    return;
  }
  out.emplace_back(prefix, j);
}

void render(const Json& report, Format format, std::ostream& os) {
  if (format == Format::Json) {
    os << report.dump(2) << "\n";
    return;
  }
  const bool has_table = report.contains("table") && report["table"].contains("rows");
  if (format == Format::Csv) {
    if (has_table) {
      const Json& t = report["table"];
      bool first = true;
      for (const auto& col : t["columns"]) os << (first ? "" : ",") << csv_cell(col), first = false;
      os << "\n";
      for (const auto& row : t["rows"]) {
        first = true;
        for (const auto& cell : row) os << (first ? "" : ",") << csv_cell(cell), first = false;
        os << "\n";
      }
      return;
    }
    std::vector<std::pair<std::string, Json>> kv;
    flatten(report, "", kv);
    os << "key,value\n";
    for (const auto& [k, v] : kv) os << csv_cell(k) << "," << csv_cell(v) << "\n";
    return;
  }
  std::vector<std::pair<std::string, Json>> kv;
  flatten(report, "", kv);
  std::size_t width = 0;
  for (const auto& [k, v] : kv) width = std::max(width, k.size());
  for (const auto& [k, v] : kv) os << std::left << std::setw(static_cast<int>(width) + 2) << k << scalar_text(v) << "\n";
  if (has_table) {
    const Json& t = report["table"];
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> header;
    for (const auto& col : t["columns"]) header.push_back(scalar_text(col));
    cells.push_back(header);
    for (const auto& row : t["rows"]) {
      std::vector<std::string> line;
      for (const auto& cell : row) line.push_back(scalar_text(cell));
      cells.push_back(line);
    }
    std::vector<std::size_t> widths(header.size(), 0);
    for (const auto& line : cells)
      for (std::size_t k = 0; k < line.size() && k < widths.size(); ++k) widths[k] = std::max(widths[k], line[k].size());
    os << "\n";
    for (const auto& line : cells) {
      for (std::size_t k = 0; k < line.size(); ++k) {
        os << line[k];
        if (k + 1 < line.size()) os << std::string(widths[k] - line[k].size() + 2, ' ');
      }
      os << "\n";
    }
  }
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "text") return Format::Text;
  throw Error("unknown format: " + s);
}

}  // namespace

void RunConfig::validate() const {
  if (std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end())
    throw Error("unknown command: " + command);
  if (!(tol > 0.0)) throw Error("--tol must be positive");
  if (grid < 2) throw Error("--grid must be at least 2");
  if (rank < 1 || rank > 8) throw Error("--rank must be in 1..8");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    int exit_code = kExitOk;
    std::ostringstream buffer;
    if (config.command == "generate") {
      buffer << dump_model(cmd_generate(config));
    } else {
      Json report;
      if (config.command == "decompose") report = cmd_decompose(config);
      else if (config.command == "classify") report = cmd_classify(config, exit_code);
      else if (config.command == "calibrate") report = cmd_calibrate(config);
      else if (config.command == "verify") report = cmd_verify(config, exit_code);
      else report = cmd_spin7();
      render(report, config.format, buffer);
    }
    if (config.output.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(config.output, std::ios::binary);
      if (!file) throw Error("cannot write " + config.output);
      file << buffer.str();
    }
    return exit_code;
  } catch (const std::exception& e) {
    err << "holorot: " << e.what() << "\n";
    return kExitError;
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  std::string format = "json";
  CLI::App app{"Rotability of HYM connections under changes of complex structure", "holorot"};
  app.set_help_flag("-h,--help");
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--in", c.input, "input model (JSON)");
  app.add_option("--out", c.output, "write the report here instead of stdout");
  app.add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--tol", c.tol, "tolerance");
  app.add_option("--grid", c.grid, "grid points per sphere");
  app.add_option("--samples", c.samples, "sphere samples");
  app.add_option("--seed", c.seed, "RNG seed");
  app.add_option("--structure", c.structure, "quat:n | quaternionic | complex:m | spin7 | k3xk3");
  app.add_option("--n", c.n, "quaternionic dimension for --structure quaternionic");
  app.add_option("--expect", c.expect, "exit 2 unless the verdict matches (\"rotable\" or a verdict name)");
  app.add_option("--kind", c.kind, "generate: hym | hyperholomorphic | spinstanton | spinstanton-nonhym | spinstanton-hyperkahler | product:<Verdict>");
  app.add_option("--rank", c.rank, "bundle rank for generate");
  app.add_option("--variant", c.variant, "generator variant");
  app.add_option("--lambda", c.lambda, "Einstein constant for complex hym models");
  app.add_option("--suite", c.suite, "verify suite")->check(CLI::IsMember(suite_names()));
  app.add_option("--golden", c.golden, "golden model directory for verify");
  app.add_flag("--allow-non-hym-diagnostics", c.allow_non_hym, "classify non-HYM input as NotRotable with diagnostics");
  app.add_subcommand("decompose", "irreducible decomposition of a curvature model");
  app.add_subcommand("classify", "rotability verdict");
  app.add_subcommand("calibrate", "calibration functional over the sphere of structures");
  app.add_subcommand("verify", "run the invariant suites");
  app.add_subcommand("generate", "write a random curvature model");
  app.add_subcommand("spin7", "Cayley form data");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "holorot: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }
  c.command = app.get_subcommands().front()->get_name();
  c.format = parse_format(format);
  try {
    c.validate();
  } catch (const Error& e) {
    err << "holorot: " << e.what() << "\n";
    return kExitUsage;
  }
  return run(c, out, err);
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return main_entry(args, out, err);
}

}  // namespace holorot::cli
