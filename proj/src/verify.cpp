#include "holorot/verify.hpp"

#include "holorot/io.hpp"
#include "holorot/k3product.hpp"
#include "holorot/models.hpp"
#include "holorot/quaternionic.hpp"
#include "holorot/spin7.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <sstream>

namespace holorot {

namespace {

struct Tally {
  bool ok = true;
  std::ostringstream log;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) log << "; ";
      ok = false;
      log << what;
    }
  }
};

CriterionResult timed(int id, const std::string& name, const std::function<void(Tally&)>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Tally tally;
  try {
    body(tally);
  } catch (const std::exception& e) {
    tally.expect(false, std::string("exception: ") + e.what());
  }
  CriterionResult r;
  r.id = id;
  r.name = name;
  r.passed = tally.ok;
  r.detail = tally.ok ? "ok" : tally.log.str();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

Eigen::Vector3d random_unit3(Rng& rng) {
  const Eigen::VectorXd v = rng.unit_vector(3);
  return {v[0], v[1], v[2]};
}

}  // namespace

CriterionResult check_quaternionic_ranks(const VerifyOptions&) {
  return timed(1, "quaternionic projector ranks", [](Tally& t) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int n = 1; n <= 3; ++n) {
      const auto ranks = quat_projector_ranks(standard_triple(n));
      const int prim = 2 * n * n - n - 1;
      const std::array<int, 5> want{3, 2 * n * n + n, prim, prim, prim};
      t.expect(ranks == want, "n=" + std::to_string(n) + " ranks differ");
      int sum = 0;
      for (int r : ranks) sum += r;
      t.expect(sum == 8 * n * n - 2 * n, "n=" + std::to_string(n) + " ranks do not sum to dim");
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    t.expect(s < 5.0, "runtime " + fmt(s) + " s");
  });
}

CriterionResult check_w_h_intersection(const VerifyOptions&) {
  return timed(2, "intersection of (1,1) spaces is W_H", [](Tally& t) {
    const QuaternionicTriple q = standard_triple(2);
    const Eigen::MatrixXd wh = w_h_basis(q);
    Rng rng(20260402);
    int pairs = 0;
    double worst = 0.0;
    while (pairs < 100) {
      const Eigen::Vector3d u = random_unit3(rng);
      const Eigen::Vector3d v = random_unit3(rng);
      if (std::abs(u.dot(v)) > 0.999) continue;
      ++pairs;
      const Eigen::MatrixXd both = intersect_projector_ranges(
          {projector_11(rotate_structure(q, u)), projector_11(rotate_structure(q, v))}, 1e-8);
      if (both.cols() != wh.cols()) {
        t.expect(false, "pair " + std::to_string(pairs) + " has dimension " + std::to_string(both.cols()));
        continue;
      }
      worst = std::max({worst, principal_angle_sines(both, wh).maxCoeff(), principal_angle_sines(wh, both).maxCoeff()});
    }
    t.expect(worst < 1e-8, "largest principal angle sine " + fmt(worst));
  });
}

CriterionResult check_calibration_maximum(const VerifyOptions& o) {
  return timed(3, "calibration functional maximized at HYM structures", [&](Tally& t) {
    const QuaternionicTriple q = standard_triple(2);
    for (int i = 0; i < 20; ++i) {
      const int r = 1 + i % 3;
      const CurvatureModel hh = random_hyperholomorphic(q, r, 3000 + static_cast<std::uint64_t>(i));
      const CalibrationReport rep = calibration_sphere_scan(hh.f, q, o.calibration_samples);
      double lo = rep.value_at_i, hi = rep.value_at_i;
      for (const auto& s : rep.samples) {
        lo = std::min(lo, s.value);
        hi = std::max(hi, s.value);
      }
      t.expect(hi - lo < 1e-9, "hyperholomorphic model " + std::to_string(i) + " spread " + fmt(hi - lo));
      t.expect(rep.equality_matches_hym, "hyperholomorphic model " + std::to_string(i) + " equality vs HYM");
    }
    for (int i = 0; i < 20; ++i) {
      const int r = 1 + i % 3;
      const CurvatureModel g = random_hym(q, r, 4000 + static_cast<std::uint64_t>(i));
      t.expect(!hyperholomorphic_check(g.f, q), "generic model " + std::to_string(i) + " lies in W_H");
      const CalibrationReport rep = calibration_sphere_scan(g.f, q, o.calibration_samples);
      for (std::size_t s = 2; s < rep.samples.size(); ++s) {
        const auto& smp = rep.samples[s];
        if (std::abs(std::abs(smp.abc[0]) - 1.0) < 1e-12) continue;
        if (!(smp.value < rep.value_at_i - 1e-9)) {
          t.expect(false, "generic model " + std::to_string(i) + " not strictly below at a sample");
          break;
        }
      }
      t.expect(rep.equality_matches_hym, "generic model " + std::to_string(i) + " equality vs HYM");
    }
    // Pointwise identities for unit forms of each type.
    Rng rng(77);
    for (int n = 2; n <= 3; ++n) {
      const QuaternionicTriple tn = standard_triple(n);
      const ComplexStructure i = tn.i();
      const int m = i.complex_dim();
      const auto dim = static_cast<Eigen::Index>(binomial(tn.dim(), 2));
      for (int rep = 0; rep < 5; ++rep) {
        const Eigen::VectorXd x = rng.normal_vector(dim);
        const KForm a20 = KForm(tn.dim(), 2, projector_20(i) * x);
        const KForm a11 = KForm(tn.dim(), 2, projector_11_prim(i) * x);
        const double v20 = pointwise_square_pairing((1.0 / a20.norm()) * a20, i);
        const double v11 = pointwise_square_pairing((1.0 / a11.norm()) * a11, i);
        t.expect(std::abs(v20 - 1.0) < 1e-10, "(2,0) identity " + fmt(v20));
        t.expect(std::abs(v11 + 1.0) < 1e-10, "primitive (1,1) identity " + fmt(v11));
      }
      const KForm w = kahler_form(i);
      const double vw = pointwise_square_pairing((1.0 / w.norm()) * w, i);
      t.expect(std::abs(vw - (m - 1)) < 1e-10, "Kahler direction identity " + fmt(vw));
    }
  });
}

CriterionResult check_spin7_spectrum(const VerifyOptions&) {
  return timed(4, "Cayley operator spectrum and canonical SU(4) structure", [](Tally& t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cayley_operator());
    int threes = 0, minus = 0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
      const double e = es.eigenvalues()[k];
      if (std::abs(e - 3.0) < 1e-10) ++threes;
      else if (std::abs(e + 1.0) < 1e-10) ++minus;
    }
    t.expect(threes == 7 && minus == 21, "multiplicities " + std::to_string(threes) + ", " + std::to_string(minus));
    const KForm omega = cayley_form().omega4;
    t.expect(hodge_star(omega).coeffs() == omega.coeffs(), "Cayley form is not self-dual");
    int monomials = 0;
    for (Eigen::Index k = 0; k < omega.coeffs().size(); ++k)
      if (omega.coeffs()[k] != 0.0) ++monomials;
    t.expect(monomials == 14, "Cayley form has " + std::to_string(monomials) + " monomials");
    const SU4Structure& su4 = standard_su4();
    const KForm w = su4.omega();
    const KForm rebuilt = 0.5 * wedge(w, w) + su4.re_theta();
    t.expect(rebuilt.coeffs() == omega.coeffs(), "1/2 omega^2 + Re theta differs from the Cayley form");
    t.expect(std::abs(su4.theta_norm() - 4.0) < 1e-12, "|theta| != 4");
  });
}

CriterionResult check_spin_rotation(const VerifyOptions& o) {
  return timed(5, "rotation sphere of HYM spinstantons", [&](Tally& t) {
    const SU4Structure& su4 = standard_su4();
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < 20; ++i) {
      const int r = 2 + i % 2;
      const CurvatureModel m = random_spinstanton(su4, r, 5000 + static_cast<std::uint64_t>(i), true);
      const std::string tag = "model " + std::to_string(i);
      t.expect(spinstanton_check(m.f), tag + " is not a spinstanton");
      t.expect(chern_c1_form(m.f).norm() < 1e-12, tag + " has c_1 != 0");
      const RotationSphereReport rep = rotation_sphere_scan(m.f, su4, o.spin7_samples);
      t.expect(rep.q_eigenvalues.maxCoeff() < 1e-8, tag + " Q not negative semidefinite");
      t.expect(rep.inequality_holds, tag + " inequality fails (max excess " + fmt(rep.max_excess) + ")");
      t.expect(rep.equality_matches_kernel, tag + " equality set differs from ker Q");
      t.expect(rep.equality_matches_hym, tag + " equality set differs from HYM set");
      t.expect(rep.scaling_identity_max < 1e-9, tag + " scaling identity " + fmt(rep.scaling_identity_max));
      t.expect(rep.cross_term_max < 1e-9, tag + " cross term " + fmt(rep.cross_term_max));
      t.expect(rep.chain.ok, tag + " inequality chain");
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    t.expect(s < 60.0, "runtime " + fmt(s) + " s");
  });
}

CriterionResult check_product_classifier(const VerifyOptions& o) {
  return timed(6, "K3 x K3 rotability classifier", [&](Tally& t) {
    const ProductStructure p = ProductStructure::standard();
    struct Case {
      Rotability kind;
      int variant;
    };
    const Case cases[] = {{Rotability::FullProduct, 0},    {Rotability::LeftSphere, 0}, {Rotability::RightSphere, 0},
                          {Rotability::DiagonalSphere, 0}, {Rotability::NotRotable, 0}, {Rotability::NotRotable, 1}};
    for (const auto& c : cases) {
      for (int r = 1; r <= 2; ++r) {
        const std::uint64_t seed = 6000 + 10 * static_cast<std::uint64_t>(c.kind) + static_cast<std::uint64_t>(c.variant * 5 + r);
        const CurvatureModel m = random_product(c.kind, r, seed, c.variant);
        const std::string tag = to_string(c.kind) + "/" + std::to_string(c.variant) + "/r" + std::to_string(r);
        const RotabilityVerdict v = classify(m.f, p);
        t.expect(v.kind == c.kind, tag + " classified as " + to_string(v.kind));
        if (v.witness.f5_norm > 1e-9)
          t.expect(std::abs(v.witness.m[1] - v.witness.m[2]) < 1e-9 * std::max(1.0, std::abs(v.witness.m[0])),
                   tag + " m2 != m3");
        const FamilyGridReport g = family_grid_check(m.f, p, v, o.grid);
        t.expect(g.mismatches == 0, tag + " grid mismatches " + std::to_string(g.mismatches));
        if (std::abs(v.witness.lambda * v.witness.lambda_prime) < 1e-12)
          t.expect(g.psi_max_at_reference, tag + " Psi maximum not at (I, I')");
      }
    }
    // More (1,1) mixed components for the m2 = m3 property.
    Rng rng(61);
    const auto proj = product_projectors(p);
    const Eigen::MatrixXd c11 = projector_11(p.reference());
    for (int i = 0; i < 50; ++i) {
      const MatrixValuedForm f5 = random_matrix_form(8, 1 + i % 3, rng).apply(proj[4]).apply(c11);
      const PsiMatrix psi = psi_matrix(f5, p);
      t.expect(std::abs(psi.sv[1] - psi.sv[2]) < 1e-9 * std::max(1.0, std::abs(psi.sv[0])), "m2 != m3 on instance " + std::to_string(i));
    }
  });
}

CriterionResult check_corollary(const VerifyOptions&) {
  return timed(7, "corollary consistency", [](Tally& t) {
    const ProductStructure p = ProductStructure::standard();
    const Rotability kinds[] = {Rotability::FullProduct, Rotability::DiagonalSphere, Rotability::NotRotable};
    for (int i = 0; i < 50; ++i) {
      const Rotability kind = kinds[i % 3];
      const CurvatureModel m = random_product(kind, 1 + (i / 3) % 3, 7000 + static_cast<std::uint64_t>(i));
      const RotabilityVerdict v = classify(m.f, p);
      const CorollaryResult c = corollary_check(m.f, p);
      const bool equal = std::abs(c.lhs - c.rhs) < 1e-9;
      const bool rotable = v.kind == Rotability::FullProduct || v.kind == Rotability::DiagonalSphere;
      const std::string tag = "model " + std::to_string(i);
      t.expect(equal == rotable, tag + " corollary disagrees with " + to_string(v.kind));
      t.expect(c.identity_gap < 1e-9, tag + " rhs identity gap " + fmt(c.identity_gap));
    }
  });
}

CriterionResult check_common_11(const VerifyOptions&) {
  return timed(8, "common (1,1) forms of all structures", [](Tally& t) {
    for (int n = 2; n <= 4; ++n) {
      Rng rng(8000 + static_cast<std::uint64_t>(n));
      std::vector<ComplexStructure> js;
      for (int k = 0; k < 50; ++k) js.push_back(random_complex_structure(2 * n, rng));
      const int d = common_11_dimension(js);
      const int want = n == 2 ? 3 : 0;
      t.expect(d == want, "n=" + std::to_string(n) + " dimension " + std::to_string(d));
    }
  });
}

std::size_t check_golden_manifest(const std::filesystem::path& dir, std::string& detail) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw Error("cannot read " + (dir / "manifest.json").string());
  const Json manifest = Json::parse(in);
  std::size_t failures = 0;
  std::ostringstream log;
  for (const auto& entry : manifest.at("models")) {
    const std::string file = entry.at("file").get<std::string>();
    const CurvatureModel m = load_model(dir / file);
    const Json& expect = entry.at("expect");
    bool ok = true;
    switch (m.ambient.kind) {
      case AmbientKind::Product:
        ok = to_string(classify(m.f, ProductStructure::standard()).kind) == expect.at("verdict").get<std::string>();
        break;
      case AmbientKind::Spin7:
        ok = rotation_sphere_scan(m.f, standard_su4(), 500).r == expect.at("r").get<int>();
        break;
      case AmbientKind::Quaternionic:
        ok = hyperholomorphic_check(m.f, standard_triple(m.ambient.n)) == expect.at("hyperholomorphic").get<bool>();
        break;
      case AmbientKind::Complex:
        ok = hym_check(m.f, ComplexStructure::standard(m.ambient.dim)).is_hym == expect.at("hym").get<bool>();
        break;
    }
    if (!ok) {
      ++failures;
      log << file << " ";
    }
  }
  detail = log.str();
  return failures;
}

CriterionResult check_models_and_golden(const VerifyOptions& o) {
  return timed(9, "deterministic generators and golden files", [&](Tally& t) {
    const QuaternionicTriple q = standard_triple(2);
    const std::vector<std::function<CurvatureModel()>> gens{
        [&] { return random_hym(q, 2, 91); },
        [&] { return random_hyperholomorphic(q, 2, 92); },
        [&] { return random_spinstanton(standard_su4(), 2, 93); },
        [&] { return random_product(Rotability::DiagonalSphere, 2, 94); },
        [&] { return random_product(Rotability::NotRotable, 3, 95); },
    };
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const std::string a = dump_model(gens[g]());
      const std::string b = dump_model(gens[g]());
      t.expect(a == b, "generator " + std::to_string(g) + " is not deterministic");
      const CurvatureModel back = parse_model(a);
      t.expect(dump_model(back) == a, "generator " + std::to_string(g) + " does not round-trip");
      bool exact = true;
      const CurvatureModel orig = gens[g]();
      for (std::size_t s = 0; s < orig.f.coeffs().size(); ++s)
        exact = exact && (orig.f.coeff(s).array() == back.f.coeff(s).array()).all();
      t.expect(exact, "generator " + std::to_string(g) + " loses bits in JSON");
    }
    if (o.golden_dir) {
      std::string detail;
      const std::size_t failures = check_golden_manifest(*o.golden_dir, detail);
      t.expect(failures == 0, "golden mismatches: " + detail);
    }
  });
}

std::vector<std::string> suite_names() { return {"quaternionic", "spin7", "k3xk3", "kahler", "models", "all"}; }

std::vector<CriterionResult> run_suite(const std::string& suite, const VerifyOptions& o) {
  using Fn = CriterionResult (*)(const VerifyOptions&);
  std::vector<Fn> fns;
  if (suite == "quaternionic" || suite == "all")
    fns.insert(fns.end(), {check_quaternionic_ranks, check_w_h_intersection, check_calibration_maximum});
  if (suite == "spin7" || suite == "all") fns.insert(fns.end(), {check_spin7_spectrum, check_spin_rotation});
  if (suite == "k3xk3" || suite == "all") fns.insert(fns.end(), {check_product_classifier, check_corollary});
  if (suite == "kahler" || suite == "all") fns.push_back(check_common_11);
  if (suite == "models" || suite == "all") fns.push_back(check_models_and_golden);
  if (fns.empty()) throw Error("unknown suite: " + suite);
  std::vector<CriterionResult> out;
  for (auto fn : fns) out.push_back(fn(o));
  return out;
}

}  // namespace holorot
