#include "holorot/k3product.hpp"

#include "holorot/chern.hpp"
#include "holorot/numerics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace holorot {

namespace {

constexpr Mask kLeftMask = 0x0F;
constexpr Mask kRightMask = 0xF0;

// 28 x 6 matrix placing Lambda^2(R^4) on the coordinates offset+1..offset+4.
Eigen::MatrixXd factor_embedding(int offset) {
  const auto& small = basis_masks(4, 2);
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(28, 6);
  for (std::size_t s = 0; s < small.size(); ++s)
    e(static_cast<Eigen::Index>(lex_position(8, small[s] << offset)), static_cast<Eigen::Index>(s)) = 1.0;
  return e;
}

Eigen::MatrixXd mixed_projector() {
  const auto& masks = basis_masks(8, 2);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(28, 28);
  for (std::size_t s = 0; s < masks.size(); ++s)
    if ((masks[s] & kLeftMask) != 0 && (masks[s] & kRightMask) != 0)
      d(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s)) = 1.0;
  return d;
}

KForm restrict_factor(const KForm& a, int offset) {
  const auto& small = basis_masks(4, 2);
  KForm out(4, 2);
  for (std::size_t s = 0; s < small.size(); ++s)
    out.coeffs()[static_cast<Eigen::Index>(s)] = a.coefficient(small[s] << offset);
  return out;
}

void require_r8(const MatrixValuedForm& f) {
  if (f.dim() != 8 || f.degree() != 2) throw Error("product analysis needs a curvature 2-form on R^8");
}

double scale_of(const MatrixValuedForm& f) { return std::max(1.0, f.killing_norm()); }

// Kahler forms of the three structures on a factor, embedded in R^8.
std::array<KForm, 3> factor_kahler_forms(const QuaternionicTriple& t, int offset) {
  return {embed_factor_form(kahler_form(t.i()), offset), embed_factor_form(kahler_form(t.j()), offset),
          embed_factor_form(kahler_form(t.k()), offset)};
}

KForm combination(const std::array<KForm, 3>& w, const Eigen::Vector3d& abc) {
  return abc[0] * w[0] + abc[1] * w[1] + abc[2] * w[2];
}

// (1/8pi^2) top(Tr(F ^ F) ^ x).
double trace_pairing(const KForm& trace_square, const KForm& x) {
  return kChernWeil * top_pairing(trace_square, x);
}

struct ScalarPart {
  double lambda = 0.0;
  double residual = 0.0;
};

// Fits f = i lambda omega (x) Id.
ScalarPart scalar_part(const MatrixValuedForm& f, const KForm& omega) {
  const int r = f.rank();
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(r, r);
  for (std::size_t s = 0; s < omega.size(); ++s) {
    const double w = omega.coeffs()[static_cast<Eigen::Index>(s)];
    if (w != 0.0) x += w * f.coeff(s);
  }
  x /= omega.coeffs().squaredNorm();
  ScalarPart out;
  out.lambda = x.trace().imag() / static_cast<double>(r);
  const MatrixValuedForm fit = MatrixValuedForm::tensor(
      omega, std::complex<double>(0.0, out.lambda) * Eigen::MatrixXcd::Identity(r, r));
  out.residual = (f - fit).killing_norm();
  return out;
}

}  // namespace

ProductStructure ProductStructure::standard() { return {standard_triple(1), standard_triple(1)}; }

ComplexStructure ProductStructure::combine(const ComplexStructure& l, const ComplexStructure& lp) const {
  if (l.dim() != 4 || lp.dim() != 4) throw Error("factor structures must act on R^4");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(8, 8);
  m.topLeftCorner(4, 4) = l.matrix();
  m.bottomRightCorner(4, 4) = lp.matrix();
  return ComplexStructure(m, 1e-9);
}

ComplexStructure ProductStructure::combine(const Eigen::Vector3d& abc, const Eigen::Vector3d& abc_prime) const {
  return combine(rotate_structure(left, abc), rotate_structure(right, abc_prime));
}

KForm embed_factor_form(const KForm& a, int offset) {
  if (a.dim() != 4 || a.degree() != 2) throw Error("expected a 2-form on R^4");
  if (offset != 0 && offset != 4) throw Error("factor offset must be 0 or 4");
  return KForm(8, 2, factor_embedding(offset) * a.coeffs());
}

std::array<Eigen::MatrixXd, 5> product_projectors(const ProductStructure& p) {
  const auto left = quat_projectors(p.left);
  const auto right = quat_projectors(p.right);
  const Eigen::MatrixXd el = factor_embedding(0);
  const Eigen::MatrixXd er = factor_embedding(4);
  const auto span = static_cast<std::size_t>(QuatSummand::Sp2Span);
  const auto wh = static_cast<std::size_t>(QuatSummand::WH);
  // On R^4 the primitive (1,1) forms of I are exactly W_H.
  return {el * left[span] * el.transpose(), el * left[wh] * el.transpose(), er * right[span] * er.transpose(),
          er * right[wh] * er.transpose(), mixed_projector()};
}

FiveWayDecomposition decompose_product(const KForm& a, const ProductStructure& p) {
  if (a.dim() != 8 || a.degree() != 2) throw Error("decompose_product needs a 2-form on R^8");
  const auto proj = product_projectors(p);
  FiveWayDecomposition out{KForm(8, 2, proj[0] * a.coeffs()), KForm(8, 2, proj[1] * a.coeffs()),
                           KForm(8, 2, proj[2] * a.coeffs()), KForm(8, 2, proj[3] * a.coeffs()),
                           KForm(8, 2, proj[4] * a.coeffs()), 0.0};
  out.residual = (out.sum() - a).norm();
  return out;
}

FiveWayCurvature decompose_product(const MatrixValuedForm& f, const ProductStructure& p) {
  require_r8(f);
  const auto proj = product_projectors(p);
  return {f.apply(proj[0]), f.apply(proj[1]), f.apply(proj[2]), f.apply(proj[3]), f.apply(proj[4])};
}

DSplit d_split(const KForm& a, const ComplexStructure& l, const ComplexStructure& lp, double tol) {
  if (a.dim() != 8 || a.degree() != 2) throw Error("d_split needs a 2-form on R^8");
  const Eigen::VectorXd off = a.coeffs() - mixed_projector() * a.coeffs();
  if (off.norm() > tol * std::max(1.0, a.norm())) throw Error("form is not in the mixed summand D");
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(8, 8);
  g.topLeftCorner(4, 4) = l.matrix();
  g.bottomRightCorner(4, 4) = lp.matrix();
  const KForm c = pull_back(a, g);
  return {0.5 * (a - c), 0.5 * (a + c)};
}

double lemma_ll_value(const KForm& a, const ComplexStructure& l, const ComplexStructure& lp, double tol) {
  d_split(a, l, lp, tol);  // validates membership in D
  const KForm wl = embed_factor_form(kahler_form(l), 0);
  const KForm wr = embed_factor_form(kahler_form(lp), 4);
  return -top_pairing(wedge(a, a), wedge(wl, wr));
}

PsiMatrix signed_diagonalize(const Eigen::Matrix3d& m) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d u = svd.matrixU();
  Eigen::Matrix3d v = svd.matrixV();
  Eigen::Vector3d s = svd.singularValues();
  if (u.determinant() * v.determinant() < 0.0) {
    v.col(2) = -v.col(2);
    s[2] = -s[2];
  }
  if (u.determinant() < 0.0) {
    u.col(2) = -u.col(2);
    v.col(2) = -v.col(2);
  }
  PsiMatrix out;
  out.m = m;
  out.sv = s;
  out.rot_l = u;
  out.rot_r = v;
  return out;
}

double psi_value(const MatrixValuedForm& f5, const ProductStructure& p, const Eigen::Vector3d& abc,
                 const Eigen::Vector3d& abc_prime) {
  require_r8(f5);
  const KForm wl = combination(factor_kahler_forms(p.left, 0), abc);
  const KForm wr = combination(factor_kahler_forms(p.right, 4), abc_prime);
  return trace_pairing(trace_wedge(f5, f5), wedge(wl, wr));
}

PsiMatrix psi_matrix(const MatrixValuedForm& f5, const ProductStructure& p, double tol) {
  require_r8(f5);
  const MatrixValuedForm off = f5 - f5.apply(mixed_projector());
  if (off.killing_norm() > tol * scale_of(f5)) throw Error("F5 is not in the mixed summand D");
  const KForm square = trace_wedge(f5, f5);
  const auto wl = factor_kahler_forms(p.left, 0);
  const auto wr = factor_kahler_forms(p.right, 4);
  Eigen::Matrix3d m;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      m(a, b) = trace_pairing(square, wedge(wl[static_cast<std::size_t>(a)], wr[static_cast<std::size_t>(b)]));
  return signed_diagonalize(m);
}

std::string to_string(Rotability kind) {
  switch (kind) {
    case Rotability::FullProduct: return "FullProduct";
    case Rotability::LeftSphere: return "LeftSphere";
    case Rotability::RightSphere: return "RightSphere";
    case Rotability::DiagonalSphere: return "DiagonalSphere";
    case Rotability::NotRotable: return "NotRotable";
  }
  return "NotRotable";
}

Rotability rotability_from_string(const std::string& s) {
  for (auto k : {Rotability::FullProduct, Rotability::LeftSphere, Rotability::RightSphere,
                 Rotability::DiagonalSphere, Rotability::NotRotable})
    if (to_string(k) == s) return k;
  throw Error("unknown rotability verdict: " + s);
}

RotabilityVerdict classify(const MatrixValuedForm& f, const ProductStructure& p, const ClassifyOptions& options) {
  require_r8(f);
  const double scale = scale_of(f);
  const double tol = options.tol * scale;
  RotabilityVerdict v;
  auto& w = v.witness;

  const HymResult hym = hym_check(f, p.reference(), options.tol);
  w.hym = hym.is_hym;
  if (!hym.is_hym && !options.allow_non_hym) throw Error("curvature is not HYM with respect to I + I'");

  const FiveWayCurvature parts = decompose_product(f, p);
  const ScalarPart left = scalar_part(parts.f1, embed_factor_form(kahler_form(p.left.i()), 0));
  const ScalarPart right = scalar_part(parts.f3, embed_factor_form(kahler_form(p.right.i()), 4));
  w.lambda = left.lambda;
  w.lambda_prime = right.lambda;
  w.scalar_residual_left = left.residual;
  w.scalar_residual_right = right.residual;
  w.f5_norm = parts.f5.killing_norm();
  const PsiMatrix psi = psi_matrix(parts.f5, p, options.tol);
  w.m = psi.sv;

  const bool y = w.f5_norm > tol;
  if (y) v.basis_change = std::make_pair(psi.rot_l, psi.rot_r);
  const double m_tol = options.tol * std::max(1.0, std::abs(psi.sv[0]));
  const bool all_equal = std::abs(psi.sv[0] - psi.sv[2]) <= m_tol;
  if (y && !all_equal && std::abs(psi.sv[0] - psi.sv[1]) <= m_tol)
    w.note = "m1 = m2 > m3: circle family, only possible without HYM";

  if (!hym.is_hym) {
    if (w.note.empty()) w.note = "not HYM with respect to I + I'";
    v.kind = Rotability::NotRotable;
    return v;
  }
  if (left.residual > tol || right.residual > tol) {
    w.note = "f1 or f3 is not a scalar multiple of the Kahler form";
    v.kind = Rotability::NotRotable;
    return v;
  }
  const bool l0 = std::abs(w.lambda) <= tol;
  const bool r0 = std::abs(w.lambda_prime) <= tol;
  if (!y) {
    if (l0 && r0) v.kind = Rotability::FullProduct;
    else if (l0) v.kind = Rotability::LeftSphere;
    else if (r0) v.kind = Rotability::RightSphere;
    else v.kind = Rotability::NotRotable;
  } else {
    v.kind = (l0 && r0 && all_equal) ? Rotability::DiagonalSphere : Rotability::NotRotable;
  }
  return v;
}

bool in_verdict_family(const RotabilityVerdict& v, const Eigen::Vector3d& abc, const Eigen::Vector3d& abc_prime,
                       double tol) {
  if (!v.witness.hym) return false;
  Eigen::Matrix3d rl = Eigen::Matrix3d::Identity();
  Eigen::Matrix3d rr = Eigen::Matrix3d::Identity();
  if (v.basis_change) {
    rl = v.basis_change->first;
    rr = v.basis_change->second;
  }
  const Eigen::Vector3d x = rl.transpose() * abc;
  const Eigen::Vector3d y = rr.transpose() * abc_prime;
  const auto pole = [&](const Eigen::Vector3d& u) { return std::abs(std::abs(u[0]) - 1.0) <= tol; };
  switch (v.kind) {
    case Rotability::FullProduct: return true;
    case Rotability::LeftSphere: return pole(abc_prime);
    case Rotability::RightSphere: return pole(abc);
    case Rotability::DiagonalSphere: return (x - y).norm() <= tol;
    case Rotability::NotRotable:
      if (!pole(x) || !pole(y)) return false;
      return !v.basis_change || (x - y).norm() <= tol;
  }
  return false;
}

ChernData chern_data(const MatrixValuedForm& f, const ProductStructure& p) {
  require_r8(f);
  ChernData out;
  const FiveWayCurvature parts = decompose_product(f, p);
  const KForm wi = kahler_form(p.left.i());
  const KForm wip = kahler_form(p.right.i());
  out.lambda = scalar_part(parts.f1, embed_factor_form(wi, 0)).lambda;
  out.lambda_prime = scalar_part(parts.f3, embed_factor_form(wip, 4)).lambda;
  const ComplexStructure ref = p.reference();
  out.lambda_tilde = lefschetz_contract(f, ref).trace().imag() /
                     (static_cast<double>(f.rank()) * static_cast<double>(ref.complex_dim()));
  const KForm c1 = chern_c1_form(f);
  out.c1_left = restrict_factor(c1, 0);
  out.c1_right = restrict_factor(c1, 4);
  out.lambda_c1 = top_pairing(out.c1_left, wi) / top_pairing(wi, wi);
  out.lambda_prime_c1 = top_pairing(out.c1_right, wip) / top_pairing(wip, wip);
  const KForm c2 = chern_c2_form(f);
  const auto wl = factor_kahler_forms(p.left, 0);
  const auto wr = factor_kahler_forms(p.right, 4);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      out.c2_pairing(a, b) = top_pairing(c2, wedge(wl[static_cast<std::size_t>(a)], wr[static_cast<std::size_t>(b)]));
  return out;
}

CorollaryResult corollary_check(const MatrixValuedForm& f, const ProductStructure& p, double tol) {
  require_r8(f);
  const double scale = scale_of(f);
  if (!hym_check(f, p.reference(), tol).is_hym) throw Error("curvature is not HYM with respect to I + I'");
  const FiveWayCurvature parts = decompose_product(f, p);
  const ScalarPart left = scalar_part(parts.f1, embed_factor_form(kahler_form(p.left.i()), 0));
  const ScalarPart right = scalar_part(parts.f3, embed_factor_form(kahler_form(p.right.i()), 4));
  if (std::abs(left.lambda) > tol * scale || std::abs(right.lambda) > tol * scale)
    throw Error("corollary needs lambda = lambda' = 0");

  const PsiMatrix psi = psi_matrix(parts.f5, p, tol);
  // Rotate (J', K') so that the J, K block of Psi becomes symmetric.
  const Eigen::Matrix2d block = psi.m.bottomRightCorner(2, 2);
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(block, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix2d fix = Eigen::Matrix2d::Identity();
  fix(1, 1) = (svd.matrixU() * svd.matrixV().transpose()).determinant() < 0.0 ? -1.0 : 1.0;
  const Eigen::Matrix2d q = svd.matrixU() * fix * svd.matrixV().transpose();
  const Eigen::Matrix2d rot = q.transpose();

  const auto wl = factor_kahler_forms(p.left, 0);
  const auto wr = factor_kahler_forms(p.right, 4);
  const KForm wjp = rot(0, 0) * wr[1] + rot(1, 0) * wr[2];
  const KForm wkp = rot(0, 1) * wr[1] + rot(1, 1) * wr[2];

  const KForm square = trace_wedge(f, f);
  const KForm wcal = wl[0] + wr[0];
  const KForm re_big = wl[1] + wjp;
  const KForm im_big = wl[2] + wkp;
  CorollaryResult out;
  out.lhs = 2.0 * trace_pairing(square, wedge(wcal, wcal));
  // Omega ^ conj(Omega) = Re^2 + Im^2 for Omega = Re + i Im.
  out.rhs = trace_pairing(square, wedge(re_big, re_big) + wedge(im_big, im_big));
  out.factor_terms = trace_pairing(square, wedge(wl[0], wl[0]) + wedge(wr[0], wr[0]));
  out.identity_gap = std::abs(out.rhs - 2.0 * out.factor_terms - 2.0 * (psi.sv[1] + psi.sv[2]));
  out.rotable = std::abs(out.lhs - out.rhs) < tol * std::max(1.0, std::abs(out.lhs) + std::abs(out.rhs));
  return out;
}

BogomolovResult bogomolov_check(const MatrixValuedForm& f, const ProductStructure& p, double tol) {
  require_r8(f);
  const double scale = scale_of(f);
  const ChernData chern = chern_data(f, p);
  if (std::abs(chern.lambda_c1) > tol * scale || std::abs(chern.lambda_prime_c1) > tol * scale)
    throw Error("c_1 components are not primitive");
  const FiveWayCurvature parts = decompose_product(f, p);
  const KForm wcal = embed_factor_form(kahler_form(p.left.i()), 0) + embed_factor_form(kahler_form(p.right.i()), 4);
  BogomolovResult out;
  out.value = trace_pairing(trace_wedge(f, f), wedge(wcal, wcal));
  out.f5_part = trace_pairing(trace_wedge(parts.f5, parts.f5), wedge(wcal, wcal));
  if (out.value < -tol * scale) throw Error("Bogomolov-type inequality violated");
  out.tight = parts.f5.killing_norm() < tol * scale;
  return out;
}

FamilyGridReport family_grid_check(const MatrixValuedForm& f, const ProductStructure& p,
                                   const RotabilityVerdict& verdict, std::size_t grid, double tol) {
  require_r8(f);
  std::vector<Eigen::Vector3d> base{Eigen::Vector3d::UnitX(), -Eigen::Vector3d::UnitX()};
  for (const auto& q : fibonacci_sphere(grid)) base.emplace_back(q[2], q[0], q[1]);
  Eigen::Matrix3d rl = Eigen::Matrix3d::Identity();
  Eigen::Matrix3d rr = Eigen::Matrix3d::Identity();
  if (verdict.basis_change) {
    rl = verdict.basis_change->first;
    rr = verdict.basis_change->second;
  }
  const FiveWayCurvature parts = decompose_product(f, p);
  const KForm square5 = trace_wedge(parts.f5, parts.f5);
  const auto wl = factor_kahler_forms(p.left, 0);
  const auto wr = factor_kahler_forms(p.right, 4);

  struct Cell {
    bool family = false;
    bool hym = false;
    double psi = 0.0;
  };
  const std::size_t n = base.size();
  const auto cells = parallel_map<Cell>(n * n, [&](std::size_t idx) {
    const Eigen::Vector3d abc = rl * base[idx / n];
    const Eigen::Vector3d abcp = rr * base[idx % n];
    Cell c;
    c.family = in_verdict_family(verdict, abc, abcp, 1e-9);
    c.hym = hym_check(f, p.combine(abc, abcp), tol).is_hym;
    c.psi = trace_pairing(square5, wedge(combination(wl, abc), combination(wr, abcp)));
    return c;
  });

  FamilyGridReport rep;
  rep.points = cells.size();
  rep.psi_reference = trace_pairing(square5, wedge(wl[0], wr[0]));
  rep.psi_grid_max = -std::numeric_limits<double>::infinity();
  for (const auto& c : cells) {
    if (c.family) ++rep.family_points;
    if (c.hym) ++rep.hym_points;
    if (c.family != c.hym) ++rep.mismatches;
    rep.psi_grid_max = std::max(rep.psi_grid_max, c.psi);
  }
  rep.psi_max_at_reference = rep.psi_grid_max <= rep.psi_reference + 1e-12 * std::max(1.0, std::abs(rep.psi_reference));
  return rep;
}

}  // namespace holorot
