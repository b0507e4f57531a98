#include "holorot/quaternionic.hpp"

#include "holorot/numerics.hpp"

#include <cmath>

namespace holorot {

namespace {

Eigen::Quaterniond unit_quaternion(int component) {
  switch (component) {
    case 0: return {1, 0, 0, 0};
    case 1: return {0, 1, 0, 0};
    case 2: return {0, 0, 1, 0};
    default: return {0, 0, 0, 1};
  }
}

Eigen::Vector4d components(const Eigen::Quaterniond& q) { return {q.w(), q.x(), q.y(), q.z()}; }

/// Left multiplication by q on H^n.
Eigen::MatrixXd left_multiplication(int n, const Eigen::Quaterniond& q) {
  Eigen::Matrix4d block;
  for (int c = 0; c < 4; ++c) block.col(c) = components(q * unit_quaternion(c));
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(4 * n, 4 * n);
  for (int p = 0; p < n; ++p) out.block<4, 4>(4 * p, 4 * p) = block;
  return out;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

KForm scaled_kahler_power(const ComplexStructure& l) {
  const int m = l.complex_dim();
  if (m < 2) throw Error("calibration functional needs complex dimension at least 2");
  return (1.0 / factorial(m - 2)) * wedge_power(kahler_form(l), m - 2);
}

}  // namespace

QuaternionicTriple::QuaternionicTriple(ComplexStructure i, ComplexStructure j, ComplexStructure k,
                                       double tol)
    : i_(std::move(i)), j_(std::move(j)), k_(std::move(k)) {
  if (i_.dim() != j_.dim() || i_.dim() != k_.dim()) throw Error("triple dimensions differ");
  if (i_.dim() % 4 != 0) throw Error("quaternionic dimension must be a multiple of 4");
  const auto& a = i_.matrix();
  const auto& b = j_.matrix();
  const auto& c = k_.matrix();
  if ((a * b - c).cwiseAbs().maxCoeff() > tol) throw Error("triple violates IJ = K");
  if ((a * b + b * a).cwiseAbs().maxCoeff() > tol || (b * c + c * b).cwiseAbs().maxCoeff() > tol ||
      (a * c + c * a).cwiseAbs().maxCoeff() > tol)
    throw Error("triple structures do not anticommute");
}

QuaternionicTriple standard_triple(int n) {
  if (n < 1) throw Error("quaternionic dimension must be at least 1");
  return QuaternionicTriple(ComplexStructure(left_multiplication(n, unit_quaternion(1))),
                            ComplexStructure(left_multiplication(n, unit_quaternion(2))),
                            ComplexStructure(left_multiplication(n, unit_quaternion(3))));
}

ComplexStructure rotate_structure(const QuaternionicTriple& t, double a, double b, double c,
                                  double tol) {
  const double len2 = a * a + b * b + c * c;
  if (std::abs(len2 - 1.0) > tol) throw Error("rotation coefficients are not a unit vector");
  return ComplexStructure(a * t.i().matrix() + b * t.j().matrix() + c * t.k().matrix(),
                          std::max(10 * tol, kStructureTol));
}

ComplexStructure rotate_structure(const QuaternionicTriple& t, const Eigen::Vector3d& abc,
                                  double tol) {
  return rotate_structure(t, abc[0], abc[1], abc[2], tol);
}

Eigen::MatrixXd sp1_action(const QuaternionicTriple& t, const Eigen::Vector4d& q) {
  if (std::abs(q.squaredNorm() - 1.0) > 1e-9) throw Error("Sp(1) element must be a unit quaternion");
  return q[0] * Eigen::MatrixXd::Identity(t.dim(), t.dim()) + q[1] * t.i().matrix() +
         q[2] * t.j().matrix() + q[3] * t.k().matrix();
}

std::array<Eigen::MatrixXd, 5> quat_projectors(const QuaternionicTriple& t) {
  const Eigen::MatrixXd ci = type_involution(t.i());
  const Eigen::MatrixXd cj = type_involution(t.j());
  const Eigen::MatrixXd ck = type_involution(t.k());
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(ci.rows(), ci.cols());
  const double norm2 = 2.0 * t.n();  // |omega|^2 on R^{4n}
  const Eigen::VectorXd wi = kahler_form(t.i()).coeffs();
  const Eigen::VectorXd wj = kahler_form(t.j()).coeffs();
  const Eigen::VectorXd wk = kahler_form(t.k()).coeffs();
  const Eigen::MatrixXd oi = wi * wi.transpose() / norm2;
  const Eigen::MatrixXd oj = wj * wj.transpose() / norm2;
  const Eigen::MatrixXd ok = wk * wk.transpose() / norm2;
  return {oi + oj + ok,
          0.25 * (id + ci + cj + ck),
          0.25 * (id + ci - cj - ck) - oi,
          0.25 * (id - ci + cj - ck) - oj,
          0.25 * (id - ci - cj + ck) - ok};
}

std::array<int, 5> quat_projector_ranks(const QuaternionicTriple& t, double cutoff) {
  const auto p = quat_projectors(t);
  std::array<int, 5> out{};
  for (std::size_t i = 0; i < 5; ++i) out[i] = projector_rank(p[i], cutoff);
  return out;
}

QuatDecomposition decompose_quat(const KForm& a, const QuaternionicTriple& t) {
  if (a.degree() != 2) throw Error("decompose_quat needs a 2-form");
  if (a.dim() != t.dim()) throw Error("decompose_quat: dimension mismatch");
  const auto p = quat_projectors(t);
  auto piece = [&](std::size_t i) { return KForm(a.dim(), 2, p[i] * a.coeffs()); };
  QuatDecomposition d{piece(0), piece(1), piece(2), piece(3), piece(4), 0.0};
  d.residual = (a - d.sum()).norm();
  return d;
}

QuaternionMatrix QuaternionMatrix::zero(int n) {
  if (n < 1) throw Error("quaternion matrix size must be positive");
  QuaternionMatrix m;
  m.n = n;
  m.entries.assign(static_cast<std::size_t>(n * n), Eigen::Quaterniond(0, 0, 0, 0));
  return m;
}

QuaternionMatrix QuaternionMatrix::real(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw Error("quaternion matrix must be square");
  QuaternionMatrix m = zero(static_cast<int>(a.rows()));
  for (int r = 0; r < m.n; ++r)
    for (int c = 0; c < m.n; ++c) m(r, c) = Eigen::Quaterniond(a(r, c), 0, 0, 0);
  return m;
}

QuaternionMatrix QuaternionMatrix::times(const Eigen::Quaterniond& q) const {
  QuaternionMatrix out = *this;
  for (auto& e : out.entries) e = e * q;
  return out;
}

KForm psi_generator(const QuaternionMatrix& a, QuatChannel channel) {
  if (a.n < 1 || a.entries.size() != static_cast<std::size_t>(a.n * a.n))
    throw Error("psi_generator: not an n x n quaternion matrix");
  for (const auto& e : a.entries)
    if (!components(e).allFinite()) throw Error("psi_generator: non-finite quaternion entry");
  const int dim = 4 * a.n;
  const int ch = static_cast<int>(channel);
  Eigen::MatrixXd bilinear(dim, dim);
  for (int p = 0; p < dim; ++p)
    for (int q = 0; q < dim; ++q) {
      const Eigen::Quaterniond v =
          unit_quaternion(p % 4).conjugate() * a(p / 4, q / 4) * unit_quaternion(q % 4);
      bilinear(p, q) = components(v)[ch];
    }
  const double scale = std::max(1.0, bilinear.cwiseAbs().maxCoeff());
  if ((bilinear + bilinear.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw Error("psi_generator: the requested channel is not alternating for this matrix");
  return two_form_from_matrix(bilinear);
}

double hyperholomorphic_residual(const MatrixValuedForm& f, const QuaternionicTriple& t) {
  if (f.degree() != 2 || f.dim() != t.dim()) throw Error("hyperholomorphic check: shape mismatch");
  const auto p = quat_projectors(t);
  return (f - f.apply(p[static_cast<std::size_t>(QuatSummand::WH)])).killing_norm();
}

bool hyperholomorphic_check(const MatrixValuedForm& f, const QuaternionicTriple& t, double tol) {
  return hyperholomorphic_residual(f, t) < tol * std::max(1.0, f.killing_norm());
}

double pointwise_square_pairing(const KForm& alpha, const ComplexStructure& l) {
  if (alpha.degree() != 2 || alpha.dim() != l.dim()) throw Error("pointwise pairing: shape mismatch");
  return top_pairing(wedge(alpha, alpha), scaled_kahler_power(l));
}

double calibration_functional(const MatrixValuedForm& f, const ComplexStructure& l) {
  if (f.degree() != 2 || f.dim() != l.dim()) throw Error("calibration functional: shape mismatch");
  return kChernWeil * top_pairing(trace_wedge(f, f), scaled_kahler_power(l));
}

double calibration_functional(const MatrixValuedForm& f, const ComplexStructure& l,
                              const QuaternionicTriple& t) {
  if (l.dim() != t.dim()) throw Error("calibration functional: structure outside the triple's space");
  return calibration_functional(f, l);
}

double calibration_by_norms(const MatrixValuedForm& f, const ComplexStructure& l) {
  const int m = l.complex_dim();
  const double prim = f.apply(projector_11_prim(l)).killing_norm_sq();
  const double part20 = f.apply(projector_20(l)).killing_norm_sq();
  const double contraction = lefschetz_contract(f, l).squaredNorm() / m;
  return kChernWeil * (prim - part20 - (m - 1) * contraction);
}

CalibrationSweep::CalibrationSweep(const MatrixValuedForm& f) : trace_square_(trace_wedge(f, f)) {
  if (f.degree() != 2) throw Error("calibration sweep needs a 2-form");
}

double CalibrationSweep::operator()(const ComplexStructure& l) const {
  if (l.dim() != trace_square_.dim()) throw Error("calibration sweep: dimension mismatch");
  return kChernWeil * top_pairing(trace_square_, scaled_kahler_power(l));
}

CalibrationReport calibration_sphere_scan(const MatrixValuedForm& f, const QuaternionicTriple& t,
                                          std::size_t samples, const CalibrationOptions& options) {
  if (f.dim() != t.dim() || f.degree() != 2) throw Error("calibration_sphere_scan: shape mismatch");
  const HymResult base = hym_check(f, t.i(), options.hym_tol);
  if (!base.is_hym) throw Error("calibration_sphere_scan: curvature is not HYM with respect to I");
  if (std::abs(base.lambda) > base.tolerance)
    throw Error("calibration_sphere_scan: HYM constant must vanish (lambda = 0)");

  std::vector<Eigen::Vector3d> points{Eigen::Vector3d::UnitX(), -Eigen::Vector3d::UnitX()};
  for (const auto& p : fibonacci_sphere(samples)) points.emplace_back(p[2], p[0], p[1]);

  const CalibrationSweep sweep(f);
  CalibrationReport rep;
  rep.value_at_i = sweep(t.i());
  const double eq_tol = options.equality_tol * std::max(1.0, std::abs(rep.value_at_i));

  rep.samples = parallel_map<SphereSample>(points.size(), [&](std::size_t idx) {
    SphereSample s;
    s.abc = points[idx];
    const ComplexStructure l = rotate_structure(t, s.abc);
    s.value = sweep(l);
    s.hym = hym_check(f, l, options.hym_tol).is_hym;
    s.equality = std::abs(s.value - rep.value_at_i) < eq_tol;
    return s;
  });

  rep.max_value = rep.value_at_i;
  rep.argmax = Eigen::Vector3d::UnitX();
  bool bounded = true;
  bool matches = true;
  for (const auto& s : rep.samples) {
    if (s.value > rep.max_value) {
      rep.max_value = s.value;
      rep.argmax = s.abc;
    }
    if (s.value > rep.value_at_i + eq_tol) bounded = false;
    if (s.equality != s.hym) matches = false;
    if (s.equality) rep.equality_set.push_back(s.abc);
  }
  rep.max_at_i = bounded;
  rep.equality_matches_hym = matches;
  return rep;
}

Eigen::MatrixXd w_h_basis(const QuaternionicTriple& t) {
  return projector_range(quat_projectors(t)[static_cast<std::size_t>(QuatSummand::WH)]);
}

}  // namespace holorot
