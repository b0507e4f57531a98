#include "holorot/models.hpp"

#include <complex>

namespace holorot {

namespace {

using cd = std::complex<double>;

MatrixValuedForm scalar_curvature(const KForm& omega, double lambda, int r) {
  return MatrixValuedForm::tensor(omega, cd(0.0, lambda) * Eigen::MatrixXcd::Identity(r, r));
}

// Matrix of x -> x q on one quaternion block (w, x, y, z ordering).
Eigen::Matrix4d right_multiplication(const Eigen::Quaterniond& q) {
  Eigen::Matrix4d m;
  for (int c = 0; c < 4; ++c) {
    Eigen::Vector4d e = Eigen::Vector4d::Zero();
    e[c] = 1.0;
    const Eigen::Quaterniond x(e[0], e[1], e[2], e[3]);
    const Eigen::Quaterniond y = x * q;
    m.col(c) << y.w(), y.x(), y.y(), y.z();
  }
  return m;
}

// sum_ab a_ab dx_a ^ dx_{b+4}.
KForm mixed_form(const Eigen::Matrix4d& a) {
  KForm out(8, 2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (a(i, j) != 0.0) out += KForm::monomial(8, {i + 1, j + 5}, a(i, j));
  return out;
}

}  // namespace

std::string to_string(AmbientKind kind) {
  switch (kind) {
    case AmbientKind::Complex: return "complex";
    case AmbientKind::Quaternionic: return "quaternionic";
    case AmbientKind::Spin7: return "spin7";
    case AmbientKind::Product: return "k3xk3";
  }
  return "complex";
}

AmbientKind ambient_kind_from_string(const std::string& s) {
  for (auto k : {AmbientKind::Complex, AmbientKind::Quaternionic, AmbientKind::Spin7, AmbientKind::Product})
    if (to_string(k) == s) return k;
  throw Error("unknown ambient kind: " + s);
}

Eigen::MatrixXcd random_anti_hermitian(int r, Rng& rng, bool trace_free) {
  Eigen::MatrixXcd g(r, r);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(a, b) = cd(re, im);
    }
  Eigen::MatrixXcd x = 0.5 * (g - g.adjoint());
  for (int a = 0; a < r; ++a) x(a, a) = cd(0.0, rng.normal());
  if (trace_free) x -= (x.trace() / static_cast<double>(r)) * Eigen::MatrixXcd::Identity(r, r);
  return x;
}

MatrixValuedForm random_matrix_form(int dim, int r, Rng& rng, bool trace_free) {
  const std::size_t n = binomial(dim, 2);
  std::vector<Eigen::MatrixXcd> coeffs;
  coeffs.reserve(n);
  for (std::size_t s = 0; s < n; ++s) coeffs.push_back(random_anti_hermitian(r, rng, trace_free));
  return MatrixValuedForm(dim, 2, r, std::move(coeffs));
}

CurvatureModel random_hym(const ComplexStructure& j, int r, std::uint64_t seed, double lambda) {
  Rng rng(seed);
  MatrixValuedForm f = random_matrix_form(j.dim(), r, rng).apply(projector_11_prim(j));
  if (lambda != 0.0) f += scalar_curvature(kahler_form(j), lambda / j.complex_dim(), r);
  return {f, Ambient{j.dim(), AmbientKind::Complex, 0}, seed, "random_hym"};
}

CurvatureModel random_hym(const QuaternionicTriple& t, int r, std::uint64_t seed) {
  CurvatureModel m = random_hym(t.i(), r, seed);
  m.ambient = Ambient{t.dim(), AmbientKind::Quaternionic, t.n()};
  return m;
}

CurvatureModel random_hyperholomorphic(const QuaternionicTriple& t, int r, std::uint64_t seed) {
  Rng rng(seed);
  const auto proj = quat_projectors(t);
  const MatrixValuedForm f =
      random_matrix_form(t.dim(), r, rng).apply(proj[static_cast<std::size_t>(QuatSummand::WH)]);
  return {f, Ambient{t.dim(), AmbientKind::Quaternionic, t.n()}, seed, "random_hyperholomorphic"};
}

CurvatureModel random_spinstanton(const SU4Structure& su4, int r, std::uint64_t seed, bool hym) {
  Rng rng(seed);
  // Lambda^2_21 contains the primitive (1,1) forms of a compatible I.
  const Eigen::MatrixXd proj = hym ? Eigen::MatrixXd(projector_11_prim(su4.i())) : projector_21();
  const MatrixValuedForm f = random_matrix_form(8, r, rng, true).apply(proj);
  return {f, Ambient{8, AmbientKind::Spin7, 0}, seed, hym ? "random_spinstanton_hym" : "random_spinstanton"};
}

CurvatureModel random_hyperkahler_spinstanton(int r, std::uint64_t seed) {
  Rng rng(seed);
  const auto proj = quat_projectors(standard_triple(2));
  const MatrixValuedForm f =
      random_matrix_form(8, r, rng, true).apply(proj[static_cast<std::size_t>(QuatSummand::WH)]);
  return {f, Ambient{8, AmbientKind::Spin7, 0}, seed, "random_hyperkahler_spinstanton"};
}

CurvatureModel random_product(Rotability target, int r, std::uint64_t seed, int variant) {
  Rng rng(seed);
  const ProductStructure p = ProductStructure::standard();
  const auto proj = product_projectors(p);
  MatrixValuedForm f = random_matrix_form(8, r, rng).apply(proj[1]) + random_matrix_form(8, r, rng).apply(proj[3]);
  const KForm wi = embed_factor_form(kahler_form(p.left.i()), 0);
  const KForm wip = embed_factor_form(kahler_form(p.right.i()), 4);
  const auto nonzero_lambda = [&] { return (rng.uniform() < 0.5 ? -1.0 : 1.0) * (0.5 + rng.uniform()); };
  switch (target) {
    case Rotability::FullProduct:
      break;
    case Rotability::LeftSphere:
      f += scalar_curvature(wip, nonzero_lambda(), r);
      break;
    case Rotability::RightSphere:
      f += scalar_curvature(wi, nonzero_lambda(), r);
      break;
    case Rotability::DiagonalSphere: {
      // Mixed forms x^T A y' with A commuting with I, J, K stay (1,1) for
      // every diagonal structure L + L.
      const int terms = 1 + static_cast<int>(rng.uniform() * 3.0);
      for (int t = 0; t < terms; ++t) {
        const Eigen::Vector4d q = rng.normal_vector(4);
        const KForm a = mixed_form(right_multiplication(Eigen::Quaterniond(q[0], q[1], q[2], q[3])));
        f += MatrixValuedForm::tensor(a, random_anti_hermitian(r, rng));
      }
      break;
    }
    case Rotability::NotRotable:
      if (variant == 0) {
        f += random_matrix_form(8, r, rng).apply(proj[4]).apply(projector_11(p.reference()));
      } else {
        const double l = nonzero_lambda();
        const double lp = nonzero_lambda();
        f += scalar_curvature(wi, l, r) + scalar_curvature(wip, lp, r);
      }
      break;
  }
  return {f, Ambient{8, AmbientKind::Product, 0}, seed, "random_product:" + to_string(target)};
}

}  // namespace holorot
