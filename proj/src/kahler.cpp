#include "holorot/kahler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace holorot {

namespace {

std::vector<int> mask_indices(Mask s) {
  std::vector<int> out;
  while (s) {
    out.push_back(std::countr_zero(s));
    s &= s - 1;
  }
  return out;
}

}  // namespace

ComplexStructure::ComplexStructure(Eigen::MatrixXd matrix, double tol) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw Error("complex structure must be square");
  if (matrix_.rows() == 0 || matrix_.rows() % 2 != 0)
    throw Error("complex structure needs an even positive dimension");
  if (matrix_.rows() > kMaxDim) throw Error("complex structure dimension too large");
  const auto id = Eigen::MatrixXd::Identity(matrix_.rows(), matrix_.cols());
  if ((matrix_.transpose() * matrix_ - id).cwiseAbs().maxCoeff() > tol)
    throw Error("complex structure is not orthogonal");
  if ((matrix_ * matrix_ + id).cwiseAbs().maxCoeff() > tol)
    throw Error("complex structure does not square to -Id");
}

ComplexStructure ComplexStructure::standard(int dim) {
  if (dim <= 0 || dim % 2 != 0) throw Error("standard structure needs an even dimension");
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; i += 2) {
    j(i + 1, i) = 1.0;
    j(i, i + 1) = -1.0;
  }
  return ComplexStructure(j);
}

ComplexStructure ComplexStructure::operator-() const { return ComplexStructure(-matrix_); }

ComplexStructure ComplexStructure::conjugated(const Eigen::MatrixXd& g) const {
  return ComplexStructure(g * matrix_ * g.transpose(), 1e-9);
}

Eigen::MatrixXd two_form_matrix(const KForm& a) {
  if (a.degree() != 2) throw Error("expected a 2-form");
  const int m = a.dim();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
  const auto& masks = basis_masks(m, 2);
  for (std::size_t p = 0; p < masks.size(); ++p) {
    const auto idx = mask_indices(masks[p]);
    const double c = a.coeffs()[static_cast<Eigen::Index>(p)];
    out(idx[0], idx[1]) = c;
    out(idx[1], idx[0]) = -c;
  }
  return out;
}

KForm two_form_from_matrix(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw Error("expected a square matrix");
  const int m = static_cast<int>(a.rows());
  KForm out(m, 2);
  const auto& masks = basis_masks(m, 2);
  for (std::size_t p = 0; p < masks.size(); ++p) {
    const auto idx = mask_indices(masks[p]);
    out.coeffs()[static_cast<Eigen::Index>(p)] = 0.5 * (a(idx[0], idx[1]) - a(idx[1], idx[0]));
  }
  return out;
}

KForm kahler_form(const ComplexStructure& j) {
  // omega(e_i, e_j) = <J e_i, e_j> = J(j, i).
  return two_form_from_matrix(j.matrix().transpose());
}

KForm pull_back(const KForm& a, const Eigen::MatrixXd& g) {
  const int m = a.dim();
  if (g.rows() != m || g.cols() != m) throw Error("pull_back: matrix size does not match form");
  if (a.degree() == 0) return a;
  if (a.degree() == 2) return two_form_from_matrix(g.transpose() * two_form_matrix(a) * g);
  const int k = a.degree();
  const auto& masks = basis_masks(m, k);
  KForm out(m, k);
  Eigen::MatrixXd minor(k, k);
  for (std::size_t t = 0; t < masks.size(); ++t) {
    const double ct = a.coeffs()[static_cast<Eigen::Index>(t)];
    if (ct == 0.0) continue;
    const auto rows = mask_indices(masks[t]);
    for (std::size_t s = 0; s < masks.size(); ++s) {
      const auto cols = mask_indices(masks[s]);
      for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) minor(r, c) = g(rows[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]);
      out.coeffs()[static_cast<Eigen::Index>(s)] += ct * minor.determinant();
    }
  }
  return out;
}

Eigen::MatrixXd pull_back_operator(const Eigen::MatrixXd& g, int degree) {
  const int m = static_cast<int>(g.rows());
  return operator_matrix(m, degree, [&](const KForm& e) { return pull_back(e, g); });
}

Eigen::MatrixXd type_involution(const ComplexStructure& j) { return pull_back_operator(j.matrix(), 2); }

Eigen::MatrixXd projector_11(const ComplexStructure& j) {
  const Eigen::MatrixXd c = type_involution(j);
  return 0.5 * (Eigen::MatrixXd::Identity(c.rows(), c.cols()) + c);
}

Eigen::MatrixXd projector_20(const ComplexStructure& j) {
  const Eigen::MatrixXd c = type_involution(j);
  return 0.5 * (Eigen::MatrixXd::Identity(c.rows(), c.cols()) - c);
}

Eigen::MatrixXd projector_11_prim(const ComplexStructure& j) {
  const Eigen::VectorXd w = kahler_form(j).coeffs();
  return projector_11(j) - w * w.transpose() / static_cast<double>(j.complex_dim());
}

TypeSplit type_split(const KForm& a, const ComplexStructure& j) {
  if (a.degree() != 2) throw Error("type_split needs a 2-form");
  if (a.dim() != j.dim()) throw Error("type_split: dimension mismatch");
  const KForm omega = kahler_form(j);
  const KForm c = pull_back(a, j.matrix());
  const KForm part11 = 0.5 * (a + c);
  const KForm part20 = 0.5 * (a - c);
  const double trace = inner(a, omega) / static_cast<double>(j.complex_dim());
  return TypeSplit{part11 - trace * omega, trace, part20, omega};
}

double lefschetz_contract(const KForm& a, const ComplexStructure& j) {
  if (a.degree() != 2) throw Error("contraction needs a 2-form");
  return inner(a, kahler_form(j));
}

Eigen::MatrixXcd lefschetz_contract(const MatrixValuedForm& f, const ComplexStructure& j) {
  if (f.degree() != 2) throw Error("contraction needs a 2-form");
  if (f.dim() != j.dim()) throw Error("contraction: dimension mismatch");
  const KForm omega = kahler_form(j);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(f.rank(), f.rank());
  for (std::size_t s = 0; s < omega.size(); ++s) {
    const double w = omega.coeffs()[static_cast<Eigen::Index>(s)];
    if (w != 0.0) out += w * f.coeff(s);
  }
  return out;
}

HymResult hym_check(const MatrixValuedForm& f, const ComplexStructure& j, double tol) {
  if (f.degree() != 2) throw Error("hym_check needs a 2-form");
  if (f.dim() != j.dim()) throw Error("hym_check: dimension mismatch");
  double scale = 1.0;
  for (const auto& c : f.coeffs()) {
    scale = std::max(scale, c.cwiseAbs().maxCoeff());
    if (anti_hermitian_defect(c) > 1e-8 * scale) throw Error("curvature is not anti-hermitian valued");
  }
  HymResult res;
  res.tolerance = tol * std::max(1.0, f.killing_norm());
  res.residual_20 = f.apply(projector_20(j)).killing_norm();
  const Eigen::MatrixXcd contraction = lefschetz_contract(f, j);
  const int r = f.rank();
  res.lambda = contraction.trace().imag() / static_cast<double>(r);
  const Eigen::MatrixXcd expected =
      std::complex<double>(0.0, res.lambda) * Eigen::MatrixXcd::Identity(r, r);
  res.residual_trace = (contraction - expected).norm();
  res.is_hym = res.residual_20 < res.tolerance && res.residual_trace < res.tolerance;
  return res;
}

ComplexStructure structure_from_unit_form(const KForm& w, double tol) {
  if (w.degree() != 2) throw Error("structure_from_unit_form needs a 2-form");
  const double len = w.norm();
  if (len == 0.0) throw Error("form is not the Kahler form of an orthogonal complex structure");
  const double target = std::sqrt(static_cast<double>(w.dim()) / 2.0);
  // <A x, y> = w(x, y)  =>  A = W^T.
  const Eigen::MatrixXd a = (target / len) * two_form_matrix(w).transpose();
  const auto id = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  if ((a * a + id).cwiseAbs().maxCoeff() > tol)
    throw Error("form is not the Kahler form of an orthogonal complex structure");
  // A^2 = -Id and A antisymmetric give orthogonality.
  return ComplexStructure(a, std::max(tol, kStructureTol));
}

ComplexStructure random_complex_structure(int dim, Rng& rng) {
  const Eigen::MatrixXd g = haar_special_orthogonal(dim, rng);
  return ComplexStructure::standard(dim).conjugated(g);
}

int common_11_dimension(const std::vector<ComplexStructure>& structures, double cutoff) {
  if (structures.empty()) throw Error("no structures given");
  const int m = structures.front().dim();
  const auto n = static_cast<Eigen::Index>(binomial(m, 2));
  Eigen::MatrixXd defect = Eigen::MatrixXd::Zero(n, n);
  for (const auto& j : structures) {
    if (j.dim() != m) throw Error("structures of different dimensions");
    defect += projector_20(j);
  }
  defect = 0.5 * (defect + defect.transpose());
  return static_cast<int>(n) - count_eigenvalues_above(defect, cutoff);
}

}  // namespace holorot
