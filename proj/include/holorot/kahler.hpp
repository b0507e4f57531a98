// Orthogonal complex structures on R^{2m}, type decompositions of real
// 2-forms, and the Hermitian-Yang-Mills test for constant curvatures.
#pragma once

#include "holorot/conventions.hpp"
#include "holorot/exterior.hpp"
#include "holorot/numerics.hpp"

#include <Eigen/Dense>

#include <vector>

namespace holorot {

class ComplexStructure {
 public:
  /// Validates J^T J = Id and J^2 = -Id to `tol`.
  explicit ComplexStructure(Eigen::MatrixXd matrix, double tol = kStructureTol);

  /// e_{2i-1} -> e_{2i}, e_{2i} -> -e_{2i-1}.
  static ComplexStructure standard(int dim);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  int complex_dim() const { return dim() / 2; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }

  ComplexStructure operator-() const;
  /// g J g^{-1} for orthogonal g.
  ComplexStructure conjugated(const Eigen::MatrixXd& g) const;

 private:
  Eigen::MatrixXd matrix_;
};

struct TypeSplit {
  KForm form_11_prim;
  double form_11_trace;  // the trace part is form_11_trace * omega_J
  KForm form_20;
  KForm omega;

  KForm trace_part() const { return form_11_trace * omega; }
  KForm reconstruct() const { return form_11_prim + trace_part() + form_20; }
};

struct HymResult {
  bool is_hym = false;
  double lambda = 0.0;           // Lambda_J F = i * lambda * Id
  double residual_20 = 0.0;      // Killing norm of the (2,0)+(0,2) part
  double residual_trace = 0.0;   // || Lambda_J F - i lambda Id ||_F
  double tolerance = 0.0;        // absolute threshold actually applied
};

/// a(e_i, e_j) as an antisymmetric matrix, and back.
Eigen::MatrixXd two_form_matrix(const KForm& a);
KForm two_form_from_matrix(const Eigen::MatrixXd& a);

KForm kahler_form(const ComplexStructure& j);

/// (g^* a)(x_1, ..., x_k) = a(g x_1, ..., g x_k).
KForm pull_back(const KForm& a, const Eigen::MatrixXd& g);
/// Matrix of g^* on Lambda^degree.
Eigen::MatrixXd pull_back_operator(const Eigen::MatrixXd& g, int degree);

/// C_J on Lambda^2.
Eigen::MatrixXd type_involution(const ComplexStructure& j);
Eigen::MatrixXd projector_11(const ComplexStructure& j);
Eigen::MatrixXd projector_20(const ComplexStructure& j);
Eigen::MatrixXd projector_11_prim(const ComplexStructure& j);

TypeSplit type_split(const KForm& a, const ComplexStructure& j);

double lefschetz_contract(const KForm& a, const ComplexStructure& j);
/// sum_S omega_S F_S.
Eigen::MatrixXcd lefschetz_contract(const MatrixValuedForm& f, const ComplexStructure& j);

/// `tol` is relative: the threshold is tol * max(1, ||F||).
HymResult hym_check(const MatrixValuedForm& f, const ComplexStructure& j, double tol = kDefaultTol);

/// Recovers J from a multiple of its Kahler form; the form is rescaled to
/// norm sqrt(m) first.
ComplexStructure structure_from_unit_form(const KForm& w, double tol = kDefaultTol);

/// g I g^T with g Haar-random in SO(dim).
ComplexStructure random_complex_structure(int dim, Rng& rng);

/// Dimension of the intersection of the real (1,1) spaces of all given
/// structures (eigenvalue counting at `cutoff`).
int common_11_dimension(const std::vector<ComplexStructure>& structures, double cutoff = 1e-8);

}  // namespace holorot
