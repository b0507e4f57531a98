// Constant-coefficient exterior algebra on R^m.
//
// Coordinates are orthonormal, the orientation is dx_1 ^ ... ^ dx_m and the
// basis monomials dx_S are declared orthonormal. A k-form is a dense vector
// of C(m,k) coefficients in lexicographic order of the index subsets S.
// Top-degree coefficients stand in for integrals over the unit-volume flat
// torus R^m / Z^m.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace holorot {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Mask = std::uint32_t;
inline constexpr int kMaxDim = 16;

std::size_t binomial(int m, int k);

/// Subsets of size k of {1..m} in lexicographic order, as bitmasks
/// (bit i-1 set <=> index i present).
const std::vector<Mask>& basis_masks(int m, int k);

/// Position of a subset in the lexicographic order of its degree.
std::size_t lex_position(int m, Mask subset);

/// Sign of the permutation that merges the sorted index sets `a` and `b`
/// (a listed first) into sorted order; 0 when they overlap.
int merge_sign(Mask a, Mask b);

class FormIndex {
 public:
  FormIndex(int dim, std::vector<int> subset);
  FormIndex(int dim, Mask mask);

  int dim() const { return dim_; }
  int rank() const;
  Mask mask() const { return mask_; }
  std::vector<int> subset() const;
  std::size_t position() const { return lex_position(dim_, mask_); }

 private:
  int dim_;
  Mask mask_;
};

class KForm {
 public:
  KForm(int dim, int degree);
  KForm(int dim, int degree, Eigen::VectorXd coeffs);

  /// c * dx_{i1} ^ ... ^ dx_{ik} for 1-based indices in any order; repeated
  /// indices give the zero form.
  static KForm monomial(int dim, std::initializer_list<int> indices, double c = 1.0);
  static KForm monomial(int dim, const std::vector<int>& indices, double c = 1.0);
  static KForm scalar(int dim, double c);
  static KForm volume(int dim);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  std::size_t size() const { return static_cast<std::size_t>(coeffs_.size()); }
  const Eigen::VectorXd& coeffs() const { return coeffs_; }
  Eigen::VectorXd& coeffs() { return coeffs_; }

  double coefficient(Mask subset) const;
  double coefficient(const FormIndex& idx) const { return coefficient(idx.mask()); }
  double norm() const { return coeffs_.norm(); }

  KForm& operator+=(const KForm& o);
  KForm& operator-=(const KForm& o);
  KForm& operator*=(double s);

  friend KForm operator+(KForm a, const KForm& b) { return a += b; }
  friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
  friend KForm operator*(double s, KForm a) { return a *= s; }
  friend KForm operator*(KForm a, double s) { return a *= s; }
  friend KForm operator-(KForm a) { return a *= -1.0; }

 private:
  void check_compatible(const KForm& o) const;

  int dim_;
  int degree_;
  Eigen::VectorXd coeffs_;
};

/// True when deg(a) + deg(b) exceeds the ambient dimension; wedge() then
/// returns the zero top-degree form.
bool wedge_overflows(const KForm& a, const KForm& b);
KForm wedge(const KForm& a, const KForm& b);
/// a ^ a ^ ... (p factors); p = 0 gives the constant 1.
KForm wedge_power(const KForm& a, int p);
KForm hodge_star(const KForm& a);
double inner(const KForm& a, const KForm& b);
double top_coefficient(const KForm& a);
/// top_coefficient(a ^ b) without materializing the product; requires
/// complementary degrees.
double top_pairing(const KForm& a, const KForm& b);

/// Matrix of a linear map on Lambda^degree(R^dim) in the monomial basis.
Eigen::MatrixXd operator_matrix(int dim, int degree,
                                const std::function<KForm(const KForm&)>& map);

/// A form whose coefficients are r x r anti-hermitian complex matrices
/// (values in u(r)). The Killing inner product on coefficients is
/// <B,C> = -Tr(BC).
class MatrixValuedForm {
 public:
  MatrixValuedForm(int dim, int degree, int rank);
  MatrixValuedForm(int dim, int degree, int rank, std::vector<Eigen::MatrixXcd> coeffs,
                   double tol = 1e-10);

  /// a (x) X
  static MatrixValuedForm tensor(const KForm& a, const Eigen::MatrixXcd& x);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  int rank() const { return rank_; }
  const std::vector<Eigen::MatrixXcd>& coeffs() const { return coeffs_; }
  const Eigen::MatrixXcd& coeff(std::size_t pos) const { return coeffs_[pos]; }

  /// Sum over monomials of -Tr(F_S^2) = ||F_S||_F^2.
  double killing_norm_sq() const;
  double killing_norm() const;

  /// F - (Tr F / r) Id.
  MatrixValuedForm trace_free() const;
  /// The real form Im(Tr F); Tr F itself is i times this.
  KForm trace_imag() const;

  /// F'_S = sum_T map(S,T) F_T; `map` acts on scalar Lambda^degree.
  MatrixValuedForm apply(const Eigen::MatrixXd& map) const;

  MatrixValuedForm& operator+=(const MatrixValuedForm& o);
  MatrixValuedForm& operator-=(const MatrixValuedForm& o);
  MatrixValuedForm& operator*=(double s);
  friend MatrixValuedForm operator+(MatrixValuedForm a, const MatrixValuedForm& b) { return a += b; }
  friend MatrixValuedForm operator-(MatrixValuedForm a, const MatrixValuedForm& b) { return a -= b; }
  friend MatrixValuedForm operator*(double s, MatrixValuedForm a) { return a *= s; }

 private:
  void check_compatible(const MatrixValuedForm& o) const;

  int dim_;
  int degree_;
  int rank_;
  std::vector<Eigen::MatrixXcd> coeffs_;
};

/// Largest deviation from anti-hermitian among the coefficient matrices.
double anti_hermitian_defect(const Eigen::MatrixXcd& m);

/// sum_{S,T} Tr(F_S G_T) dx_S ^ dx_T. Tr(BC) is real for B, C in u(r).
KForm trace_wedge(const MatrixValuedForm& f, const MatrixValuedForm& g);
MatrixValuedForm matrix_wedge_scalar(const MatrixValuedForm& f, const KForm& a);

}  // namespace holorot
