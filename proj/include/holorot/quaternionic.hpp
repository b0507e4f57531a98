// Quaternionic vector spaces R^{4n} = H^n: the S^2 of complex structures
// L = aI + bJ + cK, the five-summand splitting of 2-forms, hyperholomorphic
// curvatures and the c_2 calibration functional.
//
// H^n carries I, J, K as left multiplication by i, j, k on every quaternion
// coordinate block (x_{4p+1}, ..., x_{4p+4}) = re + i + j + k parts. With
// this choice I is the standard structure and IJ = K as matrices.
#pragma once

#include "holorot/conventions.hpp"
#include "holorot/exterior.hpp"
#include "holorot/kahler.hpp"

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include <array>
#include <vector>

namespace holorot {

class QuaternionicTriple {
 public:
  /// Validates I^2 = J^2 = K^2 = -Id, IJ = K, pairwise anticommutation.
  QuaternionicTriple(ComplexStructure i, ComplexStructure j, ComplexStructure k,
                     double tol = kStructureTol);

  int n() const { return i_.dim() / 4; }
  int dim() const { return i_.dim(); }
  const ComplexStructure& i() const { return i_; }
  const ComplexStructure& j() const { return j_; }
  const ComplexStructure& k() const { return k_; }

 private:
  ComplexStructure i_, j_, k_;
};

QuaternionicTriple standard_triple(int n);

/// L = aI + bJ + cK for a unit vector (a, b, c).
ComplexStructure rotate_structure(const QuaternionicTriple& t, double a, double b, double c,
                                  double tol = kDefaultTol);
ComplexStructure rotate_structure(const QuaternionicTriple& t, const Eigen::Vector3d& abc,
                                  double tol = kDefaultTol);

/// The orthogonal map a Id + b I + c J + d K for a unit quaternion.
Eigen::MatrixXd sp1_action(const QuaternionicTriple& t, const Eigen::Vector4d& q);

enum class QuatSummand { Sp2Span = 0, WH = 1, WIPrim = 2, WJPrim = 3, WKPrim = 4 };

/// Projectors (on Lambda^2) onto the five summands, in QuatSummand order.
std::array<Eigen::MatrixXd, 5> quat_projectors(const QuaternionicTriple& t);
std::array<int, 5> quat_projector_ranks(const QuaternionicTriple& t, double cutoff = 1e-8);

struct QuatDecomposition {
  KForm sp2span;
  KForm w_h;
  KForm w_i_prim;
  KForm w_j_prim;
  KForm w_k_prim;
  double residual = 0.0;

  KForm sum() const { return sp2span + w_h + w_i_prim + w_j_prim + w_k_prim; }
};

QuatDecomposition decompose_quat(const KForm& a, const QuaternionicTriple& t);

/// n x n matrix with quaternion entries (w = real part).
struct QuaternionMatrix {
  int n = 0;
  std::vector<Eigen::Quaterniond> entries;  // row-major

  static QuaternionMatrix zero(int n);
  static QuaternionMatrix real(const Eigen::MatrixXd& a);
  Eigen::Quaterniond& operator()(int r, int c) { return entries[static_cast<std::size_t>(r * n + c)]; }
  const Eigen::Quaterniond& operator()(int r, int c) const {
    return entries[static_cast<std::size_t>(r * n + c)];
  }
  /// Right multiplication of every entry by q.
  QuaternionMatrix times(const Eigen::Quaterniond& q) const;
};

enum class QuatChannel { Re, Im, Jm, Km };

/// The chosen real channel of psi_A(x, y) = sum_{ab} conj(x_a) A_ab y_b, as a
/// 2-form on R^{4n}. Throws when the channel is not alternating.
KForm psi_generator(const QuaternionMatrix& a, QuatChannel channel);

/// True iff F lies in W_H (x) u(r): ||F - P_H F|| < tol * max(1, ||F||).
bool hyperholomorphic_check(const MatrixValuedForm& f, const QuaternionicTriple& t,
                            double tol = kDefaultTol);
double hyperholomorphic_residual(const MatrixValuedForm& f, const QuaternionicTriple& t);

/// alpha ^ alpha ^ omega_L^{m-2} / (m-2)! as a number, m = complex dimension.
double pointwise_square_pairing(const KForm& alpha, const ComplexStructure& l);

/// (1 / 8 pi^2) top(Tr(F ^ F) ^ omega_L^{m-2} / (m-2)!), m = complex dimension.
double calibration_functional(const MatrixValuedForm& f, const ComplexStructure& l);
double calibration_functional(const MatrixValuedForm& f, const ComplexStructure& l,
                              const QuaternionicTriple& t);

/// The same number via the type norms:
/// (1/8pi^2)(||F^{11,prim}||^2 - ||F^{20}||^2 - (m-1) ||Lambda F||^2 / m).
double calibration_by_norms(const MatrixValuedForm& f, const ComplexStructure& l);

/// Fast evaluation of the functional over many L: precomputes Tr(F ^ F).
class CalibrationSweep {
 public:
  explicit CalibrationSweep(const MatrixValuedForm& f);
  double operator()(const ComplexStructure& l) const;

 private:
  KForm trace_square_;
};

struct SphereSample {
  Eigen::Vector3d abc;
  double value = 0.0;
  bool hym = false;
  bool equality = false;
};

struct CalibrationReport {
  double value_at_i = 0.0;
  double max_value = 0.0;
  Eigen::Vector3d argmax = Eigen::Vector3d::UnitX();
  bool max_at_i = false;
  bool equality_matches_hym = false;
  std::vector<Eigen::Vector3d> equality_set;
  std::vector<SphereSample> samples;
};

struct CalibrationOptions {
  double hym_tol = kDefaultTol;
  double equality_tol = kEqualityTol;
};

/// Scans +-I and `samples` Fibonacci points of S^2. Requires F HYM with
/// respect to I with lambda = 0.
CalibrationReport calibration_sphere_scan(const MatrixValuedForm& f, const QuaternionicTriple& t,
                                          std::size_t samples, const CalibrationOptions& options = {});

/// Orthonormal basis of W_H.
Eigen::MatrixXd w_h_basis(const QuaternionicTriple& t);

}  // namespace holorot
