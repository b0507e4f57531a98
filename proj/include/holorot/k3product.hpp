// Products R^8 = V + V' of two flat quaternionic 4-spaces (the constant
// coefficient shadow of a K3 x K3 product): the five-summand splitting of
// 2-forms, the mixed pairing matrix Psi and rotability classification over
// the S^2 x S^2 family L + L'.
//
// Integrals over the compact factors are replaced by top coefficients on
// R^4 and R^8 (unit volume).
#pragma once

#include "holorot/conventions.hpp"
#include "holorot/exterior.hpp"
#include "holorot/kahler.hpp"
#include "holorot/quaternionic.hpp"

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace holorot {

/// Left triple on coordinates 1-4, right triple on 5-8.
struct ProductStructure {
  QuaternionicTriple left;
  QuaternionicTriple right;

  static ProductStructure standard();

  /// L (+) L' as a structure on R^8.
  ComplexStructure combine(const ComplexStructure& l, const ComplexStructure& lp) const;
  /// aI + bJ + cK (+) a'I' + b'J' + c'K'.
  ComplexStructure combine(const Eigen::Vector3d& abc, const Eigen::Vector3d& abc_prime) const;
  /// The reference structure I + I'.
  ComplexStructure reference() const { return combine(left.i(), right.i()); }
};

/// A 2-form on R^4 placed on coordinates 1-4 (offset 0) or 5-8 (offset 4).
KForm embed_factor_form(const KForm& a, int offset);

enum class ProductSummand { LeftTriple = 0, LeftPrim = 1, RightTriple = 2, RightPrim = 3, Mixed = 4 };

/// Projectors on Lambda^2(R^8) onto the five summands.
std::array<Eigen::MatrixXd, 5> product_projectors(const ProductStructure& p);

struct FiveWayDecomposition {
  KForm f1, f2, f3, f4, f5;
  double residual = 0.0;

  KForm sum() const { return f1 + f2 + f3 + f4 + f5; }
};

FiveWayDecomposition decompose_product(const KForm& a, const ProductStructure& p);

struct FiveWayCurvature {
  MatrixValuedForm f1, f2, f3, f4, f5;
};

FiveWayCurvature decompose_product(const MatrixValuedForm& f, const ProductStructure& p);

struct DSplit {
  KForm alpha1;  // Re(Lambda^{1,0}_L (x) Lambda^{1,0}_{L'})
  KForm alpha2;  // Re(Lambda^{1,0}_L (x) Lambda^{0,1}_{L'})
};

/// L and L' are structures on R^4.
DSplit d_split(const KForm& a, const ComplexStructure& l, const ComplexStructure& lp,
               double tol = kDefaultTol);

/// -top(a ^ a ^ omega_L ^ omega_L'); equals ||alpha2||^2 - ||alpha1||^2 for
/// orthonormal monomials.
double lemma_ll_value(const KForm& a, const ComplexStructure& l, const ComplexStructure& lp,
                      double tol = kDefaultTol);

struct PsiMatrix {
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  Eigen::Vector3d sv = Eigen::Vector3d::Zero();  // m1 >= m2 >= m3
  Eigen::Matrix3d rot_l = Eigen::Matrix3d::Identity();
  Eigen::Matrix3d rot_r = Eigen::Matrix3d::Identity();
};

/// Signed two-sided diagonalization with SO(3) factors:
/// rot_l^T m rot_r = diag(sv).
PsiMatrix signed_diagonalize(const Eigen::Matrix3d& m);

/// M_ab = (1/8pi^2) top(Tr(F5 ^ F5) ^ omega_{L_a} ^ omega_{L'_b}) over {I,J,K} x {I',J',K'}.
PsiMatrix psi_matrix(const MatrixValuedForm& f5, const ProductStructure& p, double tol = kDefaultTol);

/// The same functional at an arbitrary pair of coefficient vectors.
double psi_value(const MatrixValuedForm& f5, const ProductStructure& p, const Eigen::Vector3d& abc,
                 const Eigen::Vector3d& abc_prime);

enum class Rotability { FullProduct, LeftSphere, RightSphere, DiagonalSphere, NotRotable };

std::string to_string(Rotability kind);
Rotability rotability_from_string(const std::string& s);

struct VerdictWitness {
  double lambda = 0.0;
  double lambda_prime = 0.0;
  Eigen::Vector3d m = Eigen::Vector3d::Zero();
  double f5_norm = 0.0;
  double scalar_residual_left = 0.0;   // ||f1 - i lambda omega_I Id||
  double scalar_residual_right = 0.0;
  bool hym = true;
  std::string note;
};

struct RotabilityVerdict {
  Rotability kind = Rotability::NotRotable;
  std::optional<std::pair<Eigen::Matrix3d, Eigen::Matrix3d>> basis_change;
  VerdictWitness witness;
};

struct ClassifyOptions {
  double tol = kDefaultTol;
  /// Report a NotRotable verdict with diagnostics instead of failing on
  /// curvatures that are not HYM for I + I'.
  bool allow_non_hym = false;
};

RotabilityVerdict classify(const MatrixValuedForm& f, const ProductStructure& p, const ClassifyOptions& options = {});

/// Whether (abc, abc') lies in the family the verdict predicts.
bool in_verdict_family(const RotabilityVerdict& v, const Eigen::Vector3d& abc, const Eigen::Vector3d& abc_prime,
                       double tol = 1e-9);

struct ChernData {
  double lambda = 0.0;        // f1 = i lambda omega_I Id
  double lambda_prime = 0.0;
  double lambda_tilde = 0.0;  // trace part of F along omega_{I+I'}
  double lambda_c1 = 0.0;     // (c1_left ^ omega_I) / omega_I^2
  double lambda_prime_c1 = 0.0;
  Eigen::Matrix3d c2_pairing = Eigen::Matrix3d::Zero();
  KForm c1_left{4, 2};
  KForm c1_right{4, 2};
};

ChernData chern_data(const MatrixValuedForm& f, const ProductStructure& p);

struct CorollaryResult {
  double lhs = 0.0;             // 2 c2 . omega_I^2
  double rhs = 0.0;             // c2 . Omega_I ^ conj(Omega_I), adapted frame
  double factor_terms = 0.0;    // c2 . (omega_I^2 + omega_I'^2)
  double identity_gap = 0.0;    // |rhs - 2 factor - 2(m2 + m3)|
  bool rotable = false;
};

CorollaryResult corollary_check(const MatrixValuedForm& f, const ProductStructure& p, double tol = kDefaultTol);

struct BogomolovResult {
  double value = 0.0;     // c2 . omega_I^2 with omega_I = omega_I + omega_I'
  double f5_part = 0.0;   // contribution of the mixed component
  bool tight = false;     // F5 vanishes
};

BogomolovResult bogomolov_check(const MatrixValuedForm& f, const ProductStructure& p, double tol = kDefaultTol);

struct FamilyGridReport {
  std::size_t points = 0;
  std::size_t family_points = 0;
  std::size_t hym_points = 0;
  std::size_t mismatches = 0;
  bool psi_max_at_reference = false;
  double psi_reference = 0.0;
  double psi_grid_max = 0.0;
};

/// Scans (grid + 2) x (grid + 2) points of S^2 x S^2 (the poles plus a
/// Fibonacci lattice, in the verdict's adapted frames) and compares
/// hym_check with membership in the verdict's family.
FamilyGridReport family_grid_check(const MatrixValuedForm& f, const ProductStructure& p,
                                   const RotabilityVerdict& verdict, std::size_t grid, double tol = kDefaultTol);

}  // namespace holorot
