// The Cayley 4-form on R^8, the 7 + 21 splitting of 2-forms, compatible
// SU(4)-structures and the rotation sphere of a HYM bundle on a complex
// 4-torus.
#pragma once

#include "holorot/chern.hpp"
#include "holorot/conventions.hpp"
#include "holorot/exterior.hpp"
#include "holorot/kahler.hpp"

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace holorot {

struct CayleyForm {
  KForm omega4;
};

/// The 14-term Spin(7) 4-form.
CayleyForm cayley_form();

/// T(a) = *(Omega ^ a) on Lambda^2(R^8); spectrum {3 (x7), -1 (x21)}.
Eigen::MatrixXd cayley_operator();
/// (T + 1) / 4 and (3 - T) / 4.
Eigen::MatrixXd projector_7();
Eigen::MatrixXd projector_21();

struct Spin7Split {
  KForm part7;
  KForm part21;
  double residual = 0.0;
};

Spin7Split split27_21(const KForm& a);

/// Complex coordinates dz_a = dx_{p_a} + i dx_{q_a} (1-based) and
/// theta = sign * dz_1 ^ dz_2 ^ dz_3 ^ dz_4.
struct ComplexFrame {
  std::array<std::pair<int, int>, 4> pairs;
  int sign = 1;
};

class SU4Structure {
 public:
  /// Validates 1/2 omega^2 + Re(theta) = Omega and |theta| = 4 to `tol`.
  SU4Structure(ComplexStructure i, KForm re_theta, KForm im_theta,
               std::optional<ComplexFrame> frame = std::nullopt, double tol = kDefaultTol);

  const ComplexStructure& i() const { return i_; }
  const KForm& re_theta() const { return re_theta_; }
  const KForm& im_theta() const { return im_theta_; }
  const std::optional<ComplexFrame>& frame() const { return frame_; }
  KForm omega() const { return kahler_form(i_); }
  double theta_norm() const;

 private:
  ComplexStructure i_;
  KForm re_theta_;
  KForm im_theta_;
  std::optional<ComplexFrame> frame_;
};

/// All (coordinate pairing, orientation, sign) choices whose SU(4)
/// structure reproduces the Cayley form exactly.
std::vector<ComplexFrame> compatible_coordinate_frames();

/// Builds (I, theta) from a coordinate frame.
SU4Structure su4_from_frame(const ComplexFrame& frame);

/// The first compatible frame found by the search (cached).
const SU4Structure& standard_su4();

struct Delta20Split {
  std::vector<KForm> plus_basis;   // Delta^{2,0}_I intersected with Lambda^2_7
  std::vector<KForm> minus_basis;  // Delta^{2,0}_I intersected with Lambda^2_21
};

Delta20Split delta20_plus_minus(const SU4Structure& su4);

/// The theta-duality involution on Delta^{2,0}_I (zero on Delta^{1,1}),
/// built from the complex frame: dz_i ^ dz_j -> sign * eps_ijkl conj(dz_k ^ dz_l).
Eigen::MatrixXd theta_involution(const SU4Structure& su4);

/// 2 (omega_I + gamma) / |omega_I + gamma|.
KForm rotated_kahler_form(const SU4Structure& su4, const KForm& gamma);
ComplexStructure rotate_su4(const SU4Structure& su4, const KForm& gamma, double tol = kDefaultTol);

bool spinstanton_check(const MatrixValuedForm& f, double tol = kDefaultTol);
double spinstanton_residual(const MatrixValuedForm& f);

struct ChainCheck {
  bool ok = true;
  double worst_equality_gap = 0.0;  // largest |difference| among the "=" lines
  double worst_inequality = 0.0;    // largest positive excess in the "<=" line
  std::size_t checked = 0;
};

struct RotationSphereReport {
  int r = 0;
  std::vector<KForm> kernel_basis;
  double k_const = 0.0;
  Eigen::VectorXd q_eigenvalues;
  Eigen::MatrixXd q_matrix;
  std::size_t samples_checked = 0;
  double value_at_i = 0.0;
  double max_excess = 0.0;          // max over samples of value(L) - value(I)
  bool inequality_holds = false;
  bool equality_matches_hym = false;
  bool equality_matches_kernel = false;
  std::size_t equality_count = 0;
  double cross_term_max = 0.0;      // max |beta ^ omega ^ b| over the plus basis
  double scaling_identity_max = 0.0;
  ChainCheck chain;
};

struct RotationScanOptions {
  double hym_tol = kDefaultTol;
  double q_tol = 1e-8;
  double kernel_cutoff = 1e-8;
  double equality_tol = 1e-8;
  bool check_hym_on_grid = true;
};

/// Requires F HYM with respect to su4.i() and Tr F = 0. Scans `samples`
/// quasi-uniform points of S^6 plus +-omega_I and points on the kernel sphere.
RotationSphereReport rotation_sphere_scan(const MatrixValuedForm& f, const SU4Structure& su4, std::size_t samples,
                                          const RotationScanOptions& options = {});

}  // namespace holorot
