#include "holorot/spin7.hpp"

#include "holorot/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace holorot {

namespace {

struct ComplexForm {
  KForm re;
  KForm im;
};

ComplexForm cwedge(const ComplexForm& a, const ComplexForm& b) {
  return {wedge(a.re, b.re) - wedge(a.im, b.im), wedge(a.re, b.im) + wedge(a.im, b.re)};
}

void require_r8_two_form(const KForm& a, const char* what) {
  if (a.dim() != 8 || a.degree() != 2) throw Error(std::string(what) + " needs a 2-form on R^8");
}

// dz_a = dx_p + i dx_q for every pair of the frame.
std::array<ComplexForm, 4> frame_coordinates(const ComplexFrame& frame) {
  std::array<ComplexForm, 4> dz{ComplexForm{KForm(8, 1), KForm(8, 1)}, ComplexForm{KForm(8, 1), KForm(8, 1)},
                                ComplexForm{KForm(8, 1), KForm(8, 1)}, ComplexForm{KForm(8, 1), KForm(8, 1)}};
  for (std::size_t a = 0; a < 4; ++a) {
    dz[a].re = KForm::monomial(8, {frame.pairs[a].first});
    dz[a].im = KForm::monomial(8, {frame.pairs[a].second});
  }
  return dz;
}

// Sign of the permutation (i, j, k, l) of (0, 1, 2, 3).
int perm_sign(std::array<int, 4> p) {
  int s = 1;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      if (p[static_cast<std::size_t>(a)] > p[static_cast<std::size_t>(b)]) s = -s;
  return s;
}

void all_pairings(std::vector<int>& remaining, std::vector<std::pair<int, int>>& current,
                  std::vector<std::vector<std::pair<int, int>>>& out) {
  if (remaining.empty()) {
    out.push_back(current);
    return;
  }
  const int p = remaining.front();
  for (std::size_t t = 1; t < remaining.size(); ++t) {
    const int q = remaining[t];
    std::vector<int> rest;
    for (std::size_t u = 1; u < remaining.size(); ++u)
      if (u != t) rest.push_back(remaining[u]);
    current.emplace_back(p, q);
    all_pairings(rest, current, out);
    current.pop_back();
  }
}

}  // namespace

CayleyForm cayley_form() {
  struct Term {
    std::array<int, 4> idx;
    double sign;
  };
  static const Term terms[] = {
      {{1, 2, 3, 4}, 1},  {{1, 2, 5, 6}, 1},  {{1, 2, 7, 8}, 1},  {{1, 3, 5, 7}, 1},  {{1, 3, 6, 8}, -1},
      {{1, 4, 5, 8}, -1}, {{1, 4, 6, 7}, -1}, {{2, 3, 5, 8}, -1}, {{2, 3, 6, 7}, -1}, {{2, 4, 5, 7}, -1},
      {{2, 4, 6, 8}, 1},  {{3, 4, 5, 6}, 1},  {{3, 4, 7, 8}, 1},  {{5, 6, 7, 8}, 1},
  };
  KForm omega(8, 4);
  for (const auto& t : terms)
    omega += KForm::monomial(8, {t.idx[0], t.idx[1], t.idx[2], t.idx[3]}, t.sign);
  return CayleyForm{omega};
}

Eigen::MatrixXd cayley_operator() {
  static const Eigen::MatrixXd t = [] {
    const KForm omega = cayley_form().omega4;
    return operator_matrix(8, 2, [&](const KForm& a) { return hodge_star(wedge(omega, a)); });
  }();
  return t;
}

Eigen::MatrixXd projector_7() {
  const Eigen::MatrixXd t = cayley_operator();
  return 0.25 * (t + Eigen::MatrixXd::Identity(t.rows(), t.cols()));
}

Eigen::MatrixXd projector_21() {
  const Eigen::MatrixXd t = cayley_operator();
  return 0.25 * (3.0 * Eigen::MatrixXd::Identity(t.rows(), t.cols()) - t);
}

Spin7Split split27_21(const KForm& a) {
  require_r8_two_form(a, "split27_21");
  Spin7Split out{KForm(8, 2, projector_7() * a.coeffs()), KForm(8, 2, projector_21() * a.coeffs()), 0.0};
  out.residual = (out.part7 + out.part21 - a).norm();
  return out;
}

SU4Structure::SU4Structure(ComplexStructure i, KForm re_theta, KForm im_theta,
                           std::optional<ComplexFrame> frame, double tol)
    : i_(std::move(i)), re_theta_(std::move(re_theta)), im_theta_(std::move(im_theta)), frame_(frame) {
  if (i_.dim() != 8) throw Error("SU(4) structure needs R^8");
  if (re_theta_.dim() != 8 || re_theta_.degree() != 4 || im_theta_.dim() != 8 || im_theta_.degree() != 4)
    throw Error("theta must be a 4-form on R^8");
  const KForm omega = kahler_form(i_);
  const KForm omega_u = 0.5 * wedge(omega, omega) + re_theta_;
  if ((omega_u - cayley_form().omega4).norm() > tol)
    throw Error("SU(4) structure is not compatible with the Cayley form");
  if (std::abs(theta_norm() - 4.0) > tol) throw Error("theta must have norm 4");
  // Necessary condition for type (4,0): I^* theta = theta.
  const Eigen::MatrixXd& j = i_.matrix();
  if ((pull_back(re_theta_, j) - re_theta_).norm() > tol || (pull_back(im_theta_, j) - im_theta_).norm() > tol)
    throw Error("theta is not of type (4,0)");
}

double SU4Structure::theta_norm() const {
  return std::sqrt(re_theta_.coeffs().squaredNorm() + im_theta_.coeffs().squaredNorm());
}

SU4Structure su4_from_frame(const ComplexFrame& frame) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(8, 8);
  for (const auto& [p, q] : frame.pairs) {
    j(q - 1, p - 1) = 1.0;
    j(p - 1, q - 1) = -1.0;
  }
  const auto dz = frame_coordinates(frame);
  ComplexForm theta = cwedge(cwedge(cwedge(dz[0], dz[1]), dz[2]), dz[3]);
  const double s = frame.sign;
  return SU4Structure(ComplexStructure(j), s * theta.re, s * theta.im, frame);
}

std::vector<ComplexFrame> compatible_coordinate_frames() {
  std::vector<int> all{1, 2, 3, 4, 5, 6, 7, 8};
  std::vector<std::pair<int, int>> current;
  std::vector<std::vector<std::pair<int, int>>> pairings;
  all_pairings(all, current, pairings);

  const KForm omega4 = cayley_form().omega4;
  std::vector<ComplexFrame> out;
  for (const auto& pairing : pairings) {
    for (int orient = 0; orient < 16; ++orient) {
      for (int sign : {1, -1}) {
        ComplexFrame frame;
        for (std::size_t a = 0; a < 4; ++a) {
          auto [p, q] = pairing[a];
          if (orient & (1 << a)) std::swap(p, q);
          frame.pairs[a] = {p, q};
        }
        frame.sign = sign;
        Eigen::MatrixXd j = Eigen::MatrixXd::Zero(8, 8);
        for (const auto& [p, q] : frame.pairs) {
          j(q - 1, p - 1) = 1.0;
          j(p - 1, q - 1) = -1.0;
        }
        const KForm omega = kahler_form(ComplexStructure(j));
        const auto dz = frame_coordinates(frame);
        const KForm re_theta = sign * cwedge(cwedge(cwedge(dz[0], dz[1]), dz[2]), dz[3]).re;
        const KForm candidate = 0.5 * wedge(omega, omega) + re_theta;
        if ((candidate.coeffs() - omega4.coeffs()).cwiseAbs().maxCoeff() == 0.0) out.push_back(frame);
      }
    }
  }
  return out;
}

const SU4Structure& standard_su4() {
  static const SU4Structure su4 = [] {
    const auto frames = compatible_coordinate_frames();
    if (frames.empty()) throw Error("no coordinate SU(4) structure reproduces the Cayley form");
    return su4_from_frame(frames.front());
  }();
  return su4;
}

Delta20Split delta20_plus_minus(const SU4Structure& su4) {
  const Eigen::MatrixXd p20 = projector_20(su4.i());
  const Eigen::MatrixXd plus = intersect_projector_ranges({p20, projector_7()}, 1e-8);
  const Eigen::MatrixXd minus = intersect_projector_ranges({p20, projector_21()}, 1e-8);
  if (plus.cols() != 6 || minus.cols() != 6)
    throw Error("Delta^{2,0} does not split into two 6-dimensional pieces");
  Delta20Split out;
  for (Eigen::Index c = 0; c < 6; ++c) {
    out.plus_basis.emplace_back(8, 2, plus.col(c));
    out.minus_basis.emplace_back(8, 2, minus.col(c));
  }
  return out;
}

Eigen::MatrixXd theta_involution(const SU4Structure& su4) {
  if (!su4.frame()) throw Error("theta involution needs a coordinate frame");
  const auto dz = frame_coordinates(*su4.frame());
  const double s = su4.frame()->sign;
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(28, 28);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      std::array<int, 4> perm{i, j, 0, 0};
      int fill = 2;
      for (int a = 0; a < 4; ++a)
        if (a != i && a != j) perm[static_cast<std::size_t>(fill++)] = a;
      const double eps = s * perm_sign(perm);
      const ComplexForm src = cwedge(dz[static_cast<std::size_t>(i)], dz[static_cast<std::size_t>(j)]);
      const ComplexForm dst = cwedge(dz[static_cast<std::size_t>(perm[2])], dz[static_cast<std::size_t>(perm[3])]);
      // Complex-linear map to conj(dst): Re src -> eps Re dst, Im src -> -eps Im dst.
      // Both real forms have squared norm 2.
      l += eps * dst.re.coeffs() * src.re.coeffs().transpose() / 2.0;
      l -= eps * dst.im.coeffs() * src.im.coeffs().transpose() / 2.0;
    }
  }
  return l;
}

KForm rotated_kahler_form(const SU4Structure& su4, const KForm& gamma) {
  require_r8_two_form(gamma, "rotated_kahler_form");
  const KForm sum = su4.omega() + gamma;
  const double len = sum.norm();
  if (len == 0.0) throw Error("omega_I + gamma vanishes");
  return (2.0 / len) * sum;
}

ComplexStructure rotate_su4(const SU4Structure& su4, const KForm& gamma, double tol) {
  require_r8_two_form(gamma, "rotate_su4");
  const Delta20Split split = delta20_plus_minus(su4);
  Eigen::MatrixXd basis(28, 6);
  for (Eigen::Index c = 0; c < 6; ++c) basis.col(c) = split.plus_basis[static_cast<std::size_t>(c)].coeffs();
  const Eigen::VectorXd g = gamma.coeffs();
  const Eigen::VectorXd off = g - basis * (basis.transpose() * g);
  if (off.norm() > tol * std::max(1.0, g.norm())) throw Error("gamma is not in Delta^{2,0}_{I,+}");
  const KForm w = rotated_kahler_form(su4, gamma);
  if (std::abs(w.norm() - 2.0) > 1e-10) throw Error("rotated form does not have norm 2");
  if (split27_21(w).part21.norm() > 1e-9) throw Error("rotated form left Lambda^2_7");
  return structure_from_unit_form(w, std::max(tol, 1e-9));
}

double spinstanton_residual(const MatrixValuedForm& f) {
  if (f.dim() != 8 || f.degree() != 2) throw Error("spinstanton test needs a 2-form on R^8");
  return f.trace_free().apply(projector_7()).killing_norm();
}

bool spinstanton_check(const MatrixValuedForm& f, double tol) {
  return spinstanton_residual(f) < tol * std::max(1.0, f.killing_norm());
}

namespace {

struct GridPoint {
  double excess = 0.0;
  bool equality = false;
  bool hym = false;
  bool in_kernel = false;
  bool sandwich_ok = true;
  bool chain_done = false;
  bool chain_ok = true;
  double chain_eq_gap = 0.0;
  double chain_ineq = 0.0;
};

}  // namespace

RotationSphereReport rotation_sphere_scan(const MatrixValuedForm& f, const SU4Structure& su4, std::size_t samples,
                                          const RotationScanOptions& options) {
  if (f.dim() != 8 || f.degree() != 2) throw Error("rotation_sphere_scan needs a curvature 2-form on R^8");
  const HymResult hym = hym_check(f, su4.i(), options.hym_tol);
  if (!hym.is_hym) throw Error("curvature is not HYM with respect to I");
  const double scale = std::max(1.0, f.killing_norm());
  if (f.trace_imag().norm() > options.hym_tol * scale) throw Error("c_1 integrand does not vanish");

  RotationSphereReport rep;
  const KForm omega = su4.omega();
  const KForm omega2 = wedge(omega, omega);
  const double omega4 = top_pairing(omega2, omega2);
  const KForm beta = beta_form(f);
  const KForm c2 = chern_c2_form(f);
  rep.k_const = top_pairing(beta, omega2) / omega4;

  const Delta20Split split = delta20_plus_minus(su4);
  const auto& b = split.plus_basis;
  const KForm x = beta - (3.0 * rep.k_const) * omega2;
  Eigen::MatrixXd q(6, 6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = top_pairing(x, wedge(b[i], b[j]));
  q = 0.5 * (q + q.transpose());
  rep.q_matrix = q;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q);
  rep.q_eigenvalues = es.eigenvalues();
  if (rep.q_eigenvalues.maxCoeff() > options.q_tol) throw Error("calibration inequality violated");

  const double q_norm = rep.q_eigenvalues.cwiseAbs().maxCoeff();
  const double cutoff = options.kernel_cutoff * q_norm;
  Eigen::MatrixXd kernel(6, 0);
  double mu_min_nonzero = q_norm;  // smallest |mu| outside the kernel
  for (Eigen::Index c = 0; c < 6; ++c) {
    const double mu = rep.q_eigenvalues[c];
    if (q_norm < 1e-14 || std::abs(mu) <= cutoff) {
      kernel.conservativeResize(6, kernel.cols() + 1);
      kernel.col(kernel.cols() - 1) = es.eigenvectors().col(c);
    } else {
      mu_min_nonzero = std::min(mu_min_nonzero, std::abs(mu));
    }
  }
  rep.r = static_cast<int>(kernel.cols());
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
    KForm g(8, 2);
    for (std::size_t i = 0; i < 6; ++i) g += kernel(static_cast<Eigen::Index>(i), c) * b[i];
    rep.kernel_basis.push_back(g);
  }

  for (const auto& bi : b) {
    rep.cross_term_max = std::max(rep.cross_term_max, std::abs(top_pairing(beta, wedge(omega, bi))));
  }
  // top(omega^2 ^ gamma^2) = 2 |gamma|^2 top(omega^4) / 4! on the plus space.
  {
    Rng rng(0x5eed);
    for (int s = 0; s < 64; ++s) {
      KForm g(8, 2);
      for (const auto& bi : b) g += rng.normal() * bi;
      const double lhs = top_pairing(omega2, wedge(g, g));
      const double rhs = 2.0 * g.coeffs().squaredNorm() * omega4 / 24.0;
      rep.scaling_identity_max = std::max(rep.scaling_identity_max, std::abs(lhs - rhs));
    }
  }

  // Points on S^6 in the orthonormal frame {omega_I / 2, b_1, ..., b_6}.
  std::vector<Eigen::VectorXd> points;
  Eigen::VectorXd pole = Eigen::VectorXd::Zero(7);
  pole[0] = 1.0;
  points.push_back(pole);
  points.push_back(-pole);
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
    for (double t : {0.3, 0.9, 1.6, 2.5}) {
      Eigen::VectorXd u = Eigen::VectorXd::Zero(7);
      u[0] = std::cos(t);
      u.tail(6) = std::sin(t) * kernel.col(c);
      points.push_back(u);
    }
  }
  if (kernel.cols() > 1) {
    const auto mix = quasi_uniform_sphere(static_cast<int>(kernel.cols()) + 1, 32);
    for (const auto& m : mix) {
      Eigen::VectorXd u = Eigen::VectorXd::Zero(7);
      u[0] = m[0];
      u.tail(6) = kernel * m.tail(kernel.cols());
      points.push_back(u);
    }
  }
  for (const auto& u : quasi_uniform_sphere(7, samples)) points.push_back(u);

  const double value_i = top_pairing(c2, omega2);
  rep.value_at_i = value_i;
  const double abs_tol = options.equality_tol * std::max(1.0, std::abs(value_i) + q_norm);
  const Eigen::MatrixXd kernel_proj = kernel * kernel.transpose();
  const double c_omega2 = top_pairing(beta, omega2);

  const auto results = parallel_map<GridPoint>(points.size(), [&](std::size_t idx) {
    GridPoint gp;
    const Eigen::VectorXd& u = points[idx];
    const Eigen::VectorXd v = u.tail(6);
    KForm wl = u[0] * omega;
    for (std::size_t i = 0; i < 6; ++i) wl += (2.0 * v[static_cast<Eigen::Index>(i)]) * b[i];
    const double value = top_pairing(c2, wedge(wl, wl));
    gp.excess = value - value_i;
    gp.equality = std::abs(gp.excess) <= abs_tol;
    const Eigen::VectorXd off_kernel = v - kernel_proj * v;
    const double dist2 = off_kernel.squaredNorm();
    gp.in_kernel = dist2 * mu_min_nonzero * 4.0 <= abs_tol || dist2 < 1e-16;
    // deficit = -4 Q(v) lies between 4 mu_min |off|^2 and 4 ||Q|| |off|^2.
    const double deficit = -gp.excess;
    gp.sandwich_ok = deficit >= 4.0 * mu_min_nonzero * dist2 - abs_tol && deficit <= 4.0 * q_norm * dist2 + abs_tol;
    if (options.check_hym_on_grid) {
      const ComplexStructure l = structure_from_unit_form(wl, 1e-8);
      gp.hym = hym_check(f, l, options.hym_tol).is_hym;
    }
    if (u[0] > 0.1) {
      // gamma in the chart 2 (omega + gamma) / kappa.
      KForm gamma(8, 2);
      for (std::size_t i = 0; i < 6; ++i) gamma += (2.0 * v[static_cast<Eigen::Index>(i)] / u[0]) * b[i];
      const double kappa = (omega + gamma).norm();
      const double g2 = gamma.coeffs().squaredNorm();
      const KForm og = omega + gamma;
      const double line1 = kappa * kappa * top_pairing(beta, wedge(wl, wl));
      const double line2 = 4.0 * top_pairing(beta, wedge(og, og));
      const double line3 = 4.0 * (c_omega2 + 2.0 * top_pairing(beta, wedge(omega, gamma)) +
                                  top_pairing(beta, wedge(gamma, gamma)));
      const double line4 = 4.0 * c_omega2 + 12.0 * rep.k_const * top_pairing(omega2, wedge(gamma, gamma));
      const double line5 = 4.0 * c_omega2 + rep.k_const * g2 * omega4;
      const double line6 = (4.0 + g2) * c_omega2;
      const double line7 = kappa * kappa * c_omega2;
      const double rel = 1e-9 * std::max(1.0, std::abs(line1) + std::abs(line5));
      gp.chain_done = true;
      gp.chain_eq_gap = std::max({std::abs(line1 - line2), std::abs(line2 - line3), std::abs(line4 - line5),
                                  std::abs(line5 - line6), std::abs(line6 - line7)});
      gp.chain_ineq = std::max(0.0, line3 - line4);
      gp.chain_ok = gp.chain_eq_gap <= rel && gp.chain_ineq <= rel;
    }
    return gp;
  });

  rep.samples_checked = results.size();
  rep.max_excess = -std::numeric_limits<double>::infinity();
  rep.inequality_holds = true;
  rep.equality_matches_hym = true;
  rep.equality_matches_kernel = true;
  for (const auto& gp : results) {
    rep.max_excess = std::max(rep.max_excess, gp.excess);
    if (gp.excess > abs_tol) rep.inequality_holds = false;
    if (gp.equality) ++rep.equality_count;
    if (options.check_hym_on_grid && gp.equality != gp.hym) rep.equality_matches_hym = false;
    if (gp.equality != gp.in_kernel || !gp.sandwich_ok) rep.equality_matches_kernel = false;
    if (gp.chain_done) {
      ++rep.chain.checked;
      rep.chain.worst_equality_gap = std::max(rep.chain.worst_equality_gap, gp.chain_eq_gap);
      rep.chain.worst_inequality = std::max(rep.chain.worst_inequality, gp.chain_ineq);
      if (!gp.chain_ok) rep.chain.ok = false;
    }
  }
  return rep;
}

}  // namespace holorot
