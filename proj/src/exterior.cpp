#include "holorot/exterior.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>

namespace holorot {

namespace {

struct BasisTables {
  // masks[m][k]: lexicographic list; position[m][mask]: index within degree.
  std::array<std::array<std::vector<Mask>, kMaxDim + 1>, kMaxDim + 1> masks;
  std::array<std::vector<std::uint32_t>, kMaxDim + 1> position;

  BasisTables() {
    for (int m = 0; m <= kMaxDim; ++m) {
      for (int k = 0; k <= m; ++k) {
        auto& out = masks[m][k];
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
          Mask s = 0;
          for (int i : idx) s |= Mask{1} << i;
          out.push_back(s);
          int i = k - 1;
          while (i >= 0 && idx[i] == m - k + i) --i;
          if (i < 0) break;
          ++idx[i];
          for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
      }
      position[m].assign(std::size_t{1} << m, 0);
      for (int k = 0; k <= m; ++k)
        for (std::size_t p = 0; p < masks[m][k].size(); ++p)
          position[m][masks[m][k][p]] = static_cast<std::uint32_t>(p);
    }
  }
};

const BasisTables& tables() {
  static const BasisTables t;
  return t;
}

void check_dim(int m) {
  if (m < 0 || m > kMaxDim) throw Error("ambient dimension out of range: " + std::to_string(m));
}

Mask full_mask(int m) { return m == 32 ? ~Mask{0} : ((Mask{1} << m) - 1); }

}  // namespace

std::size_t binomial(int m, int k) {
  if (k < 0 || k > m) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(m - k + i) / static_cast<std::size_t>(i);
  return r;
}

const std::vector<Mask>& basis_masks(int m, int k) {
  check_dim(m);
  if (k < 0 || k > m) throw Error("form degree out of range");
  return tables().masks[m][k];
}

std::size_t lex_position(int m, Mask subset) {
  check_dim(m);
  if ((subset & ~full_mask(m)) != 0) throw Error("index subset outside ambient dimension");
  return tables().position[m][subset];
}

int merge_sign(Mask a, Mask b) {
  if (a & b) return 0;
  // Count pairs (s in a, t in b) with s > t.
  int inversions = 0;
  Mask rest = b;
  while (rest) {
    const int t = std::countr_zero(rest);
    rest &= rest - 1;
    inversions += std::popcount(a >> (t + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

FormIndex::FormIndex(int dim, std::vector<int> subset) : dim_(dim), mask_(0) {
  check_dim(dim);
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] < 1 || subset[i] > dim) throw Error("form index out of range");
    if (i > 0 && subset[i] <= subset[i - 1]) throw Error("form index not strictly increasing");
    mask_ |= Mask{1} << (subset[i] - 1);
  }
}

FormIndex::FormIndex(int dim, Mask mask) : dim_(dim), mask_(mask) {
  check_dim(dim);
  if ((mask & ~full_mask(dim)) != 0) throw Error("form index out of range");
}

int FormIndex::rank() const { return std::popcount(mask_); }

std::vector<int> FormIndex::subset() const {
  std::vector<int> out;
  for (int i = 0; i < dim_; ++i)
    if (mask_ & (Mask{1} << i)) out.push_back(i + 1);
  return out;
}

// ---------------------------------------------------------------- KForm

KForm::KForm(int dim, int degree) : dim_(dim), degree_(degree) {
  check_dim(dim);
  if (degree < 0 || degree > dim) throw Error("form degree out of range");
  coeffs_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(binomial(dim, degree)));
}

KForm::KForm(int dim, int degree, Eigen::VectorXd coeffs) : KForm(dim, degree) {
  if (static_cast<std::size_t>(coeffs.size()) != binomial(dim, degree))
    throw Error("coefficient count does not match C(m,k)");
  coeffs_ = std::move(coeffs);
}

KForm KForm::monomial(int dim, std::initializer_list<int> indices, double c) {
  return monomial(dim, std::vector<int>(indices), c);
}

KForm KForm::monomial(int dim, const std::vector<int>& indices, double c) {
  KForm out(dim, static_cast<int>(indices.size()));
  Mask acc = 0;
  int sign = 1;
  for (int i : indices) {
    if (i < 1 || i > dim) throw Error("form index out of range");
    const Mask bit = Mask{1} << (i - 1);
    sign *= merge_sign(acc, bit);
    if (sign == 0) return out;
    acc |= bit;
  }
  out.coeffs_[static_cast<Eigen::Index>(lex_position(dim, acc))] = sign * c;
  return out;
}

KForm KForm::scalar(int dim, double c) {
  KForm out(dim, 0);
  out.coeffs_[0] = c;
  return out;
}

KForm KForm::volume(int dim) {
  KForm out(dim, dim);
  out.coeffs_[0] = 1.0;
  return out;
}

double KForm::coefficient(Mask subset) const {
  if (std::popcount(subset) != degree_) throw Error("index subset has the wrong degree");
  return coeffs_[static_cast<Eigen::Index>(lex_position(dim_, subset))];
}

void KForm::check_compatible(const KForm& o) const {
  if (dim_ != o.dim_) throw Error("dimension mismatch");
  if (degree_ != o.degree_) throw Error("degree mismatch");
}

KForm& KForm::operator+=(const KForm& o) {
  check_compatible(o);
  coeffs_ += o.coeffs_;
  return *this;
}

KForm& KForm::operator-=(const KForm& o) {
  check_compatible(o);
  coeffs_ -= o.coeffs_;
  return *this;
}

KForm& KForm::operator*=(double s) {
  coeffs_ *= s;
  return *this;
}

bool wedge_overflows(const KForm& a, const KForm& b) { return a.degree() + b.degree() > a.dim(); }

KForm wedge(const KForm& a, const KForm& b) {
  if (a.dim() != b.dim()) throw Error("dimension mismatch in wedge");
  const int m = a.dim();
  if (wedge_overflows(a, b)) return KForm(m, m);
  KForm out(m, a.degree() + b.degree());
  const auto& ma = basis_masks(m, a.degree());
  const auto& mb = basis_masks(m, b.degree());
  const auto& pos = tables().position[m];
  for (std::size_t i = 0; i < ma.size(); ++i) {
    const double ca = a.coeffs()[static_cast<Eigen::Index>(i)];
    if (ca == 0.0) continue;
    for (std::size_t j = 0; j < mb.size(); ++j) {
      const double cb = b.coeffs()[static_cast<Eigen::Index>(j)];
      if (cb == 0.0) continue;
      const int s = merge_sign(ma[i], mb[j]);
      if (s == 0) continue;
      out.coeffs()[pos[ma[i] | mb[j]]] += s * ca * cb;
    }
  }
  return out;
}

KForm wedge_power(const KForm& a, int p) {
  if (p < 0) throw Error("negative wedge power");
  KForm out = KForm::scalar(a.dim(), 1.0);
  for (int i = 0; i < p; ++i) out = wedge(out, a);
  return out;
}

KForm hodge_star(const KForm& a) {
  const int m = a.dim();
  const Mask full = full_mask(m);
  KForm out(m, m - a.degree());
  const auto& ma = basis_masks(m, a.degree());
  const auto& pos = tables().position[m];
  for (std::size_t i = 0; i < ma.size(); ++i) {
    const Mask comp = full & ~ma[i];
    // dx_S ^ dx_{S^c} = sign * vol, so *dx_S = sign * dx_{S^c}.
    out.coeffs()[pos[comp]] += merge_sign(ma[i], comp) * a.coeffs()[static_cast<Eigen::Index>(i)];
  }
  return out;
}

double inner(const KForm& a, const KForm& b) {
  if (a.dim() != b.dim()) throw Error("dimension mismatch in inner product");
  if (a.degree() != b.degree()) throw Error("degree mismatch in inner product");
  return a.coeffs().dot(b.coeffs());
}

double top_coefficient(const KForm& a) {
  if (a.degree() != a.dim()) throw Error("top_coefficient needs a top-degree form");
  return a.coeffs()[0];
}

double top_pairing(const KForm& a, const KForm& b) {
  if (a.dim() != b.dim()) throw Error("dimension mismatch in top pairing");
  const int m = a.dim();
  if (a.degree() + b.degree() != m) throw Error("top pairing needs complementary degrees");
  const Mask full = full_mask(m);
  const auto& ma = basis_masks(m, a.degree());
  const auto& pos = tables().position[m];
  double acc = 0.0;
  for (std::size_t i = 0; i < ma.size(); ++i) {
    const double ca = a.coeffs()[static_cast<Eigen::Index>(i)];
    if (ca == 0.0) continue;
    const Mask comp = full & ~ma[i];
    acc += merge_sign(ma[i], comp) * ca * b.coeffs()[pos[comp]];
  }
  return acc;
}

Eigen::MatrixXd operator_matrix(int dim, int degree,
                                const std::function<KForm(const KForm&)>& map) {
  const auto n = static_cast<Eigen::Index>(binomial(dim, degree));
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    KForm e(dim, degree);
    e.coeffs()[j] = 1.0;
    const KForm img = map(e);
    if (img.dim() != dim || img.degree() != degree) throw Error("operator changes the form space");
    out.col(j) = img.coeffs();
  }
  return out;
}

// ------------------------------------------------------ MatrixValuedForm

double anti_hermitian_defect(const Eigen::MatrixXcd& m) {
  return (m + m.adjoint()).cwiseAbs().maxCoeff();
}

MatrixValuedForm::MatrixValuedForm(int dim, int degree, int rank)
    : dim_(dim), degree_(degree), rank_(rank) {
  check_dim(dim);
  if (degree < 0 || degree > dim) throw Error("form degree out of range");
  if (rank < 1) throw Error("bundle rank must be at least 1");
  coeffs_.assign(binomial(dim, degree), Eigen::MatrixXcd::Zero(rank, rank));
}

MatrixValuedForm::MatrixValuedForm(int dim, int degree, int rank,
                                   std::vector<Eigen::MatrixXcd> coeffs, double tol)
    : MatrixValuedForm(dim, degree, rank) {
  if (coeffs.size() != coeffs_.size()) throw Error("coefficient count does not match C(m,k)");
  double scale = 1.0;
  for (const auto& c : coeffs) {
    if (c.rows() != rank || c.cols() != rank) throw Error("coefficient matrix has the wrong size");
    scale = std::max(scale, c.cwiseAbs().maxCoeff());
  }
  for (const auto& c : coeffs)
    if (anti_hermitian_defect(c) > tol * scale)
      throw Error("coefficient matrix is not anti-hermitian");
  coeffs_ = std::move(coeffs);
}

MatrixValuedForm MatrixValuedForm::tensor(const KForm& a, const Eigen::MatrixXcd& x) {
  if (x.rows() != x.cols()) throw Error("coefficient matrix must be square");
  std::vector<Eigen::MatrixXcd> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a.coeffs()[static_cast<Eigen::Index>(i)] * x;
  return MatrixValuedForm(a.dim(), a.degree(), static_cast<int>(x.rows()), std::move(c));
}

double MatrixValuedForm::killing_norm_sq() const {
  double acc = 0.0;
  for (const auto& c : coeffs_) acc += c.squaredNorm();
  return acc;
}

double MatrixValuedForm::killing_norm() const { return std::sqrt(killing_norm_sq()); }

MatrixValuedForm MatrixValuedForm::trace_free() const {
  MatrixValuedForm out = *this;
  const auto id = Eigen::MatrixXcd::Identity(rank_, rank_);
  for (auto& c : out.coeffs_) c -= (c.trace() / static_cast<double>(rank_)) * id;
  return out;
}

KForm MatrixValuedForm::trace_imag() const {
  KForm out(dim_, degree_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    out.coeffs()[static_cast<Eigen::Index>(i)] = coeffs_[i].trace().imag();
  return out;
}

MatrixValuedForm MatrixValuedForm::apply(const Eigen::MatrixXd& map) const {
  const auto n = static_cast<Eigen::Index>(coeffs_.size());
  if (map.rows() != n || map.cols() != n) throw Error("form map has the wrong size");
  MatrixValuedForm out(dim_, degree_, rank_);
  for (Eigen::Index s = 0; s < n; ++s)
    for (Eigen::Index t = 0; t < n; ++t) {
      const double w = map(s, t);
      if (w != 0.0) out.coeffs_[static_cast<std::size_t>(s)] += w * coeffs_[static_cast<std::size_t>(t)];
    }
  return out;
}

void MatrixValuedForm::check_compatible(const MatrixValuedForm& o) const {
  if (dim_ != o.dim_ || degree_ != o.degree_) throw Error("form shape mismatch");
  if (rank_ != o.rank_) throw Error("rank mismatch");
}

MatrixValuedForm& MatrixValuedForm::operator+=(const MatrixValuedForm& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

MatrixValuedForm& MatrixValuedForm::operator-=(const MatrixValuedForm& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

MatrixValuedForm& MatrixValuedForm::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

KForm trace_wedge(const MatrixValuedForm& f, const MatrixValuedForm& g) {
  if (f.dim() != g.dim()) throw Error("dimension mismatch in trace_wedge");
  if (f.rank() != g.rank()) throw Error("rank mismatch in trace_wedge");
  const int m = f.dim();
  if (f.degree() + g.degree() > m) return KForm(m, m);
  KForm out(m, f.degree() + g.degree());
  const auto& mf = basis_masks(m, f.degree());
  const auto& mg = basis_masks(m, g.degree());
  const auto& pos = tables().position[m];
  for (std::size_t i = 0; i < mf.size(); ++i) {
    const auto& a = f.coeff(i);
    if (a.isZero(0.0)) continue;
    for (std::size_t j = 0; j < mg.size(); ++j) {
      const int s = merge_sign(mf[i], mg[j]);
      if (s == 0) continue;
      // Tr(AB) = sum_{kl} A_kl B_lk; the imaginary part cancels for u(r).
      const double tr = (a.cwiseProduct(g.coeff(j).transpose())).sum().real();
      out.coeffs()[pos[mf[i] | mg[j]]] += s * tr;
    }
  }
  return out;
}

MatrixValuedForm matrix_wedge_scalar(const MatrixValuedForm& f, const KForm& a) {
  if (f.dim() != a.dim()) throw Error("dimension mismatch in matrix_wedge_scalar");
  const int m = f.dim();
  if (f.degree() + a.degree() > m) return MatrixValuedForm(m, m, f.rank());
  MatrixValuedForm out(m, f.degree() + a.degree(), f.rank());
  std::vector<Eigen::MatrixXcd> c = out.coeffs();
  const auto& mf = basis_masks(m, f.degree());
  const auto& ma = basis_masks(m, a.degree());
  const auto& pos = tables().position[m];
  for (std::size_t i = 0; i < mf.size(); ++i)
    for (std::size_t j = 0; j < ma.size(); ++j) {
      const double w = a.coeffs()[static_cast<Eigen::Index>(j)];
      if (w == 0.0) continue;
      const int s = merge_sign(mf[i], ma[j]);
      if (s == 0) continue;
      c[pos[mf[i] | ma[j]]] += (s * w) * f.coeff(i);
    }
  return MatrixValuedForm(m, out.degree(), f.rank(), std::move(c));
}

}  // namespace holorot
