#include "holorot/numerics.hpp"

#include "holorot/exterior.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

namespace holorot {

int count_eigenvalues_above(const Eigen::MatrixXd& sym, double cutoff) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error("eigenvalue computation failed");
  return static_cast<int>((es.eigenvalues().array() > cutoff).count());
}

int projector_rank(const Eigen::MatrixXd& projector, double cutoff) {
  const Eigen::MatrixXd sym = 0.5 * (projector + projector.transpose());
  return count_eigenvalues_above(sym, cutoff);
}

Eigen::MatrixXd projector_range(const Eigen::MatrixXd& projector, double cutoff) {
  const Eigen::MatrixXd sym = 0.5 * (projector + projector.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  if (es.info() != Eigen::Success) throw Error("eigenvalue computation failed");
  std::vector<Eigen::Index> keep;
  // Eigen sorts ascending; keep the largest first for a stable layout.
  for (Eigen::Index i = sym.rows() - 1; i >= 0; --i)
    if (es.eigenvalues()[i] > cutoff) keep.push_back(i);
  Eigen::MatrixXd out(sym.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c)
    out.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]);
  return out;
}

Eigen::MatrixXd intersect_projector_ranges(const std::vector<Eigen::MatrixXd>& projectors,
                                           double tol) {
  if (projectors.empty()) throw Error("no subspaces to intersect");
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(projectors[0].rows(), projectors[0].cols());
  for (const auto& p : projectors) sum += 0.5 * (p + p.transpose());
  const double target = static_cast<double>(projectors.size());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sum);
  if (es.info() != Eigen::Success) throw Error("eigenvalue computation failed");
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = sum.rows() - 1; i >= 0; --i)
    if (es.eigenvalues()[i] > target - tol) keep.push_back(i);
  Eigen::MatrixXd out(sum.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c)
    out.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]);
  return out;
}

Eigen::MatrixXd orthonormal_span(const Eigen::MatrixXd& m, double cutoff) {
  if (m.cols() == 0) return Eigen::MatrixXd(m.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  const double scale = std::max(1.0, svd.singularValues()[0]);
  Eigen::Index r = 0;
  while (r < svd.singularValues().size() && svd.singularValues()[r] > cutoff * scale) ++r;
  return svd.matrixU().leftCols(r);
}

Eigen::VectorXd principal_angle_sines(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error("principal angles need subspaces of equal dimension");
  if (a.cols() == 0) return Eigen::VectorXd(0);
  // Residual of a after projecting onto b: its singular values are the sines.
  const Eigen::MatrixXd resid = a - b * (b.transpose() * a);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(resid);
  return svd.singularValues();
}

Eigen::MatrixXd span_projector(const Eigen::MatrixXd& basis) { return basis * basis.transpose(); }

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Eigen::VectorXd Rng::normal_vector(Eigen::Index n) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = normal();
  return v;
}

Eigen::MatrixXd Rng::normal_matrix(Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = normal();
  return m;
}

Eigen::VectorXd Rng::unit_vector(Eigen::Index n) {
  Eigen::VectorXd v = normal_vector(n);
  double len = v.norm();
  while (len < 1e-12) {
    v = normal_vector(n);
    len = v.norm();
  }
  return v / len;
}

Eigen::MatrixXd haar_orthogonal(Eigen::Index n, Rng& rng) {
  const Eigen::MatrixXd g = rng.normal_matrix(n, n);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the sign ambiguity of QR so the distribution is Haar.
  for (Eigen::Index i = 0; i < n; ++i)
    if (r(i, i) < 0) q.col(i) *= -1.0;
  return q;
}

Eigen::MatrixXd haar_special_orthogonal(Eigen::Index n, Rng& rng) {
  Eigen::MatrixXd q = haar_orthogonal(n, rng);
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

std::vector<Eigen::Vector3d> fibonacci_sphere(std::size_t count) {
  std::vector<Eigen::Vector3d> out;
  out.reserve(count);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(count);
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(i);
    out.emplace_back(rho * std::cos(phi), rho * std::sin(phi), z);
  }
  return out;
}

std::vector<Eigen::VectorXd> quasi_uniform_sphere(int dim, std::size_t count) {
  // Additive recurrence with the generalized golden ratio phi_d
  // (phi_d^{d+1} = phi_d + 1) over an even number of cube coordinates.
  const int cube = dim + (dim % 2);
  double phi = 2.0;
  for (int it = 0; it < 64; ++it) phi = std::pow(1.0 + phi, 1.0 / (cube + 1));
  std::vector<double> alpha(static_cast<std::size_t>(cube));
  for (int j = 0; j < cube; ++j) alpha[static_cast<std::size_t>(j)] = std::fmod(std::pow(1.0 / phi, j + 1), 1.0);

  std::vector<Eigen::VectorXd> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<double> u(static_cast<std::size_t>(cube));
    for (int j = 0; j < cube; ++j) {
      const double x = 0.5 + alpha[static_cast<std::size_t>(j)] * static_cast<double>(i + 1);
      u[static_cast<std::size_t>(j)] = x - std::floor(x);
    }
    Eigen::VectorXd g(cube);
    for (int j = 0; j < cube; j += 2) {
      const double u1 = std::max(u[static_cast<std::size_t>(j)], 1e-300);
      const double radius = std::sqrt(-2.0 * std::log(u1));
      const double angle = 2.0 * std::numbers::pi * u[static_cast<std::size_t>(j + 1)];
      g[j] = radius * std::cos(angle);
      g[j + 1] = radius * std::sin(angle);
    }
    Eigen::VectorXd p = g.head(dim);
    out.push_back(p / p.norm());
  }
  return out;
}

unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HOLOROT_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
    } catch (const std::exception&) {
      // Unparsable values leave the default in place.
    }
  }
  return hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace holorot
