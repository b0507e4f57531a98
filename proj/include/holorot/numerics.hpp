// Subspace arithmetic, deterministic random generation and sphere grids.
#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace holorot {

/// Number of eigenvalues of the symmetric matrix above `cutoff`.
int count_eigenvalues_above(const Eigen::MatrixXd& sym, double cutoff);

/// Rank of a (numerically) orthogonal projector: eigenvalues > cutoff.
int projector_rank(const Eigen::MatrixXd& projector, double cutoff = 1e-8);

/// Orthonormal basis (columns) of the range of an orthogonal projector.
Eigen::MatrixXd projector_range(const Eigen::MatrixXd& projector, double cutoff = 0.5);

/// Orthonormal basis of the intersection of the ranges of the given
/// orthogonal projectors: eigenvectors of sum(P_i) with eigenvalue within
/// `tol` of the number of projectors.
Eigen::MatrixXd intersect_projector_ranges(const std::vector<Eigen::MatrixXd>& projectors,
                                           double tol = 1e-8);

/// Orthonormal basis of the span of the columns of `m`.
Eigen::MatrixXd orthonormal_span(const Eigen::MatrixXd& m, double cutoff = 1e-10);

/// Sines of the principal angles between two subspaces given by orthonormal
/// bases of equal dimension, sorted descending (largest angle first).
Eigen::VectorXd principal_angle_sines(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Projector onto the span of orthonormal columns.
Eigen::MatrixXd span_projector(const Eigen::MatrixXd& basis);

/// Seeded generator with platform-independent uniform/normal draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0,1) with 53 random bits.
  double uniform();
  /// Standard normal via Box-Muller.
  double normal();
  Eigen::VectorXd normal_vector(Eigen::Index n);
  Eigen::MatrixXd normal_matrix(Eigen::Index rows, Eigen::Index cols);
  /// Point on the unit sphere S^{n-1}.
  Eigen::VectorXd unit_vector(Eigen::Index n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Haar-random element of SO(n).
Eigen::MatrixXd haar_special_orthogonal(Eigen::Index n, Rng& rng);

/// Haar-random element of O(n).
Eigen::MatrixXd haar_orthogonal(Eigen::Index n, Rng& rng);

/// Fibonacci lattice on S^2; points[i] = (x, y, z) with z descending.
std::vector<Eigen::Vector3d> fibonacci_sphere(std::size_t count);

/// Deterministic quasi-uniform points on S^{dim-1} from an additive
/// recurrence lattice in the unit cube pushed through Box-Muller.
std::vector<Eigen::VectorXd> quasi_uniform_sphere(int dim, std::size_t count);

/// Thread cap from HOLOROT_THREADS (default: hardware concurrency).
unsigned worker_count();

/// Evaluates fn(i) for i in [0, n) across worker threads; results are
/// stored by index so the output never depends on scheduling.
template <typename T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& fn);

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

template <typename T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace holorot
