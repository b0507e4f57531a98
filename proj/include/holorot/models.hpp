// Seeded generators of constant-curvature models and their JSON persistence.
#pragma once

#include "holorot/exterior.hpp"
#include "holorot/k3product.hpp"
#include "holorot/kahler.hpp"
#include "holorot/numerics.hpp"
#include "holorot/quaternionic.hpp"
#include "holorot/spin7.hpp"

#include <cstdint>
#include <filesystem>
#include <string>

namespace holorot {

enum class AmbientKind { Complex, Quaternionic, Spin7, Product };

std::string to_string(AmbientKind kind);
AmbientKind ambient_kind_from_string(const std::string& s);

struct Ambient {
  int dim = 0;
  AmbientKind kind = AmbientKind::Complex;
  int n = 0;  // quaternionic dimension for Quaternionic, 0 otherwise

  bool operator==(const Ambient&) const = default;
};

struct CurvatureModel {
  MatrixValuedForm f;
  Ambient ambient;
  std::uint64_t seed = 0;
  std::string provenance;
};

/// (G - G^*)/2 + i diag(normals); optionally projected to trace zero.
Eigen::MatrixXcd random_anti_hermitian(int r, Rng& rng, bool trace_free = false);
/// Independent random anti-hermitian coefficient on every basis 2-form.
MatrixValuedForm random_matrix_form(int dim, int r, Rng& rng, bool trace_free = false);

/// Primitive (1,1) part with respect to j, plus i (lambda / m) omega Id so that
/// hym_check reports lambda.
CurvatureModel random_hym(const ComplexStructure& j, int r, std::uint64_t seed, double lambda = 0.0);
/// The same curvature tagged with a quaternionic ambient.
CurvatureModel random_hym(const QuaternionicTriple& t, int r, std::uint64_t seed);

CurvatureModel random_hyperholomorphic(const QuaternionicTriple& t, int r, std::uint64_t seed);

/// Trace-free curvature in Lambda^2_21; with `hym`, also of type (1,1) for su4.i().
CurvatureModel random_spinstanton(const SU4Structure& su4, int r, std::uint64_t seed, bool hym = true);

/// Trace-free curvature in W_H of the standard triple on R^8, as a Spin(7)
/// model; its rotation sphere is one-dimensional.
CurvatureModel random_hyperkahler_spinstanton(int r, std::uint64_t seed);

/// A curvature on R^8 = V + V' built to realize `target`. For NotRotable,
/// variant 0 uses a generic mixed (1,1) component and variant 1 uses
/// lambda, lambda' != 0 without mixed part.
CurvatureModel random_product(Rotability target, int r, std::uint64_t seed, int variant = 0);

}  // namespace holorot
