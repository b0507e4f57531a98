// Project-wide conventions.
//
//  * Kahler form of an orthogonal complex structure J: omega(x, y) = <Jx, y>.
//    In coordinates the dx_i ^ dx_j coefficient (i < j) is J(j, i).
//  * Standard structure on R^{2m}: e_{2i-1} -> e_{2i}, e_{2i} -> -e_{2i-1};
//    its Kahler form is dx_12 + dx_34 + ... and |omega|^2 = m.
//  * (C_J a)(x, y) = a(Jx, Jy). On real 2-forms the +1 eigenspace of C_J is
//    the real (1,1) part, the -1 eigenspace the real (2,0)+(0,2) part.
//  * Contraction: Lambda_J a = <a, omega_J>, so Lambda_J omega_J = m (not 1).
//  * Matrix-valued forms take values in u(r); the Killing product is
//    <B, C> = -Tr(BC) and ||F||^2 = sum_S -Tr(F_S^2).
//  * For a HYM curvature, Lambda_J F = i * lambda * Id with lambda real; the
//    reported lambda uses the normalization above.
//  * Integrals over the flat torus R^m / Z^m are top-degree coefficients.
//  * Chern-Weil: c_1 = (i / 2 pi) Tr F; the second Chern pairings use
//    (1 / 8 pi^2) Tr(F ^ F) as in the calibration arguments.
#pragma once

#include <numbers>

namespace holorot {

inline constexpr double kDefaultTol = 1e-9;
inline constexpr double kEqualityTol = 1e-7;
inline constexpr double kStructureTol = 1e-10;
inline constexpr double kChernWeil = 1.0 / (8.0 * std::numbers::pi * std::numbers::pi);

}  // namespace holorot
