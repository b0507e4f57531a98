// Chern-Weil integrands of a constant curvature form.
#pragma once

#include "holorot/conventions.hpp"
#include "holorot/exterior.hpp"

namespace holorot {

/// c_1 = (i/2pi) Tr F.
KForm chern_c1_form(const MatrixValuedForm& f);
/// c_2 = (1/8pi^2)(Tr(F ^ F) - Tr F ^ Tr F).
KForm chern_c2_form(const MatrixValuedForm& f);

/// (1/8pi^2) Tr(F0 ^ F0) with F0 the trace-free part.
KForm beta_form(const MatrixValuedForm& f);
/// c_2 - (r-1)/(2r) c_1^2 from the unsplit curvature.
KForm beta_form_from_chern(const MatrixValuedForm& f);

}  // namespace holorot
