#include "holorot/chern.hpp"

#include <cmath>

namespace holorot {

KForm chern_c1_form(const MatrixValuedForm& f) {
  // (i / 2 pi) Tr F with Tr F = i t.
  return (-1.0 / (2.0 * M_PI)) * f.trace_imag();
}

KForm chern_c2_form(const MatrixValuedForm& f) {
  const KForm t = f.trace_imag();
  // Tr F ^ Tr F = -t ^ t.
  return kChernWeil * (trace_wedge(f, f) + wedge(t, t));
}

KForm beta_form(const MatrixValuedForm& f) {
  const MatrixValuedForm f0 = f.trace_free();
  return kChernWeil * trace_wedge(f0, f0);
}

KForm beta_form_from_chern(const MatrixValuedForm& f) {
  const double r = f.rank();
  const KForm c1 = chern_c1_form(f);
  return chern_c2_form(f) - ((r - 1.0) / (2.0 * r)) * wedge(c1, c1);
}

}  // namespace holorot
