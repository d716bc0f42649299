#pragma once

// Closed-form invariants: the abelian gauge theoretical Gromov-Witten
// invariant, the point count of zero-dimensional abelian quot spaces, and the
// full Seiberg-Witten invariant of a ruled surface.

#include <cstdint>

#include "gwcalc/exterior.hpp"
#include "gwcalc/index_arith.hpp"

namespace gwcalc {

/// <sum_{i >= max(0, g - v)}^{g} (r0 Theta)^i / i! ^ l, l_O1>.
Integer ggw_abelian(int genus, std::int64_t r0, std::int64_t v, const Multivector& l);

/// r0^g.
Integer quot_count(int genus, std::int64_t r0);

/// Theta_c(a, b) = <c a b, [X]> / 2 restricted to pullback classes, which is
/// (<c, F> / 2) * Theta.
Multivector theta_c(std::int64_t pair_with_fibre, const SurfaceTopology& topo);

struct SWResult {
  int sign = 0;                   // sign <c, [F]>
  Integer value_signed_chamber;   // SW^{sign}
  Integer value_opposite_chamber; // SW^{-sign}, always 0
  std::int64_t w_c = 0;
  H2Class c;
  std::int64_t pair_with_fibre = 0;

  /// SW^+ and SW^- keyed by chamber sign rather than by <c,F>.
  Integer plus() const { return sign < 0 ? value_opposite_chamber : value_signed_chamber; }
  Integer minus() const { return sign < 0 ? value_signed_chamber : value_opposite_chamber; }
};

/// Full Seiberg-Witten invariant for the Spin^c class with determinant c.
SWResult sw_for_class(const H2Class& c, const RuledSurfaceGeometry& geom, const Multivector& l);

/// Same, for c = spinc_det(d, n, geom).
SWResult sw_ruled(std::int64_t d, std::int64_t n, const RuledSurfaceGeometry& geom,
                  const Multivector& l);

/// Quot problem on the base curve whose invariant should reproduce sw_ruled:
/// target S^n(V0) of rank n+1 and degree n(n+1)d0/2, kernel of degree -d.
QuotProblem douady_quot_problem(std::int64_t d, std::int64_t n, const RuledSurfaceGeometry& geom);

bool sw_equals_ggw_check(std::int64_t d, std::int64_t n, const RuledSurfaceGeometry& geom,
                         const Multivector& l);

}  // namespace gwcalc
