#include "gwcalc/invariants.hpp"

#include <algorithm>

namespace gwcalc {

namespace {

// <sum_{i = lower}^{g} form^i / i! ^ l, l_O1>
Integer truncated_exp_pairing(const Multivector& form, std::int64_t lower, const Multivector& l,
                              const SurfaceTopology& topo) {
  const int g = topo.genus();
  Integer total = 0;
  for (std::int64_t i = std::max<std::int64_t>(0, lower); i <= g; ++i) {
    const Multivector power = divided_power(form, static_cast<unsigned>(i), topo);
    total += top_pairing(wedge(power, l, topo), topo);
  }
  return total;
}

}  // namespace

Integer ggw_abelian(int genus, std::int64_t r0, std::int64_t v, const Multivector& l) {
  if (r0 < 1) throw InputError("r0 must be positive");
  const SurfaceTopology topo(genus);
  const Multivector form = Integer(r0) * theta_class(topo);
  return truncated_exp_pairing(form, genus - v, l, topo);
}

Integer quot_count(int genus, std::int64_t r0) {
  if (genus < 0) throw InputError("genus must be non-negative");
  if (r0 < 1) throw InputError("r0 must be positive");
  return ipow(Integer(r0), static_cast<unsigned long>(genus));
}

Multivector theta_c(std::int64_t pair_with_fibre, const SurfaceTopology& topo) {
  if (pair_with_fibre % 2 != 0) {
    throw InputError("<c, F> must be even for a Spin^c determinant class");
  }
  return Integer(pair_with_fibre / 2) * theta_class(topo);
}

SWResult sw_for_class(const H2Class& c, const RuledSurfaceGeometry& geom, const Multivector& l) {
  const SurfaceTopology topo(geom.genus);
  SWResult out;
  out.c = c;
  out.pair_with_fibre = intersect(c, H2Class::fibre(), geom);
  out.w_c = index_wc(c, geom);
  out.value_signed_chamber = 0;
  out.value_opposite_chamber = 0;
  if (out.pair_with_fibre == 0) return out;

  out.sign = out.pair_with_fibre > 0 ? 1 : -1;
  if (out.w_c % 2 != 0) throw InternalError("w_c is odd for a ruled-surface Spin^c class");
  const Multivector form = theta_c(out.pair_with_fibre, topo);
  out.value_signed_chamber = out.sign * truncated_exp_pairing(form, geom.genus - out.w_c / 2, l, topo);
  return out;
}

SWResult sw_ruled(std::int64_t d, std::int64_t n, const RuledSurfaceGeometry& geom,
                  const Multivector& l) {
  return sw_for_class(spinc_det(d, n, geom), geom, l);
}

QuotProblem douady_quot_problem(std::int64_t d, std::int64_t n, const RuledSurfaceGeometry& geom) {
  if (n < 0) throw InputError("symmetric power n must be non-negative");
  return QuotProblem{geom.genus, BundleType(1, -d), BundleType(n + 1, n * (n + 1) * geom.v0_degree / 2)};
}

bool sw_equals_ggw_check(std::int64_t d, std::int64_t n, const RuledSurfaceGeometry& geom,
                         const Multivector& l) {
  const SWResult sw = sw_ruled(d, n, geom, l);
  const QuotProblem q = douady_quot_problem(d, n, geom);
  const std::int64_t v = abelian_v(q.target.rank, q.kernel.degree, q.target.degree, geom.genus);
  const Integer ggw = ggw_abelian(geom.genus, q.target.rank, v, l);
  return sw.value_signed_chamber == sw.sign * ggw && sw.value_opposite_chamber == 0;
}

}  // namespace gwcalc
