#include "gwcalc/index_arith.hpp"

namespace gwcalc {

BundleType::BundleType(std::int64_t r, std::int64_t d) : rank(r), degree(d) {
  if (r < 1) throw InputError("bundle rank must be positive, got " + std::to_string(r));
}

ChamberParams::ChamberParams(Rational t_over_two_pi, Rational vol, BundleType e)
    : t(canonical(std::move(t_over_two_pi))), volume(canonical(std::move(vol))), kernel(e) {
  if (volume <= 0) throw InputError("volume must be positive");
}

ChamberParams ChamberParams::from_scaled(const Rational& tau, BundleType e) {
  return ChamberParams(tau, Rational(1), e);
}

std::string to_string(Chamber c) {
  switch (c) {
    case Chamber::Empty:
      return "empty";
    case Chamber::Interesting:
      return "interesting";
    case Chamber::Wall:
      return "wall";
  }
  return "?";
}

RuledSurfaceGeometry::RuledSurfaceGeometry(int g, std::int64_t d0) : genus(g), v0_degree(d0) {
  if (g < 0) throw InputError("genus must be non-negative");
}

std::int64_t euler_char(const BundleType& b, int genus) {
  if (genus < 0) throw InputError("genus must be non-negative");
  return b.degree + b.rank * (1 - genus);
}

std::int64_t expected_dim(const QuotProblem& p) {
  const std::int64_t r = p.kernel.rank, d = p.kernel.degree;
  const std::int64_t r0 = p.target.rank, d0 = p.target.degree;
  return r * d0 - r0 * d + r * (r0 - r) * (1 - p.genus);
}

std::int64_t abelian_v(std::int64_t r0, std::int64_t d, std::int64_t d0, int genus) {
  if (r0 < 1) throw InputError("target rank r0 must be positive");
  return d0 - r0 * d + (r0 - 1) * (1 - genus);
}

Chamber chamber_classify(const ChamberParams& p) {
  if (p.kernel.rank != 1) {
    throw UnsupportedError("chamber structure is only modelled for rank-one kernels");
  }
  const Rational lhs = p.scaled();
  const Rational threshold(-p.kernel.degree);
  if (lhs > threshold) return Chamber::Interesting;
  if (lhs < threshold) return Chamber::Empty;
  return Chamber::Wall;
}

std::int64_t intersect(const H2Class& x, const H2Class& y, const RuledSurfaceGeometry& geom) {
  return x.coef_s * y.coef_s * geom.v0_degree + x.coef_s * y.coef_f + x.coef_f * y.coef_s;
}

H2Class canonical_class(const RuledSurfaceGeometry& geom) {
  return {-2, 2 * std::int64_t{geom.genus} - 2 + geom.v0_degree};
}

H2Class spinc_det(std::int64_t d, std::int64_t n, const RuledSurfaceGeometry& geom) {
  return 2 * H2Class{n, d} - canonical_class(geom);
}

std::int64_t index_wc(const H2Class& c, const RuledSurfaceGeometry& geom) {
  const std::int64_t numerator =
      intersect(c, c, geom) - 3 * kRuledSignature - 2 * ruled_euler_number(geom.genus);
  if (numerator % 4 != 0) {
    throw InputError("c^2 - 3 sigma - 2 e is not divisible by 4; c is not characteristic");
  }
  return numerator / 4;
}

std::int64_t douady_index(const H2Class& m, const RuledSurfaceGeometry& geom) {
  const std::int64_t twice = intersect(m, m - canonical_class(geom), geom);
  if (twice % 2 != 0) throw InternalError("m.(m - K) is odd");
  return twice / 2;
}

}  // namespace gwcalc
