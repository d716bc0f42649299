#pragma once

// Riemann-Roch bookkeeping on a curve, the abelian chamber structure, and the
// intersection ring H^2 of a ruled surface X = P(V0) over a genus-g curve.

#include <cstdint>
#include <string>

#include "gwcalc/numeric.hpp"

namespace gwcalc {

/// Smooth type of a bundle on the curve.
struct BundleType {
  std::int64_t rank = 1;
  std::int64_t degree = 0;

  BundleType() = default;
  BundleType(std::int64_t r, std::int64_t d);

  bool operator==(const BundleType&) const = default;
};

/// Quotients of a rank-r0 target E0 with kernel E on a genus-g curve.
struct QuotProblem {
  int genus = 0;
  BundleType kernel;
  BundleType target;
};

/// Parameters of the abelian vortex problem. `t` is measured in units of 2*pi,
/// so the actual continuous parameter is 2*pi*t and the chamber comparison
/// stays rational.
struct ChamberParams {
  Rational t;
  Rational volume;
  BundleType kernel;

  ChamberParams(Rational t_over_two_pi, Rational vol, BundleType e);

  /// Builds parameters whose scaled threshold t*Vol/(2*pi) equals `tau`.
  static ChamberParams from_scaled(const Rational& tau, BundleType e);

  /// t * Vol / (2*pi).
  Rational scaled() const { return t * volume; }
};

enum class Chamber { Empty, Interesting, Wall };

std::string to_string(Chamber c);

struct RuledSurfaceGeometry {
  int genus = 0;
  std::int64_t v0_degree = 0;

  RuledSurfaceGeometry(int g, std::int64_t d0);
};

/// coef_s * s + coef_f * f, where s = c1(O(1)) and f is the fibre class.
struct H2Class {
  std::int64_t coef_s = 0;
  std::int64_t coef_f = 0;

  static H2Class fibre() { return {0, 1}; }
  static H2Class section() { return {1, 0}; }

  H2Class& operator+=(const H2Class& o) {
    coef_s += o.coef_s;
    coef_f += o.coef_f;
    return *this;
  }
  friend H2Class operator+(H2Class a, const H2Class& b) { return a += b; }
  friend H2Class operator-(H2Class a, const H2Class& b) {
    return {a.coef_s - b.coef_s, a.coef_f - b.coef_f};
  }
  friend H2Class operator*(std::int64_t k, const H2Class& a) {
    return {k * a.coef_s, k * a.coef_f};
  }
  bool operator==(const H2Class&) const = default;
};

/// chi = d + r(1 - g).
std::int64_t euler_char(const BundleType& b, int genus);

/// chi(E^v (x) E0) - chi(E^v (x) E) = r d0 - r0 d + r (r0 - r)(1 - g).
std::int64_t expected_dim(const QuotProblem& p);

/// expected_dim for a line-bundle kernel.
std::int64_t abelian_v(std::int64_t r0, std::int64_t d, std::int64_t d0, int genus);

/// Only the abelian (rank-one kernel) chambers are modelled.
Chamber chamber_classify(const ChamberParams& p);

/// s^2 = d0, s.f = 1, f^2 = 0.
std::int64_t intersect(const H2Class& x, const H2Class& y, const RuledSurfaceGeometry& geom);

/// K_X = -2s + (2g - 2 + d0) f.
H2Class canonical_class(const RuledSurfaceGeometry& geom);

/// Determinant class of the Spin^c structure whose twisting line bundle has
/// class d f + n s: c = 2(d f + n s) - K_X.
H2Class spinc_det(std::int64_t d, std::int64_t n, const RuledSurfaceGeometry& geom);

/// w_c = (c^2 - 3 sigma - 2 e) / 4 with sigma = 0, e = 4(1 - g).
std::int64_t index_wc(const H2Class& c, const RuledSurfaceGeometry& geom);

/// w(m) = chi(M) - chi(O_X) = m.(m - K_X) / 2.
std::int64_t douady_index(const H2Class& m, const RuledSurfaceGeometry& geom);

/// Euler characteristic and signature of a ruled surface.
inline std::int64_t ruled_euler_number(int genus) { return 4 * (1 - std::int64_t{genus}); }
inline constexpr std::int64_t kRuledSignature = 0;

}  // namespace gwcalc
