#pragma once

// Independent evaluation of the abelian invariant through the projective
// bundle model of the quot space over Pic(Sigma).
//
// After twisting by a large power of an auxiliary degree-one line bundle, the
// abelian quot space is the zero locus of k sections of O_P(1) on the
// projectivization P of a rank-R bundle over Pic. Integrating a tautological
// class h^a * pi^* lambda over it becomes a Segre class computation on Pic:
//
//   <h^a lambda, [Quot]> = int_P h^{a+k} lambda = int_Pic s_{a+k-N} lambda,
//
// with N = R - 1. The Segre series is obtained from the Chern character of the
// pushforward of the Poincare bundle, computed by Grothendieck-Riemann-Roch.

#include <cstdint>
#include <vector>

#include "gwcalc/exterior.hpp"

namespace gwcalc {

/// Truncated power series sum c_i theta^i in the nilpotent class theta of
/// Pic(Sigma), theta^{g+1} = 0.
class ThetaSeries {
 public:
  explicit ThetaSeries(int genus);
  ThetaSeries(int genus, std::vector<Rational> coefficients);

  static ThetaSeries constant(int genus, const Rational& c);
  /// c * theta
  static ThetaSeries theta(int genus, const Rational& c = 1);

  int genus() const { return static_cast<int>(coef_.size()) - 1; }
  const Rational& operator[](int i) const { return coef_.at(i); }
  Rational& operator[](int i) { return coef_.at(i); }
  const std::vector<Rational>& coefficients() const { return coef_; }

  ThetaSeries& operator+=(const ThetaSeries& o);
  ThetaSeries& operator-=(const ThetaSeries& o);
  ThetaSeries& operator*=(const Rational& k);
  friend ThetaSeries operator+(ThetaSeries a, const ThetaSeries& b) { return a += b; }
  friend ThetaSeries operator-(ThetaSeries a, const ThetaSeries& b) { return a -= b; }
  friend ThetaSeries operator*(const Rational& k, ThetaSeries a) { return a *= k; }
  friend ThetaSeries operator*(const ThetaSeries& a, const ThetaSeries& b);

  /// exp of a series with vanishing constant term.
  ThetaSeries exp() const;
  /// Multiplicative inverse; needs constant term +1 or -1.
  ThetaSeries inverse() const;

  bool operator==(const ThetaSeries& o) const;

 private:
  void check_same_genus(const ThetaSeries& o) const;
  std::vector<Rational> coef_;
};

/// A class A(theta) + B(theta) gamma + C(theta) eta on Pic x Sigma, where eta
/// is the point class of Sigma and gamma the Kunneth (1,1) component of the
/// Poincare bundle. Relations: eta^2 = 0, gamma eta = 0, gamma^2 = -2 theta eta.
class KunnethClass {
 public:
  explicit KunnethClass(int genus);
  KunnethClass(ThetaSeries pure, ThetaSeries gamma_part, ThetaSeries eta_part);

  static KunnethClass eta(int genus, const Rational& c = 1);
  static KunnethClass gamma(int genus, const Rational& c = 1);
  static KunnethClass constant(int genus, const Rational& c);

  int genus() const { return pure_.genus(); }
  const ThetaSeries& pure() const { return pure_; }
  const ThetaSeries& gamma_part() const { return gamma_; }
  const ThetaSeries& eta_part() const { return eta_; }

  KunnethClass& operator+=(const KunnethClass& o);
  friend KunnethClass operator+(KunnethClass a, const KunnethClass& b) { return a += b; }
  friend KunnethClass operator*(const KunnethClass& a, const KunnethClass& b);
  KunnethClass scaled(const Rational& k) const;

  /// exp of a class with nilpotent constant term.
  KunnethClass exp() const;

  /// Slant with [Sigma]: the eta coefficient. Gamma-linear terms have odd
  /// degree along Sigma and integrate to zero.
  ThetaSeries integrate_over_curve() const { return eta_; }

  bool operator==(const KunnethClass& o) const;

 private:
  ThetaSeries pure_, gamma_, eta_;
};

/// ch of the Poincare bundle on Pic^{d'} x Sigma normalized so that its
/// restrictions to Pic x {x} are topologically trivial: exp(d' eta + gamma).
KunnethClass poincare_chern(std::int64_t dprime, int genus);

/// ch(pr_! P^{(+) r0}) = r0 * int_Sigma ch(P) td(Sigma).
ThetaSeries grr_pushforward(std::int64_t dprime, std::int64_t r0, int genus);

/// Total Chern series from a Chern character via Newton's identities.
ThetaSeries chern_series(const ThetaSeries& ch);

/// Inverse of the total Chern series.
ThetaSeries segre_series(const ThetaSeries& ch);

/// Projective-bundle model of one abelian quot space.
class QuotPipeline {
 public:
  /// Throws InputError unless aux_twist makes the pushforward a vector bundle
  /// and leaves a non-negative number of cutting sections.
  QuotPipeline(int genus, std::int64_t r0, std::int64_t d, std::int64_t d0, std::int64_t aux_twist);

  /// Smallest twist accepted by the constructor.
  static std::int64_t min_aux_twist(int genus, std::int64_t r0, std::int64_t d, std::int64_t d0);

  int genus() const { return topo_.genus(); }
  std::int64_t twisted_degree() const { return dprime_; }
  std::int64_t sections() const { return k_; }
  std::int64_t fibre_dim() const { return fibre_dim_; }
  std::int64_t expected_dim() const { return v_; }
  const ThetaSeries& segre() const { return segre_; }

  /// <h^a lambda, [Quot]> for a class lambda in Lambda^* H^1(Pic), identified
  /// with Lambda^* H_1(Sigma) so that theta corresponds to Theta.
  Integer pair(std::int64_t a, const Multivector& lambda) const;

  /// <delta(sum_{a >= 0} u^a l), [Quot]>.
  Integer invariant(const Multivector& l) const;

 private:
  SurfaceTopology topo_;
  std::int64_t dprime_, k_, fibre_dim_, v_;
  ThetaSeries segre_;
  std::vector<Multivector> theta_powers_;  // Theta^j, j = 0..g
};

Integer ggw_via_segre(int genus, std::int64_t r0, std::int64_t d, std::int64_t d0,
                      std::int64_t aux_twist, const Multivector& l);

}  // namespace gwcalc
