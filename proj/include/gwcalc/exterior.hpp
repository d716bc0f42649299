#pragma once

// Integer exterior algebra on H_1 of a closed genus-g surface.
//
// Generators are ordered a1 < b1 < a2 < b2 < ... < ag < bg and addressed by a
// zero-based index (a_k -> 2k-2, b_k -> 2k-1). A basis blade is a subset of
// generators stored as a bitmask; the wedge of blades in canonical order is
// the product taken in increasing generator order.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "gwcalc/numeric.hpp"

namespace gwcalc {

class SurfaceTopology {
 public:
  static constexpr int kMaxGenus = 32;

  explicit SurfaceTopology(int genus);

  int genus() const { return genus_; }
  int generator_count() const { return 2 * genus_; }

  /// "a3", "b1", ... for a zero-based generator index.
  std::string generator_name(int index) const;

  /// Intersection number of two basis generators: a_i.b_i = 1, b_i.a_i = -1.
  int intersection(int i, int j) const;

  /// Mask of the orientation blade a1^b1^...^ag^bg.
  std::uint64_t top_mask() const;

  bool operator==(const SurfaceTopology&) const = default;

 private:
  int genus_;
};

using Blade = std::uint64_t;

inline int blade_grade(Blade b) { return __builtin_popcountll(b); }

/// Sign of reordering the concatenation x.y of two disjoint blades into
/// canonical order; 0 when they share a generator.
int blade_product_sign(Blade x, Blade y);

class Multivector {
 public:
  using Terms = std::map<Blade, Integer>;

  Multivector() = default;
  Multivector(const Integer& scalar);  // NOLINT(google-explicit-constructor)
  Multivector(long scalar) : Multivector(Integer(scalar)) {}  // NOLINT

  static Multivector blade(Blade b, const Integer& coef = 1);
  /// Single generator by zero-based index.
  static Multivector generator(int index, const SurfaceTopology& topo);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Integer coefficient(Blade b) const;

  /// Highest generator index used plus one (0 for scalars).
  int span() const;

  /// Grade if every term has the same grade; -1 for zero or mixed grades.
  int homogeneous_grade() const;

  void add_term(Blade b, const Integer& coef);

  Multivector& operator+=(const Multivector& rhs);
  Multivector& operator-=(const Multivector& rhs);
  Multivector& operator*=(const Integer& k);
  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(const Integer& k, Multivector a) { return a *= k; }
  Multivector operator-() const;

  bool operator==(const Multivector&) const = default;

 private:
  Terms terms_;
};

Multivector wedge(const Multivector& x, const Multivector& y, const SurfaceTopology& topo);
Multivector combine(const Integer& c1, const Multivector& x, const Integer& c2, const Multivector& y);

/// Theta = sum_i a_i ^ b_i, the intersection form.
Multivector theta_class(const SurfaceTopology& topo);

/// sum_k x^k / k!. Requires x even and homogeneous (or zero).
Multivector exp_even(const Multivector& x, const SurfaceTopology& topo);

/// x^k / k! computed with exact division; same requirements as exp_even.
Multivector divided_power(const Multivector& x, unsigned k, const SurfaceTopology& topo);

/// <x, l_O1>: the coefficient of a1^b1^...^ag^bg.
Integer top_pairing(const Multivector& x, const SurfaceTopology& topo);

Multivector grade_part(const Multivector& x, int k);

/// Parses `2*a1^b1 - a2^b2 + 3`. Generators may appear in any order inside a
/// blade; the sign of sorting them is applied.
Multivector parse_multivector(std::string_view text, const SurfaceTopology& topo);

/// Canonical text: terms by grade then blade order, e.g. `3 + 2*a1^b1 - a2^b2`.
std::string to_string(const Multivector& x, const SurfaceTopology& topo);

}  // namespace gwcalc
