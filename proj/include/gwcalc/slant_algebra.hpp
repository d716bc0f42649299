#pragma once

// The algebra of slant-product symbols <c | beta> for the triple
// (Hom(C^r, C^r0), alpha_can, U(r)) with contractible fibre.
//
// Generators <c | beta> pair a cup product c of universal Chern classes
// c_1..c_r and degree-2 classes from the structure group K0 (written k0[name])
// with beta in {pt, S (the fundamental class), g_j (the j-th basis loop a1,b1,
// a2,...)}. Normalization rewrites every expression to the polynomial basis
//
//   Z[u_1..u_r, v_2..v_r] (x) Lambda^*[G[i,j]]
//
// with u_i = <c_i|pt> (degree 2i), v_i = <c_i|S> (degree 2i-2) and the odd
// generators G[i,j] = <c_i|g_j> (degree 2i-1).
//
// Text grammar:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := primary ('^' integer)*
//   primary:= integer | slant | '(' expr ')' | 'u' i | 'v' i | 'G[' i ',' j ']'
//   slant  := '<' atom ('.' atom)* '|' base '>'
//   atom   := 'c' i | 'k0' '[' ident ']'
//   base   := 'pt' | 'S' | 'g' j

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gwcalc/numeric.hpp"

namespace gwcalc {

struct AlgebraContext {
  int r = 1;
  int genus = 0;
  /// Degree d of the kernel bundle E.
  std::int64_t scalar_degree = 0;
  /// <kappa_0^*(c0), [Sigma]> for each declared degree-2 K0 class.
  std::map<std::string, std::int64_t> k0_eval;
  /// (c1|S) reduces to c1_sigma_sign * scalar_degree. The universal bundle is
  /// the dual of the kernel, hence -1.
  int c1_sigma_sign = -1;

  AlgebraContext() = default;
  AlgebraContext(int rank, int g, std::int64_t degree,
                 std::map<std::string, std::int64_t> k0 = {});

  int loop_count() const { return 2 * genus; }
  /// Intersection number beta_i . beta_j of basis loops (1-based).
  int loop_intersection(int i, int j) const;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& msg, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Unknown K0 class or other mismatch between an expression and its context.
class ContextError : public InputError {
 public:
  using InputError::InputError;
};

struct CupAtom {
  enum class Kind { Chern, BaseClass };
  Kind kind = Kind::Chern;
  int index = 0;     // Chern index for Kind::Chern
  std::string name;  // K0 class name for Kind::BaseClass

  int degree() const { return kind == Kind::Chern ? 2 * index : 2; }
  bool operator==(const CupAtom&) const = default;
};

struct SlantBase {
  enum class Kind { Point, Surface, Loop };
  Kind kind = Kind::Point;
  int loop = 0;  // 1-based, Kind::Loop only

  int degree() const { return kind == Kind::Point ? 0 : kind == Kind::Surface ? 2 : 1; }
  bool operator==(const SlantBase&) const = default;
};

struct SlantSymbol {
  std::vector<CupAtom> cup;
  SlantBase base;

  int cup_degree() const;
  int degree() const { return cup_degree() - base.degree(); }
  bool operator==(const SlantSymbol&) const = default;
};

struct SlantExpr {
  enum class Kind { Literal, Slant, Sum, Product, Negate, Power };
  Kind kind = Kind::Literal;
  Integer literal;
  SlantSymbol slant;
  unsigned exponent = 0;
  std::vector<SlantExpr> children;

  static SlantExpr make_literal(Integer value);
  static SlantExpr make_slant(SlantSymbol s);
  static SlantExpr make_sum(std::vector<SlantExpr> terms);
  static SlantExpr make_product(std::vector<SlantExpr> factors);
  static SlantExpr make_negate(SlantExpr e);
  static SlantExpr make_power(SlantExpr base, unsigned exponent);
};

/// Odd generator G[i,j] = <c_i | g_j>.
struct OddGen {
  int chern = 1;
  int loop = 1;
  int degree() const { return 2 * chern - 1; }
  auto operator<=>(const OddGen&) const = default;
};

struct Monomial {
  std::map<int, unsigned> u;  // u_i exponents
  std::map<int, unsigned> v;  // v_i exponents, i >= 2
  std::vector<OddGen> odd;    // strictly increasing

  int degree() const;
  bool is_unit() const { return u.empty() && v.empty() && odd.empty(); }
  bool operator==(const Monomial&) const = default;
  bool operator<(const Monomial& o) const;
};

class NormalForm {
 public:
  using Terms = std::map<Monomial, Integer>;

  NormalForm() = default;
  NormalForm(const Integer& scalar);  // NOLINT(google-explicit-constructor)
  static NormalForm monomial(Monomial m, const Integer& coef = 1);
  static NormalForm u(int i);
  static NormalForm v(int i);
  static NormalForm odd(int chern, int loop);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Monomial& m, const Integer& coef);

  NormalForm& operator+=(const NormalForm& o);
  NormalForm& operator-=(const NormalForm& o);
  NormalForm& operator*=(const Integer& k);
  friend NormalForm operator+(NormalForm a, const NormalForm& b) { return a += b; }
  friend NormalForm operator-(NormalForm a, const NormalForm& b) { return a -= b; }
  friend NormalForm operator*(const Integer& k, NormalForm a) { return a *= k; }
  friend NormalForm operator*(const NormalForm& a, const NormalForm& b);
  NormalForm operator-() const;

  NormalForm pow(unsigned k) const;
  /// Degree-k homogeneous component.
  NormalForm grade_part(int k) const;

  bool operator==(const NormalForm&) const = default;

 private:
  Terms terms_;
};

SlantExpr parse_expr(std::string_view text, const AlgebraContext& ctx);

/// Rewrites e to the canonical basis using linearity, the cup-product
/// splitting rules over pt, loops and S, degree-matched scalar reduction and
/// the K0 base-class rule.
NormalForm normalize(const SlantExpr& e, const AlgebraContext& ctx);

/// Normal form of a single generator <c | beta>.
NormalForm normalize_symbol(const SlantSymbol& s, const AlgebraContext& ctx);

/// The same symbol expanded only through the cup-product splitting rules,
/// treating <k0[x]|S> as its pairing and <k0[x]|pt>, <k0[x]|g_j> as zero.
/// Must agree with normalize_symbol.
NormalForm normalize_symbol_by_splitting(const SlantSymbol& s, const AlgebraContext& ctx);

std::string print_normal(const NormalForm& nf);

/// Abelian invariant of a normal form over r = 1: u^a (x) lambda pairs to
/// <(r0 Theta)^{a+g-v} / (a+g-v)! ^ lambda, l_O1>, with G[1,j] mapped to the
/// j-th symplectic generator.
Integer evaluate_abelian(const NormalForm& nf, int genus, std::int64_t r0, std::int64_t v);

}  // namespace gwcalc
