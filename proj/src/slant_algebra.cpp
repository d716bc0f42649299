#include "gwcalc/slant_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <span>
#include <sstream>
#include <tuple>

#include "gwcalc/exterior.hpp"

namespace gwcalc {

// -------------------------------------------------------------------- context

AlgebraContext::AlgebraContext(int rank, int g, std::int64_t degree,
                               std::map<std::string, std::int64_t> k0)
    : r(rank), genus(g), scalar_degree(degree), k0_eval(std::move(k0)) {
  if (r < 1) throw InputError("rank r must be positive");
  if (genus < 0 || genus > SurfaceTopology::kMaxGenus) throw InputError("genus out of range");
}

int AlgebraContext::loop_intersection(int i, int j) const {
  // Basis loops alternate a_k (odd index) and b_k (even index).
  if ((i - 1) / 2 != (j - 1) / 2 || i == j) return 0;
  return i < j ? 1 : -1;
}

ParseError::ParseError(const std::string& msg, std::size_t position)
    : InputError("parse error at position " + std::to_string(position) + ": " + msg),
      position_(position) {}

int SlantSymbol::cup_degree() const {
  int deg = 0;
  for (const auto& a : cup) deg += a.degree();
  return deg;
}

// ------------------------------------------------------------------ SlantExpr

SlantExpr SlantExpr::make_literal(Integer value) {
  SlantExpr e;
  e.kind = Kind::Literal;
  e.literal = std::move(value);
  return e;
}

SlantExpr SlantExpr::make_slant(SlantSymbol s) {
  SlantExpr e;
  e.kind = Kind::Slant;
  e.slant = std::move(s);
  return e;
}

SlantExpr SlantExpr::make_sum(std::vector<SlantExpr> terms) {
  SlantExpr e;
  e.kind = Kind::Sum;
  e.children = std::move(terms);
  return e;
}

SlantExpr SlantExpr::make_product(std::vector<SlantExpr> factors) {
  SlantExpr e;
  e.kind = Kind::Product;
  e.children = std::move(factors);
  return e;
}

SlantExpr SlantExpr::make_negate(SlantExpr inner) {
  SlantExpr e;
  e.kind = Kind::Negate;
  e.children.push_back(std::move(inner));
  return e;
}

SlantExpr SlantExpr::make_power(SlantExpr base, unsigned exponent) {
  SlantExpr e;
  e.kind = Kind::Power;
  e.exponent = exponent;
  e.children.push_back(std::move(base));
  return e;
}

// ------------------------------------------------------------------- Monomial

int Monomial::degree() const {
  int deg = 0;
  for (const auto& [i, e] : u) deg += 2 * i * static_cast<int>(e);
  for (const auto& [i, e] : v) deg += (2 * i - 2) * static_cast<int>(e);
  for (const auto& g : odd) deg += g.degree();
  return deg;
}

bool Monomial::operator<(const Monomial& o) const {
  return std::tie(u, v, odd) < std::tie(o.u, o.v, o.odd);
}

namespace {

// Product of two monomials; returns the sign (0 if an odd generator repeats).
int multiply_monomials(const Monomial& a, const Monomial& b, Monomial& out) {
  out.u = a.u;
  for (const auto& [i, e] : b.u) out.u[i] += e;
  out.v = a.v;
  for (const auto& [i, e] : b.v) out.v[i] += e;

  out.odd.clear();
  out.odd.reserve(a.odd.size() + b.odd.size());
  int swaps = 0;
  std::size_t ia = 0, ib = 0;
  while (ia < a.odd.size() || ib < b.odd.size()) {
    if (ib == b.odd.size() || (ia < a.odd.size() && a.odd[ia] < b.odd[ib])) {
      out.odd.push_back(a.odd[ia++]);
    } else if (ia == a.odd.size() || b.odd[ib] < a.odd[ia]) {
      // b's generator jumps over the remaining generators of a
      swaps += static_cast<int>(a.odd.size() - ia);
      out.odd.push_back(b.odd[ib++]);
    } else {
      return 0;
    }
  }
  return swaps % 2 == 0 ? 1 : -1;
}

}  // namespace

// ----------------------------------------------------------------- NormalForm

NormalForm::NormalForm(const Integer& scalar) {
  if (scalar != 0) terms_.emplace(Monomial{}, scalar);
}

NormalForm NormalForm::monomial(Monomial m, const Integer& coef) {
  NormalForm out;
  out.add_term(m, coef);
  return out;
}

NormalForm NormalForm::u(int i) {
  Monomial m;
  m.u[i] = 1;
  return monomial(std::move(m));
}

NormalForm NormalForm::v(int i) {
  Monomial m;
  m.v[i] = 1;
  return monomial(std::move(m));
}

NormalForm NormalForm::odd(int chern, int loop) {
  Monomial m;
  m.odd.push_back(OddGen{chern, loop});
  return monomial(std::move(m));
}

void NormalForm::add_term(const Monomial& m, const Integer& coef) {
  if (coef == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0) terms_.erase(it);
  }
}

NormalForm& NormalForm::operator+=(const NormalForm& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

NormalForm& NormalForm::operator-=(const NormalForm& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

NormalForm& NormalForm::operator*=(const Integer& k) {
  if (k == 0) {
    terms_.clear();
  } else {
    for (auto& [m, c] : terms_) c *= k;
  }
  return *this;
}

NormalForm operator*(const NormalForm& a, const NormalForm& b) {
  NormalForm out;
  Monomial m;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      const int sign = multiply_monomials(ma, mb, m);
      if (sign == 0) continue;
      out.add_term(m, sign > 0 ? Integer(ca * cb) : Integer(-ca * cb));
    }
  }
  return out;
}

NormalForm NormalForm::operator-() const {
  NormalForm out = *this;
  out *= -1;
  return out;
}

NormalForm NormalForm::pow(unsigned k) const {
  NormalForm result(1);
  NormalForm base = *this;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

NormalForm NormalForm::grade_part(int k) const {
  NormalForm out;
  for (const auto& [m, c] : terms_) {
    if (m.degree() == k) out.add_term(m, c);
  }
  return out;
}

// --------------------------------------------------------------------- parser

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view text, const AlgebraContext& ctx) : text_(text), ctx_(ctx) {}

  SlantExpr parse() {
    SlantExpr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  SlantExpr expr() {
    std::vector<SlantExpr> terms;
    skip_ws();
    bool negative = false;
    if (peek() == '+' || peek() == '-') negative = (get() == '-');
    terms.push_back(signed_term(negative));
    for (skip_ws(); peek() == '+' || peek() == '-'; skip_ws()) {
      negative = (get() == '-');
      terms.push_back(signed_term(negative));
    }
    return terms.size() == 1 ? std::move(terms.front()) : SlantExpr::make_sum(std::move(terms));
  }

  SlantExpr signed_term(bool negative) {
    SlantExpr t = term();
    return negative ? SlantExpr::make_negate(std::move(t)) : t;
  }

  SlantExpr term() {
    std::vector<SlantExpr> factors{factor()};
    for (skip_ws(); peek() == '*'; skip_ws()) {
      get();
      factors.push_back(factor());
    }
    return factors.size() == 1 ? std::move(factors.front())
                               : SlantExpr::make_product(std::move(factors));
  }

  SlantExpr factor() {
    SlantExpr base = primary();
    for (skip_ws(); peek() == '^'; skip_ws()) {
      get();
      skip_ws();
      const std::size_t at = pos_;
      const Integer e = integer("exponent");
      if (!e.fits_uint_p() || e > 4096) fail_at("exponent too large", at);
      base = SlantExpr::make_power(std::move(base), static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  SlantExpr primary() {
    skip_ws();
    const std::size_t start = pos_;
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return SlantExpr::make_literal(integer("integer"));
    if (c == '(') {
      get();
      SlantExpr inner = expr();
      skip_ws();
      expect(')');
      return inner;
    }
    if (c == '<') return SlantExpr::make_slant(slant());
    if (c == 'u' || c == 'v') {
      get();
      const int i = index(c == 'u' ? "u" : "v", 1, ctx_.r, start);
      SlantSymbol s;
      s.cup.push_back(CupAtom{CupAtom::Kind::Chern, i, {}});
      s.base.kind = (c == 'u') ? SlantBase::Kind::Point : SlantBase::Kind::Surface;
      return SlantExpr::make_slant(std::move(s));
    }
    if (c == 'G') {
      get();
      expect('[');
      skip_ws();
      const int i = index("G chern", 1, ctx_.r, pos_);
      skip_ws();
      expect(',');
      skip_ws();
      const int j = index("G loop", 1, ctx_.loop_count(), pos_);
      skip_ws();
      expect(']');
      SlantSymbol s;
      s.cup.push_back(CupAtom{CupAtom::Kind::Chern, i, {}});
      s.base = SlantBase{SlantBase::Kind::Loop, j};
      return SlantExpr::make_slant(std::move(s));
    }
    if (c == '\0') fail("unexpected end of input");
    fail(std::string("unexpected character '") + c + "'");
  }

  SlantSymbol slant() {
    expect('<');
    SlantSymbol s;
    skip_ws();
    s.cup.push_back(atom());
    for (skip_ws(); peek() == '.'; skip_ws()) {
      get();
      skip_ws();
      s.cup.push_back(atom());
    }
    expect('|');
    skip_ws();
    s.base = base();
    skip_ws();
    expect('>');
    return s;
  }

  CupAtom atom() {
    const std::size_t start = pos_;
    if (peek() != 'c' && peek() != 'k') fail("expected atom c<i> or k0[name]");
    if (text_.substr(pos_, 3) == "k0[") {
      pos_ += 3;
      const std::size_t name_start = pos_;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
      if (pos_ == name_start) fail("expected base-class name");
      std::string name(text_.substr(name_start, pos_ - name_start));
      expect(']');
      return CupAtom{CupAtom::Kind::BaseClass, 0, std::move(name)};
    }
    if (peek() == 'k') fail("expected 'k0['");
    get();
    return CupAtom{CupAtom::Kind::Chern, index("Chern class", 1, ctx_.r, start), {}};
  }

  SlantBase base() {
    const std::size_t start = pos_;
    if (text_.substr(pos_, 2) == "pt") {
      pos_ += 2;
      return SlantBase{SlantBase::Kind::Point, 0};
    }
    if (peek() == 'S') {
      get();
      return SlantBase{SlantBase::Kind::Surface, 0};
    }
    if (peek() == 'g') {
      get();
      return SlantBase{SlantBase::Kind::Loop, index("loop", 1, ctx_.loop_count(), start)};
    }
    fail("invalid base: expected pt, S or g<j>");
  }

  int index(const std::string& what, int lo, int hi, std::size_t at) {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected " + what + " index");
    const Integer i = integer("index");
    if (i < lo || i > hi) {
      fail_at(what + " index " + i.get_str() + " out of range [" + std::to_string(lo) + ", " +
                  std::to_string(hi) + "]",
              at);
    }
    return static_cast<int>(i.get_si());
  }

  Integer integer(const std::string& what) {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == start) fail("expected " + what);
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    get();
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char get() { return pos_ < text_.size() ? text_[pos_++] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const {
    throw ParseError(msg, at);
  }

  std::string_view text_;
  const AlgebraContext& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

SlantExpr parse_expr(std::string_view text, const AlgebraContext& ctx) {
  return ExprParser(text, ctx).parse();
}

// ------------------------------------------------------------------ rewriting

namespace {

void validate(const SlantSymbol& s, const AlgebraContext& ctx) {
  if (s.cup.empty()) throw InputError("slant symbol with empty cup product");
  for (const auto& a : s.cup) {
    if (a.kind == CupAtom::Kind::Chern) {
      if (a.index < 1 || a.index > ctx.r) {
        throw InputError("Chern index c" + std::to_string(a.index) + " out of range for r=" +
                         std::to_string(ctx.r));
      }
    } else if (!ctx.k0_eval.contains(a.name)) {
      throw ContextError("unknown base class k0[" + a.name + "]");
    }
  }
  if (s.base.kind == SlantBase::Kind::Loop &&
      (s.base.loop < 1 || s.base.loop > ctx.loop_count())) {
    throw InputError("loop index g" + std::to_string(s.base.loop) + " out of range");
  }
}

int cup_degree(std::span<const CupAtom> atoms) {
  int deg = 0;
  for (const auto& a : atoms) deg += a.degree();
  return deg;
}

class Splitter {
 public:
  Splitter(const AlgebraContext& ctx) : ctx_(ctx) {}

  // <atoms | base>, splitting the cup product at its first atom.
  NormalForm split(std::span<const CupAtom> atoms, const SlantBase& base) const {
    if (atoms.empty()) {
      // <1|pt> = 1; <1|beta> vanishes for beta of positive degree.
      return base.kind == SlantBase::Kind::Point ? NormalForm(1) : NormalForm();
    }
    if (atoms.size() == 1) return single(atoms.front(), base);

    const CupAtom& head = atoms.front();
    const auto rest = atoms.subspan(1);
    const SlantBase pt{SlantBase::Kind::Point, 0};
    const Integer rest_sign = (cup_degree(rest) % 2 == 0) ? 1 : -1;

    switch (base.kind) {
      case SlantBase::Kind::Point:
        return single(head, pt) * split(rest, pt);
      case SlantBase::Kind::Loop:
        return rest_sign * (single(head, base) * split(rest, pt)) +
               single(head, pt) * split(rest, base);
      case SlantBase::Kind::Surface: {
        NormalForm out = single(head, base) * split(rest, pt) + single(head, pt) * split(rest, base);
        NormalForm correction;
        const int n = ctx_.loop_count();
        for (int i = 1; i <= n; ++i) {
          const NormalForm left = single(head, SlantBase{SlantBase::Kind::Loop, i});
          if (left.is_zero()) continue;
          for (int j = 1; j <= n; ++j) {
            const int dot = ctx_.loop_intersection(i, j);
            if (dot == 0) continue;
            correction += Integer(dot) * (left * split(rest, SlantBase{SlantBase::Kind::Loop, j}));
          }
        }
        return out - rest_sign * correction;
      }
    }
    return {};
  }

  NormalForm single(const CupAtom& a, const SlantBase& base) const {
    if (a.kind == CupAtom::Kind::BaseClass) {
      // Degree-2 class from K0: only its pairing with [Sigma] survives.
      return base.kind == SlantBase::Kind::Surface ? NormalForm(Integer(ctx_.k0_eval.at(a.name)))
                                                   : NormalForm();
    }
    switch (base.kind) {
      case SlantBase::Kind::Point:
        return NormalForm::u(a.index);
      case SlantBase::Kind::Loop:
        return NormalForm::odd(a.index, base.loop);
      case SlantBase::Kind::Surface:
        if (a.index == 1) return NormalForm(Integer(ctx_.c1_sigma_sign * ctx_.scalar_degree));
        return NormalForm::v(a.index);
    }
    return {};
  }

 private:
  const AlgebraContext& ctx_;
};

}  // namespace

NormalForm normalize_symbol(const SlantSymbol& s, const AlgebraContext& ctx) {
  validate(s, ctx);
  std::vector<CupAtom> chern;
  std::vector<const CupAtom*> base_classes;
  for (const auto& a : s.cup) {
    if (a.kind == CupAtom::Kind::Chern) {
      chern.push_back(a);
    } else {
      base_classes.push_back(&a);
    }
  }
  const Splitter splitter(ctx);
  if (base_classes.empty()) return splitter.split(chern, s.base);

  // <c . c0 | beta> = <c | kappa0^*(c0) cap beta>. A degree-2 c0 caps [Sigma]
  // to a multiple of [pt] and kills pt and loops; a second one kills [pt].
  if (base_classes.size() > 1 || s.base.kind != SlantBase::Kind::Surface) return {};
  const Integer pairing = ctx.k0_eval.at(base_classes.front()->name);
  return pairing * splitter.split(chern, SlantBase{SlantBase::Kind::Point, 0});
}

NormalForm normalize_symbol_by_splitting(const SlantSymbol& s, const AlgebraContext& ctx) {
  validate(s, ctx);
  return Splitter(ctx).split(s.cup, s.base);
}

NormalForm normalize(const SlantExpr& e, const AlgebraContext& ctx) {
  switch (e.kind) {
    case SlantExpr::Kind::Literal:
      return NormalForm(e.literal);
    case SlantExpr::Kind::Slant:
      return normalize_symbol(e.slant, ctx);
    case SlantExpr::Kind::Sum: {
      NormalForm out;
      for (const auto& c : e.children) out += normalize(c, ctx);
      return out;
    }
    case SlantExpr::Kind::Product: {
      NormalForm out(1);
      for (const auto& c : e.children) {
        out = out * normalize(c, ctx);
        if (out.is_zero()) break;
      }
      return out;
    }
    case SlantExpr::Kind::Negate:
      return -normalize(e.children.at(0), ctx);
    case SlantExpr::Kind::Power:
      return normalize(e.children.at(0), ctx).pow(e.exponent);
  }
  return {};
}

// ------------------------------------------------------------------- printing

namespace {

std::string monomial_text(const Monomial& m) {
  std::vector<std::string> factors;
  auto power = [&](const std::string& name, unsigned e) {
    factors.push_back(e == 1 ? name : name + "^" + std::to_string(e));
  };
  for (const auto& [i, e] : m.u) power("u" + std::to_string(i), e);
  for (const auto& [i, e] : m.v) power("v" + std::to_string(i), e);
  for (const auto& g : m.odd) {
    factors.push_back("G[" + std::to_string(g.chern) + "," + std::to_string(g.loop) + "]");
  }
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i > 0) out += '*';
    out += factors[i];
  }
  return out;
}

}  // namespace

std::string print_normal(const NormalForm& nf) {
  if (nf.is_zero()) return "0";
  std::vector<std::pair<const Monomial*, const Integer*>> terms;
  for (const auto& [m, c] : nf.terms()) terms.emplace_back(&m, &c);
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    return a.first->degree() < b.first->degree();
  });

  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms) {
    const Integer mag = abs(*c);
    if (first) {
      if (*c < 0) os << '-';
    } else {
      os << (*c < 0 ? " - " : " + ");
    }
    first = false;
    if (m->is_unit()) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << '*';
      os << monomial_text(*m);
    }
  }
  return os.str();
}

// ----------------------------------------------------------------- evaluation

Integer evaluate_abelian(const NormalForm& nf, int genus, std::int64_t r0, std::int64_t v) {
  if (r0 < 1) throw InputError("r0 must be positive");
  const SurfaceTopology topo(genus);
  const Multivector form = Integer(r0) * theta_class(topo);
  std::vector<Multivector> divided;
  for (int i = 0; i <= genus; ++i) divided.push_back(divided_power(form, i, topo));

  Integer total = 0;
  for (const auto& [m, c] : nf.terms()) {
    if (!m.v.empty() || std::any_of(m.u.begin(), m.u.end(), [](auto& p) { return p.first != 1; }) ||
        std::any_of(m.odd.begin(), m.odd.end(), [](const OddGen& g) { return g.chern != 1; })) {
      throw UnsupportedError("abelian evaluation needs a normal form over r = 1");
    }
    const std::int64_t a = m.u.empty() ? 0 : m.u.begin()->second;
    const std::int64_t idx = a + genus - v;
    if (idx < 0 || idx > genus) continue;
    Blade lambda = 0;
    for (const auto& g : m.odd) {
      if (g.loop < 1 || g.loop > topo.generator_count()) {
        throw InputError("loop index out of range for genus " + std::to_string(genus));
      }
      lambda |= Blade{1} << (g.loop - 1);
    }
    // odd generators are stored in increasing loop order, matching blade order
    const Multivector lam = Multivector::blade(lambda, c);
    total += top_pairing(wedge(divided[static_cast<std::size_t>(idx)], lam, topo), topo);
  }
  return total;
}

}  // namespace gwcalc
