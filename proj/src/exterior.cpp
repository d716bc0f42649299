#include "gwcalc/exterior.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

namespace gwcalc {

SurfaceTopology::SurfaceTopology(int genus) : genus_(genus) {
  if (genus < 0 || genus > kMaxGenus) {
    throw InputError("genus must lie in [0, " + std::to_string(kMaxGenus) + "], got " +
                     std::to_string(genus));
  }
}

std::string SurfaceTopology::generator_name(int index) const {
  if (index < 0 || index >= generator_count()) {
    throw InputError("generator index " + std::to_string(index) + " out of range for genus " +
                     std::to_string(genus_));
  }
  return std::string(index % 2 == 0 ? "a" : "b") + std::to_string(index / 2 + 1);
}

int SurfaceTopology::intersection(int i, int j) const {
  if (i / 2 != j / 2 || i == j) return 0;
  return i < j ? 1 : -1;
}

std::uint64_t SurfaceTopology::top_mask() const {
  if (genus_ == 0) return 0;
  if (generator_count() == 64) return ~std::uint64_t{0};
  return (std::uint64_t{1} << generator_count()) - 1;
}

int blade_product_sign(Blade x, Blade y) {
  if (x & y) return 0;
  int swaps = 0;
  for (Blade rest = y; rest != 0; rest &= rest - 1) {
    const int j = __builtin_ctzll(rest);
    const Blade above = (j == 63) ? 0 : (~Blade{0} << (j + 1));
    swaps += blade_grade(x & above);
  }
  return (swaps % 2 == 0) ? 1 : -1;
}

Multivector::Multivector(const Integer& scalar) {
  if (scalar != 0) terms_.emplace(Blade{0}, scalar);
}

Multivector Multivector::blade(Blade b, const Integer& coef) {
  Multivector out;
  out.add_term(b, coef);
  return out;
}

Multivector Multivector::generator(int index, const SurfaceTopology& topo) {
  if (index < 0 || index >= topo.generator_count()) {
    throw InputError("generator index " + std::to_string(index) + " out of range for genus " +
                     std::to_string(topo.genus()));
  }
  return blade(Blade{1} << index);
}

Integer Multivector::coefficient(Blade b) const {
  auto it = terms_.find(b);
  return it == terms_.end() ? Integer(0) : it->second;
}

int Multivector::span() const {
  Blade all = 0;
  for (const auto& [b, c] : terms_) all |= b;
  return all == 0 ? 0 : 64 - __builtin_clzll(all);
}

int Multivector::homogeneous_grade() const {
  int grade = -1;
  for (const auto& [b, c] : terms_) {
    const int k = blade_grade(b);
    if (grade == -1) {
      grade = k;
    } else if (grade != k) {
      return -1;
    }
  }
  return grade;
}

void Multivector::add_term(Blade b, const Integer& coef) {
  if (coef == 0) return;
  auto [it, inserted] = terms_.try_emplace(b, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0) terms_.erase(it);
  }
}

Multivector& Multivector::operator+=(const Multivector& rhs) {
  for (const auto& [b, c] : rhs.terms_) add_term(b, c);
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& rhs) {
  for (const auto& [b, c] : rhs.terms_) add_term(b, -c);
  return *this;
}

Multivector& Multivector::operator*=(const Integer& k) {
  if (k == 0) {
    terms_.clear();
  } else {
    for (auto& [b, c] : terms_) c *= k;
  }
  return *this;
}

Multivector Multivector::operator-() const {
  Multivector out = *this;
  out *= -1;
  return out;
}

namespace {

void check_span(const Multivector& x, const SurfaceTopology& topo) {
  if (x.span() > topo.generator_count()) {
    throw InputError("multivector uses generator index " + std::to_string(x.span() - 1) +
                     " but genus " + std::to_string(topo.genus()) + " has only " +
                     std::to_string(topo.generator_count()) + " generators");
  }
}

}  // namespace

Multivector wedge(const Multivector& x, const Multivector& y, const SurfaceTopology& topo) {
  check_span(x, topo);
  check_span(y, topo);
  Multivector out;
  for (const auto& [bx, cx] : x.terms()) {
    for (const auto& [by, cy] : y.terms()) {
      const int sign = blade_product_sign(bx, by);
      if (sign == 0) continue;
      out.add_term(bx | by, sign > 0 ? Integer(cx * cy) : Integer(-cx * cy));
    }
  }
  return out;
}

Multivector combine(const Integer& c1, const Multivector& x, const Integer& c2,
                    const Multivector& y) {
  Multivector out = c1 * x;
  out += c2 * y;
  return out;
}

Multivector theta_class(const SurfaceTopology& topo) {
  Multivector out;
  for (int k = 0; k < topo.genus(); ++k) out.add_term(Blade{3} << (2 * k), 1);
  return out;
}

namespace {

void require_even_homogeneous(const Multivector& x) {
  if (x.is_zero()) return;
  const int grade = x.homogeneous_grade();
  if (grade < 2 || grade % 2 != 0) {
    throw InputError("exp_even needs a homogeneous element of even degree >= 2");
  }
}

// Divides every coefficient by k, which must be exact.
void divide_exact(Multivector& x, const Integer& k) {
  Multivector out;
  for (const auto& [b, c] : x.terms()) {
    if (!mpz_divisible_p(c.get_mpz_t(), k.get_mpz_t())) {
      throw InternalError("non-exact division in divided power");
    }
    out.add_term(b, Integer(c / k));
  }
  x = std::move(out);
}

}  // namespace

Multivector divided_power(const Multivector& x, unsigned k, const SurfaceTopology& topo) {
  require_even_homogeneous(x);
  check_span(x, topo);
  Multivector term(1);
  for (unsigned i = 1; i <= k && !term.is_zero(); ++i) {
    term = wedge(term, x, topo);
    divide_exact(term, i);
  }
  return term;
}

Multivector exp_even(const Multivector& x, const SurfaceTopology& topo) {
  require_even_homogeneous(x);
  check_span(x, topo);
  Multivector sum(1);
  Multivector term(1);
  for (unsigned i = 1; !term.is_zero(); ++i) {
    term = wedge(term, x, topo);
    divide_exact(term, i);
    sum += term;
  }
  return sum;
}

Integer top_pairing(const Multivector& x, const SurfaceTopology& topo) {
  check_span(x, topo);
  return x.coefficient(topo.top_mask());
}

Multivector grade_part(const Multivector& x, int k) {
  if (k < 0) throw InputError("grade must be non-negative");
  Multivector out;
  for (const auto& [b, c] : x.terms()) {
    if (blade_grade(b) == k) out.add_term(b, c);
  }
  return out;
}

namespace {

class FormParser {
 public:
  FormParser(std::string_view text, const SurfaceTopology& topo) : text_(text), topo_(topo) {}

  Multivector parse() {
    Multivector out;
    skip_ws();
    int sign = 1;
    if (peek() == '+' || peek() == '-') {
      sign = (get() == '-') ? -1 : 1;
    }
    out += term(sign);
    for (skip_ws(); pos_ < text_.size(); skip_ws()) {
      const char op = get();
      if (op != '+' && op != '-') fail("expected '+' or '-'");
      out += term(op == '-' ? -1 : 1);
    }
    return out;
  }

 private:
  Multivector term(int sign) {
    skip_ws();
    Integer coef = sign;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coef *= integer();
      skip_ws();
      if (peek() != '*') return Multivector(coef);
      get();
      skip_ws();
    }
    return blade(coef);
  }

  Multivector blade(const Integer& coef) {
    std::vector<int> gens{generator()};
    for (skip_ws(); peek() == '^'; skip_ws()) {
      get();
      skip_ws();
      gens.push_back(generator());
    }
    Multivector out(coef);
    for (int g : gens) out = wedge(out, Multivector::generator(g, topo_), topo_);
    return out;
  }

  int generator() {
    const std::size_t start = pos_;
    const char kind = get();
    if (kind != 'a' && kind != 'b') {
      pos_ = start;
      fail("expected generator a<k> or b<k>");
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected generator index");
    const Integer idx = integer();
    if (idx < 1 || idx > topo_.genus()) {
      pos_ = start;
      fail("generator index out of range for genus " + std::to_string(topo_.genus()));
    }
    return 2 * (static_cast<int>(idx.get_si()) - 1) + (kind == 'b' ? 1 : 0);
  }

  Integer integer() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char get() { return pos_ < text_.size() ? text_[pos_++] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("form parse error at position " + std::to_string(pos_) + ": " + msg);
  }

  std::string_view text_;
  const SurfaceTopology& topo_;
  std::size_t pos_ = 0;
};

}  // namespace

Multivector parse_multivector(std::string_view text, const SurfaceTopology& topo) {
  return FormParser(text, topo).parse();
}

std::string to_string(const Multivector& x, const SurfaceTopology& topo) {
  if (x.is_zero()) return "0";
  std::vector<std::pair<Blade, Integer>> terms(x.terms().begin(), x.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& l, const auto& r) {
    return blade_grade(l.first) < blade_grade(r.first);
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [b, c] : terms) {
    Integer mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (b == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << '*';
    bool first_gen = true;
    for (Blade rest = b; rest != 0; rest &= rest - 1) {
      if (!first_gen) os << '^';
      first_gen = false;
      os << topo.generator_name(__builtin_ctzll(rest));
    }
  }
  return os.str();
}

}  // namespace gwcalc
