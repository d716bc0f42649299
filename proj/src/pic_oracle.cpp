#include "gwcalc/pic_oracle.hpp"

#include <algorithm>

#include "gwcalc/index_arith.hpp"

namespace gwcalc {

// ---------------------------------------------------------------- ThetaSeries

ThetaSeries::ThetaSeries(int genus) {
  if (genus < 0) throw InputError("genus must be non-negative");
  coef_.assign(static_cast<std::size_t>(genus) + 1, Rational(0));
}

ThetaSeries::ThetaSeries(int genus, std::vector<Rational> coefficients) : ThetaSeries(genus) {
  const std::size_t n = std::min(coef_.size(), coefficients.size());
  for (std::size_t i = 0; i < n; ++i) coef_[i] = canonical(coefficients[i]);
}

ThetaSeries ThetaSeries::constant(int genus, const Rational& c) {
  ThetaSeries out(genus);
  out.coef_[0] = c;
  return out;
}

ThetaSeries ThetaSeries::theta(int genus, const Rational& c) {
  ThetaSeries out(genus);
  if (genus >= 1) out.coef_[1] = c;
  return out;
}

void ThetaSeries::check_same_genus(const ThetaSeries& o) const {
  if (genus() != o.genus()) throw InputError("theta series over different genera");
}

ThetaSeries& ThetaSeries::operator+=(const ThetaSeries& o) {
  check_same_genus(o);
  for (std::size_t i = 0; i < coef_.size(); ++i) coef_[i] += o.coef_[i];
  return *this;
}

ThetaSeries& ThetaSeries::operator-=(const ThetaSeries& o) {
  check_same_genus(o);
  for (std::size_t i = 0; i < coef_.size(); ++i) coef_[i] -= o.coef_[i];
  return *this;
}

ThetaSeries& ThetaSeries::operator*=(const Rational& k) {
  for (auto& c : coef_) c *= k;
  return *this;
}

ThetaSeries operator*(const ThetaSeries& a, const ThetaSeries& b) {
  a.check_same_genus(b);
  ThetaSeries out(a.genus());
  const int g = a.genus();
  for (int i = 0; i <= g; ++i) {
    if (a.coef_[i] == 0) continue;
    for (int j = 0; i + j <= g; ++j) out.coef_[i + j] += a.coef_[i] * b.coef_[j];
  }
  return out;
}

ThetaSeries ThetaSeries::exp() const {
  if (coef_[0] != 0) throw InputError("exp needs a series without constant term");
  ThetaSeries sum = constant(genus(), 1);
  ThetaSeries term = sum;
  for (int k = 1; k <= genus(); ++k) {
    term = term * *this;
    term *= Rational(1, k);
    sum += term;
  }
  return sum;
}

ThetaSeries ThetaSeries::inverse() const {
  if (coef_[0] != 1 && coef_[0] != -1) {
    throw InputError("series is not invertible over the integers: constant term must be +-1");
  }
  ThetaSeries out(genus());
  out.coef_[0] = 1 / coef_[0];
  for (int n = 1; n <= genus(); ++n) {
    Rational acc = 0;
    for (int i = 1; i <= n; ++i) acc += coef_[i] * out.coef_[n - i];
    out.coef_[n] = -acc / coef_[0];
  }
  return out;
}

bool ThetaSeries::operator==(const ThetaSeries& o) const { return coef_ == o.coef_; }

// --------------------------------------------------------------- KunnethClass

KunnethClass::KunnethClass(int genus) : pure_(genus), gamma_(genus), eta_(genus) {}

KunnethClass::KunnethClass(ThetaSeries pure, ThetaSeries gamma_part, ThetaSeries eta_part)
    : pure_(std::move(pure)), gamma_(std::move(gamma_part)), eta_(std::move(eta_part)) {
  if (pure_.genus() != gamma_.genus() || pure_.genus() != eta_.genus()) {
    throw InputError("Kunneth components over different genera");
  }
}

KunnethClass KunnethClass::eta(int genus, const Rational& c) {
  return {ThetaSeries(genus), ThetaSeries(genus), ThetaSeries::constant(genus, c)};
}

KunnethClass KunnethClass::gamma(int genus, const Rational& c) {
  return {ThetaSeries(genus), ThetaSeries::constant(genus, c), ThetaSeries(genus)};
}

KunnethClass KunnethClass::constant(int genus, const Rational& c) {
  return {ThetaSeries::constant(genus, c), ThetaSeries(genus), ThetaSeries(genus)};
}

KunnethClass& KunnethClass::operator+=(const KunnethClass& o) {
  pure_ += o.pure_;
  gamma_ += o.gamma_;
  eta_ += o.eta_;
  return *this;
}

KunnethClass operator*(const KunnethClass& a, const KunnethClass& b) {
  const int g = a.genus();
  const ThetaSeries gamma_sq = ThetaSeries::theta(g, -2);  // gamma^2 = -2 theta eta
  return {a.pure_ * b.pure_, a.pure_ * b.gamma_ + a.gamma_ * b.pure_,
          a.pure_ * b.eta_ + a.eta_ * b.pure_ + gamma_sq * (a.gamma_ * b.gamma_)};
}

KunnethClass KunnethClass::scaled(const Rational& k) const {
  return {k * pure_, k * gamma_, k * eta_};
}

KunnethClass KunnethClass::exp() const {
  if (pure_[0] != 0) throw InputError("exp needs a nilpotent class");
  KunnethClass sum = constant(genus(), 1);
  KunnethClass term = sum;
  // Nilpotency order is at most g + 2 (theta^{g+1} = 0, eta^2 = 0).
  for (int k = 1; k <= genus() + 2; ++k) {
    term = (term * *this).scaled(Rational(1, k));
    sum += term;
  }
  return sum;
}

bool KunnethClass::operator==(const KunnethClass& o) const {
  return pure_ == o.pure_ && gamma_ == o.gamma_ && eta_ == o.eta_;
}

// ------------------------------------------------------------------ GRR/Segre

KunnethClass poincare_chern(std::int64_t dprime, int genus) {
  const KunnethClass c1 = KunnethClass::eta(genus, Rational(dprime)) + KunnethClass::gamma(genus);
  return c1.exp();
}

ThetaSeries grr_pushforward(std::int64_t dprime, std::int64_t r0, int genus) {
  if (r0 < 1) throw InputError("r0 must be positive");
  const KunnethClass todd =
      KunnethClass::constant(genus, 1) + KunnethClass::eta(genus, Rational(1 - std::int64_t{genus}));
  return Rational(r0) * (poincare_chern(dprime, genus) * todd).integrate_over_curve();
}

ThetaSeries chern_series(const ThetaSeries& ch) {
  if (!is_integral(ch[0])) throw InputError("Chern character rank term must be an integer");
  const int g = ch.genus();
  std::vector<Rational> power_sums(static_cast<std::size_t>(g) + 1);
  for (int i = 1; i <= g; ++i) power_sums[i] = Rational(factorial(i)) * ch[i];
  ThetaSeries c(g);
  c[0] = 1;
  for (int k = 1; k <= g; ++k) {
    Rational acc = 0;
    for (int i = 1; i <= k; ++i) {
      const Rational term = c[k - i] * power_sums[i];
      acc += (i % 2 == 1) ? term : Rational(-term);
    }
    c[k] = acc / k;
  }
  return c;
}

ThetaSeries segre_series(const ThetaSeries& ch) { return chern_series(ch).inverse(); }

// --------------------------------------------------------------- QuotPipeline

namespace {

struct TwistData {
  std::int64_t dprime, d0prime, k, rank;
};

TwistData twist(int genus, std::int64_t r0, std::int64_t d, std::int64_t d0, std::int64_t n) {
  TwistData t{};
  t.dprime = d - n;
  t.d0prime = d0 - r0 * n;
  t.k = -t.d0prime;
  // rank of pr_*(P^v)^{(+) r0}, P^v of degree -d' on each curve slice
  t.rank = r0 * (-t.dprime + 1 - genus);
  return t;
}

}  // namespace

std::int64_t QuotPipeline::min_aux_twist(int genus, std::int64_t r0, std::int64_t d,
                                         std::int64_t d0) {
  if (r0 < 1) throw InputError("r0 must be positive");
  // d' <= -2g - 1 makes H^1 of every degree -d' slice vanish; k >= 0 needs
  // r0 n >= d0.
  std::int64_t n = std::max<std::int64_t>(0, d + 2 * std::int64_t{genus} + 1);
  const std::int64_t by_sections = d0 >= 0 ? (d0 + r0 - 1) / r0 : -((-d0) / r0);
  return std::max(n, by_sections);
}

QuotPipeline::QuotPipeline(int genus, std::int64_t r0, std::int64_t d, std::int64_t d0,
                           std::int64_t aux_twist)
    : topo_(genus), segre_(genus) {
  if (r0 < 1) throw InputError("r0 must be positive");
  if (aux_twist < min_aux_twist(genus, r0, d, d0)) {
    throw InputError("aux_twist " + std::to_string(aux_twist) +
                     " too small: need at least " + std::to_string(min_aux_twist(genus, r0, d, d0)));
  }
  const TwistData t = twist(genus, r0, d, d0, aux_twist);
  dprime_ = t.dprime;
  k_ = t.k;
  fibre_dim_ = t.rank - 1;
  v_ = abelian_v(r0, d, d0, genus);
  if (genus + fibre_dim_ - k_ != v_) {
    throw InternalError("dim P - k differs from the expected dimension");
  }

  const ThetaSeries ch = grr_pushforward(dprime_, r0, genus);
  if (ch[0] != Rational(r0 * euler_char(BundleType(1, dprime_), genus))) {
    throw InternalError("pushforward rank disagrees with Riemann-Roch");
  }
  segre_ = segre_series(ch);

  Multivector power(1);
  const Multivector theta = theta_class(topo_);
  for (int j = 0; j <= genus; ++j) {
    theta_powers_.push_back(power);
    power = wedge(power, theta, topo_);
  }
}

Integer QuotPipeline::pair(std::int64_t a, const Multivector& lambda) const {
  if (a < 0) throw InputError("hyperplane exponent must be non-negative");
  const std::int64_t j = a + k_ - fibre_dim_;
  if (j < 0 || j > genus()) return 0;
  const Integer paired = top_pairing(wedge(theta_powers_[j], lambda, topo_), topo_);
  const Rational value = segre_[static_cast<int>(j)] * Rational(paired);
  if (!is_integral(value)) throw InternalError("non-integral pairing on Pic");
  return value.get_num();
}

Integer QuotPipeline::invariant(const Multivector& l) const {
  Integer total = 0;
  for (std::int64_t a = 0; a + k_ - fibre_dim_ <= genus(); ++a) total += pair(a, l);
  return total;
}

Integer ggw_via_segre(int genus, std::int64_t r0, std::int64_t d, std::int64_t d0,
                      std::int64_t aux_twist, const Multivector& l) {
  return QuotPipeline(genus, r0, d, d0, aux_twist).invariant(l);
}

}  // namespace gwcalc
