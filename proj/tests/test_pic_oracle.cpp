#include "doctest.h"

#include <random>
#include <vector>

#include "gwcalc/invariants.hpp"
#include "gwcalc/pic_oracle.hpp"

using namespace gwcalc;

namespace {

using Poly = std::vector<Rational>;

Poly mul(const Poly& a, const Poly& b) {
  Poly out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// exp of a nilpotent truncated series by the plain Taylor sum.
Poly poly_exp(const Poly& x) {
  Poly out(x.size(), 0), term(x.size(), 0);
  out[0] = 1;
  term[0] = 1;
  for (std::size_t k = 1; k < x.size(); ++k) {
    term = mul(term, x);
    for (std::size_t i = 0; i < x.size(); ++i) out[i] += term[i] / Rational(factorial(k));
  }
  return out;
}

// Oracle: log c(E) = sum_{i >= 1} (-1)^{i-1} (i-1)! ch_i.
Poly chern_oracle(const Poly& ch) {
  Poly log(ch.size(), 0);
  for (std::size_t i = 1; i < ch.size(); ++i) {
    const Rational sign = (i % 2 == 1) ? 1 : -1;
    log[i] = sign * Rational(factorial(i - 1)) * ch[i];
  }
  return poly_exp(log);
}

ThetaSeries exp_series(int g, std::int64_t r0) {
  std::vector<Rational> c;
  for (int j = 0; j <= g; ++j) c.push_back(Rational(ipow(Integer(r0), j), factorial(j)));
  return ThetaSeries(g, c);
}

}  // namespace

TEST_CASE("ThetaSeries arithmetic") {
  const ThetaSeries t = ThetaSeries::theta(2);
  CHECK(t * t == ThetaSeries(2, {0, 0, 1}));
  CHECK(t * t * t == ThetaSeries(2));
  CHECK(t.exp() == ThetaSeries(2, {1, 1, Rational(1, 2)}));
  CHECK((ThetaSeries::constant(2, 1) + t).inverse() == ThetaSeries(2, {1, -1, 1}));
  CHECK_THROWS_AS(ThetaSeries::constant(2, 2).inverse(), InputError);
  CHECK_THROWS_AS(ThetaSeries::constant(1, 1).exp(), InputError);
  CHECK_THROWS_AS(ThetaSeries(1) + ThetaSeries(2), InputError);
}

TEST_CASE("KunnethClass relations") {
  for (int g = 0; g <= 3; ++g) {
    const KunnethClass eta = KunnethClass::eta(g), gamma = KunnethClass::gamma(g);
    CHECK(eta * eta == KunnethClass(g));
    CHECK(gamma * eta == KunnethClass(g));
    CHECK(gamma * gamma == KunnethClass(ThetaSeries(g), ThetaSeries(g), ThetaSeries::theta(g, -2)));
    for (std::int64_t dp = -4; dp <= 4; ++dp) {
      const KunnethClass x = eta.scaled(dp) + gamma;
      CHECK(x * x == KunnethClass(ThetaSeries(g), ThetaSeries(g), ThetaSeries::theta(g, -2)));
    }
  }
}

TEST_CASE("poincare_chern") {
  const KunnethClass p = poincare_chern(0, 1);
  CHECK(p == KunnethClass(ThetaSeries::constant(1, 1), ThetaSeries::constant(1, 1),
                          ThetaSeries::theta(1, -1)));
  for (std::int64_t dp = -3; dp <= 3; ++dp) {
    CHECK(poincare_chern(dp, 0) ==
          KunnethClass(ThetaSeries::constant(0, 1), ThetaSeries::constant(0, 1), ThetaSeries::constant(0, dp)));
    const KunnethClass q = poincare_chern(dp, 3);
    CHECK(q.eta_part() == ThetaSeries::constant(3, dp) - ThetaSeries::theta(3));
  }
}

TEST_CASE("grr_pushforward") {
  CHECK(grr_pushforward(0, 1, 1) == ThetaSeries::theta(1, -1));
  CHECK(grr_pushforward(5, 2, 0) == ThetaSeries::constant(0, 12));
  CHECK(grr_pushforward(-3, 2, 2) == ThetaSeries(2, {-8, -2, 0}));
  for (int g = 0; g <= 4; ++g)
    for (std::int64_t r0 = 1; r0 <= 4; ++r0)
      for (std::int64_t dp = -12; dp <= 6; ++dp) {
        const ThetaSeries ch = grr_pushforward(dp, r0, g);
        CHECK(ch[0] == r0 * euler_char(BundleType(1, dp), g));
        CHECK(ch == ThetaSeries::constant(g, r0 * (dp + 1 - g)) - ThetaSeries::theta(g, r0));
        CHECK(segre_series(ch) == exp_series(g, r0));
      }
  CHECK_THROWS_AS(grr_pushforward(0, 0, 1), InputError);
}

TEST_CASE("segre_series") {
  CHECK(segre_series(ThetaSeries::constant(3, 7)) == ThetaSeries::constant(3, 1));
  CHECK(segre_series(ThetaSeries(2, {5, -1, 0})) == ThetaSeries(2, {1, 1, Rational(1, 2)}));
  CHECK_THROWS_AS(chern_series(ThetaSeries(2, {Rational(1, 2), 0, 0})), InputError);
}

TEST_CASE("property: chern series agrees with the log oracle and inverts the Segre series") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const int g = trial % 6;
    Poly ch(g + 1);
    ch[0] = num(rng);
    for (int i = 1; i <= g; ++i) ch[i] = Rational(num(rng), den(rng));
    const ThetaSeries series(g, ch);
    const ThetaSeries c = chern_series(series);
    CHECK(c == ThetaSeries(g, chern_oracle(ch)));
    CHECK(segre_series(series) * c == ThetaSeries::constant(g, 1));
  }
}

TEST_CASE("QuotPipeline bookkeeping") {
  for (int g = 0; g <= 3; ++g)
    for (std::int64_t r0 = 1; r0 <= 3; ++r0)
      for (std::int64_t d = -3; d <= 3; ++d)
        for (std::int64_t d0 = -3; d0 <= 3; ++d0) {
          const std::int64_t t0 = QuotPipeline::min_aux_twist(g, r0, d, d0);
          for (std::int64_t t = t0; t <= t0 + 2; ++t) {
            const QuotPipeline p(g, r0, d, d0, t);
            CHECK(p.twisted_degree() == d - t);
            CHECK(p.sections() == r0 * t - d0);
            CHECK(p.sections() >= 0);
            CHECK(p.fibre_dim() + 1 == r0 * euler_char(BundleType(1, t - d), g));
            CHECK(p.expected_dim() == abelian_v(r0, d, d0, g));
            CHECK(g + p.fibre_dim() - p.sections() == p.expected_dim());
            CHECK(p.segre() == exp_series(g, r0));
          }
          CHECK_THROWS_AS(QuotPipeline(g, r0, d, d0, t0 - 1), InputError);
        }
}

TEST_CASE("ggw_via_segre examples") {
  CHECK(ggw_via_segre(0, 1, 0, 0, QuotPipeline::min_aux_twist(0, 1, 0, 0), Multivector(1)) == 1);
  CHECK(ggw_via_segre(1, 2, -1, 0, QuotPipeline::min_aux_twist(1, 2, -1, 0), Multivector(1)) == 2);
  CHECK(ggw_via_segre(1, 3, 0, 0, QuotPipeline::min_aux_twist(1, 3, 0, 0), Multivector(1)) == 3);
}

TEST_CASE("twist independence and agreement with the closed form") {
  for (int g = 0; g <= 3; ++g)
    for (std::int64_t r0 = 1; r0 <= 3; ++r0)
      for (std::int64_t d = -2; d <= 2; ++d)
        for (std::int64_t d0 = -2; d0 <= 2; ++d0) {
          const std::int64_t t0 = QuotPipeline::min_aux_twist(g, r0, d, d0);
          const std::int64_t v = abelian_v(r0, d, d0, g);
          const QuotPipeline p0(g, r0, d, d0, t0), p3(g, r0, d, d0, t0 + 3);
          for (Blade mask = 0; mask < (Blade{1} << (2 * g)); ++mask) {
            const Multivector l = Multivector::blade(mask);
            const Integer value = p0.invariant(l);
            CHECK(value == p3.invariant(l));
            CHECK(value == ggw_abelian(g, r0, v, l));
          }
        }
}

TEST_CASE("pairing rejects negative hyperplane powers") {
  const QuotPipeline p(1, 2, 0, 0, QuotPipeline::min_aux_twist(1, 2, 0, 0));
  CHECK_THROWS_AS(p.pair(-1, Multivector(1)), InputError);
}
