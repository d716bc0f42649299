// Acceptance suite: one line per criterion, exact comparisons, wall-clock limits.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "expr_gen.hpp"
#include "gwcalc/cli.hpp"
#include "gwcalc/exterior.hpp"
#include "gwcalc/index_arith.hpp"
#include "gwcalc/invariants.hpp"
#include "gwcalc/slant_algebra.hpp"
#include "gwcalc/verification.hpp"

using namespace gwcalc;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = "failed: " + what;
    }
  }
  void require(const GridReport& r) {
    require(r.passed(), r.name + " counterexample " + r.first_counterexample.dump());
    if (ok) detail += (detail.empty() ? "" : ", ") + r.name + " " + std::to_string(r.cases) + " cases";
  }
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;  // 0 = no limit
  std::function<Verdict()> body;
};

std::string cli_stdout(std::vector<std::string> args, int& code) {
  args.insert(args.begin(), "gwcalc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return out.str();
}

Verdict quot_count_criterion() {
  Verdict v;
  std::uint64_t cases = 0;
  for (int g = 0; g <= 5; ++g) {
    for (std::int64_t r0 = 1; r0 <= 5; ++r0) {
      const Integer expected = ipow(Integer(r0), static_cast<unsigned long>(g));
      v.require(quot_count(g, r0) == expected, "quot_count(" + std::to_string(g) + "," + std::to_string(r0) + ")");
      for (std::int64_t k = g; k <= g + 2; ++k) {
        v.require(ggw_abelian(g, r0, k, Multivector(1)) == expected,
                  "ggw_abelian(" + std::to_string(g) + "," + std::to_string(r0) + "," + std::to_string(k) + ",1)");
        ++cases;
      }
    }
  }
  if (v.ok) v.detail = std::to_string(cases) + " cases";
  return v;
}

Verdict oracle_criterion() {
  Verdict v;
  v.require(oracle_grid(4, 4, 3));
  return v;
}

Verdict dictionary_criterion() {
  Verdict v;
  std::uint64_t cases = 0;
  for (int g = 0; g <= 4; ++g)
    for (std::int64_t d = -3; d <= 3; ++d)
      for (std::int64_t n = 0; n <= 3; ++n)
        for (std::int64_t d0 = -3; d0 <= 3; ++d0) {
          const RuledSurfaceGeometry geom(g, d0);
          const std::int64_t av = abelian_v(n + 1, -d, n * (n + 1) * d0 / 2, g);
          const H2Class c = spinc_det(d, n, geom);
          const std::string at = "(g,d,n,d0)=(" + std::to_string(g) + "," + std::to_string(d) + "," +
                                 std::to_string(n) + "," + std::to_string(d0) + ")";
          v.require(index_wc(c, geom) == 2 * av, "w_c/2 = v at " + at);
          v.require(douady_index(H2Class{n, d}, geom) == av, "douady index at " + at);
          v.require(intersect(c, H2Class::fibre(), geom) == 2 * n + 2, "<c,f> at " + at);
          for (Blade mask = 0; mask < (Blade{1} << (2 * g)); ++mask) {
            v.require(sw_equals_ggw_check(d, n, geom, Multivector::blade(mask)), "sw = ggw at " + at);
            ++cases;
          }
        }
  if (v.ok) v.detail = std::to_string(cases) + " cases";
  return v;
}

Verdict worked_instance_criterion() {
  Verdict v;
  const RuledSurfaceGeometry geom(1, 0);
  const H2Class c = spinc_det(1, 1, geom);
  v.require(c == H2Class{4, 2}, "c = 4s+2f");
  v.require(intersect(c, c, geom) == 16, "c^2 = 16");
  v.require(index_wc(c, geom) == 4, "w_c = 4");
  const SWResult one = sw_ruled(1, 1, geom, Multivector(1));
  const SWResult ab = sw_ruled(1, 1, geom, parse_multivector("a1^b1", SurfaceTopology(1)));
  v.require(one.plus() == 2, "SW+(1) = 2");
  v.require(ab.plus() == 1, "SW+(a1^b1) = 1");
  v.require(one.minus() == 0 && ab.minus() == 0, "SW- = 0");
  int code = 0;
  const auto body = nlohmann::json::parse(
      cli_stdout({"sw", "--genus", "1", "--d", "1", "--n", "1", "--deg-v0", "0", "--form", "1"}, code));
  const auto& r = body["result"];
  v.require(code == 0 && r["sign"] == 1 && r["plus"] == 2 && r["minus"] == 0 && r["w_c"] == 4, "CLI sw output");
  if (v.ok) v.detail = "c=4s+2f c^2=16 w_c=4 SW+(1)=2 SW+(a1^b1)=1 SW-=0";
  return v;
}

Verdict zero_law_criterion() {
  Verdict v;
  for (int g = 0; g <= 4; ++g)
    for (std::int64_t d0 = -4; d0 <= 4; d0 += 2)
      for (std::int64_t m = -3; m <= 3; ++m) {
        const RuledSurfaceGeometry geom(g, d0);
        for (Blade mask = 0; mask < (Blade{1} << (2 * g)); ++mask) {
          const SWResult r = sw_for_class(H2Class{0, 2 * m}, geom, Multivector::blade(mask));
          v.require(r.pair_with_fibre == 0 && r.sign == 0, "zero fibre pairing");
          v.require(r.plus() == 0 && r.minus() == 0, "both SW values vanish when <c,F> = 0");
        }
      }
  v.require(chamber_classify(ChamberParams::from_scaled(Rational(1, 2), BundleType(1, -1))) == Chamber::Empty,
            "t*Vol/2pi < -d is the empty chamber");
  int code = 0;
  const std::vector<std::string> base = {"ggw-bundle", "--genus", "1", "--r0", "2", "--deg-e", "-1", "--deg-e0", "0"};
  auto with = [&](std::vector<std::string> extra) {
    std::vector<std::string> a = base;
    a.insert(a.end(), extra.begin(), extra.end());
    return a;
  };
  auto empty = nlohmann::json::parse(cli_stdout(with({"--chamber", "empty"}), code));
  v.require(code == 0 && empty["result"]["value"] == 0, "--chamber empty returns 0");
  auto tau = nlohmann::json::parse(cli_stdout(with({"--tau", "1/2"}), code));
  v.require(code == 0 && tau["result"]["chamber"] == "empty" && tau["result"]["value"] == 0,
            "--tau in the empty chamber returns 0");
  auto interesting = nlohmann::json::parse(cli_stdout(base, code));
  v.require(code == 0 && interesting["result"]["value"] == 2, "interesting chamber value is nonzero");
  if (v.ok) v.detail = "zero pairing and empty chamber both give 0";
  return v;
}

int max_degree(const NormalForm& nf) {
  int out = 0;
  for (const auto& [m, c] : nf.terms()) out = std::max(out, m.degree());
  return out;
}

Verdict algebra_criterion() {
  Verdict v;
  for (int g = 0; g <= 3; ++g)
    for (std::int64_t d = -3; d <= 3; ++d) {
      const AlgebraContext ctx(1, g, d);
      NormalForm expected = Integer(-2 * d) * NormalForm::u(1);
      for (int k = 1; k <= g; ++k) expected -= Integer(2) * NormalForm::odd(1, 2 * k - 1) * NormalForm::odd(1, 2 * k);
      v.require(normalize(parse_expr("<c1.c1|S>", ctx), ctx) == expected, "<c1.c1|S> expansion");
    }

  std::mt19937 rng(2024);
  int fuzz = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const AlgebraContext ctx = testing::random_context(rng, trial);
    testing::ExprGen gen(rng, ctx);
    const std::string a = gen.expr(4), b = gen.expr(3);
    const NormalForm na = normalize(parse_expr(a, ctx), ctx);
    const NormalForm nb = normalize(parse_expr(b, ctx), ctx);
    v.require(normalize(parse_expr(print_normal(na), ctx), ctx) == na, "round trip of " + a);
    const NormalForm ab = normalize(parse_expr("(" + a + ")*(" + b + ")", ctx), ctx);
    const NormalForm ba = normalize(parse_expr("(" + b + ")*(" + a + ")", ctx), ctx);
    NormalForm swapped;
    for (int p = 0; p <= max_degree(na); ++p)
      for (int q = 0; q <= max_degree(nb); ++q) {
        const NormalForm bq = nb.grade_part(q);
        if (bq.is_zero()) continue;
        const NormalForm ap = na.grade_part(p);
        if (ap.is_zero()) continue;
        swapped += Integer((p * q) % 2 == 0 ? 1 : -1) * (bq * ap);
      }
    v.require(ab == swapped, "graded commutativity of " + a + " and " + b);
    v.require(ba == nb * na, "product of normal forms for " + b + " and " + a);
    ++fuzz;
  }
  if (v.ok) v.detail = "fuzz " + std::to_string(fuzz) + " expression pairs";
  v.require(slant_bridge_grid(4, 4, 3));
  return v;
}

Verdict exterior_criterion() {
  Verdict v;
  std::mt19937 rng(99);
  auto random_homogeneous = [&](int g, int grade) {
    Multivector out;
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<Blade> mask(0, (Blade{1} << (2 * g)) - 1);
    for (int found = 0, tries = 0; found < 3 && tries < 1000; ++tries) {
      const Blade b = mask(rng);
      if (blade_grade(b) != grade) continue;
      out.add_term(b, coef(rng));
      ++found;
    }
    return out;
  };
  int cases = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int g = 1 + trial % 5;
    const SurfaceTopology topo(g);
    std::uniform_int_distribution<int> grade(0, 2 * g);
    const int p = grade(rng), q = grade(rng), s = grade(rng);
    const Multivector x = random_homogeneous(g, p), y = random_homogeneous(g, q), z = random_homogeneous(g, s);
    const Integer sign = (p * q) % 2 == 0 ? 1 : -1;
    v.require(wedge(x, y, topo) == sign * wedge(y, x, topo), "graded commutativity");
    v.require(wedge(wedge(x, y, topo), z, topo) == wedge(x, wedge(y, z, topo), topo), "associativity");
    ++cases;
  }
  for (int g = 0; g <= 6; ++g) {
    const SurfaceTopology topo(g);
    const Multivector theta = theta_class(topo);
    v.require(top_pairing(divided_power(theta, g, topo), topo) == 1, "top_pairing(Theta^g/g!) = 1");
    v.require(wedge(exp_even(theta, topo), exp_even(-theta, topo), topo) == Multivector(1),
              "exp(Theta) exp(-Theta) = 1");
  }
  if (v.ok) v.detail = std::to_string(cases) + " random triples, g <= 6 identities";
  return v;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "quot count r0^g", 1.0, quot_count_criterion},
      {2, "oracle equivalence", 30.0, oracle_criterion},
      {3, "SW/GGW dictionary", 5.0, dictionary_criterion},
      {4, "worked instance", 0.0, worked_instance_criterion},
      {5, "zero laws", 0.0, zero_law_criterion},
      {6, "algebra engine", 30.0, algebra_criterion},
      {7, "exterior properties", 1.0, exterior_criterion},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.body();
    } catch (const std::exception& e) {
      v.ok = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs >= c.limit_seconds) {
      v.ok = false;
      v.detail += " (over the " + std::to_string(c.limit_seconds).substr(0, 4) + " s limit)";
    }
    if (!v.ok) ++failed;
    std::printf("%s criterion %d %s: %s [%.3f s]\n", v.ok ? "PASS" : "FAIL", c.id, c.name.c_str(),
                v.detail.c_str(), secs);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
