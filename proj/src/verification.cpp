#include "gwcalc/verification.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>

#include "gwcalc/cli.hpp"
#include "gwcalc/exterior.hpp"
#include "gwcalc/index_arith.hpp"
#include "gwcalc/invariants.hpp"
#include "gwcalc/pic_oracle.hpp"
#include "gwcalc/slant_algebra.hpp"

namespace gwcalc {

using nlohmann::json;

json GridReport::to_json() const {
  return json{{"cases", cases}, {"failures", failures}, {"first_counterexample", first_counterexample}};
}

namespace {

struct Partial {
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  json first_counterexample;

  void record(bool ok, const std::function<json()>& describe) {
    ++cases;
    if (ok) return;
    if (failures == 0) first_counterexample = describe();
    ++failures;
  }
};

// Runs jobs concurrently and merges in job order, so the reported first
// counterexample does not depend on scheduling.
GridReport run_jobs(std::string name, std::vector<std::function<Partial()>> jobs, unsigned threads) {
  std::vector<Partial> results(jobs.size());
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, jobs.size())));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        results[i] = jobs[i]();
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (error) std::rethrow_exception(error);

  GridReport report;
  report.name = std::move(name);
  for (auto& p : results) {
    if (p.failures > 0 && report.failures == 0) report.first_counterexample = std::move(p.first_counterexample);
    report.cases += p.cases;
    report.failures += p.failures;
  }
  return report;
}

std::vector<Multivector> basis_monomials(int genus) {
  std::vector<Multivector> out;
  const Blade count = Blade{1} << (2 * genus);
  for (Blade b = 0; b < count; ++b) out.push_back(Multivector::blade(b));
  return out;
}

}  // namespace

GridReport quot_count_grid(int max_genus, std::int64_t max_r0) {
  Partial p;
  for (int g = 0; g <= max_genus; ++g) {
    for (std::int64_t r0 = 1; r0 <= max_r0; ++r0) {
      const Integer expected = ipow(Integer(r0), static_cast<unsigned long>(g));
      const Integer count = quot_count(g, r0);
      p.record(count == expected, [&] {
        return json{{"genus", g}, {"r0", r0}, {"quot_count", cli::to_json(count)}};
      });
      for (std::int64_t v = g; v <= g + 2; ++v) {
        const Integer value = ggw_abelian(g, r0, v, Multivector(1));
        p.record(value == expected, [&] {
          return json{{"genus", g}, {"r0", r0}, {"v", v}, {"ggw", cli::to_json(value)},
                      {"expected", cli::to_json(expected)}};
        });
      }
    }
  }
  GridReport report;
  report.name = "quot_count";
  report.cases = p.cases;
  report.failures = p.failures;
  report.first_counterexample = p.first_counterexample;
  return report;
}

GridReport oracle_grid(int max_genus, std::int64_t max_r0, std::int64_t max_deg, unsigned threads) {
  std::vector<std::function<Partial()>> jobs;
  for (int g = 0; g <= max_genus; ++g) {
    for (std::int64_t r0 = 1; r0 <= max_r0; ++r0) {
      for (std::int64_t d = -max_deg; d <= max_deg; ++d) {
        for (std::int64_t d0 = -max_deg; d0 <= max_deg; ++d0) {
          jobs.emplace_back([=] {
            Partial p;
            const std::int64_t v = abelian_v(r0, d, d0, g);
            const std::int64_t twist0 = QuotPipeline::min_aux_twist(g, r0, d, d0);
            const QuotPipeline pipes[] = {QuotPipeline(g, r0, d, d0, twist0),
                                          QuotPipeline(g, r0, d, d0, twist0 + 1)};
            const SurfaceTopology topo(g);
            for (const auto& l : basis_monomials(g)) {
              const Integer closed = ggw_abelian(g, r0, v, l);
              for (int t = 0; t < 2; ++t) {
                const Integer oracle = pipes[t].invariant(l);
                p.record(oracle == closed, [&] {
                  return json{{"genus", g}, {"r0", r0}, {"d", d}, {"d0", d0},
                              {"aux_twist", twist0 + t},
                              {"l", to_string(l, topo)}, {"closed_form", cli::to_json(closed)},
                              {"segre_pipeline", cli::to_json(oracle)}};
                });
              }
            }
            return p;
          });
        }
      }
    }
  }
  return run_jobs("oracle_equivalence", std::move(jobs), threads);
}

GridReport dictionary_grid(int max_genus, std::int64_t max_deg, std::int64_t max_n, unsigned threads) {
  std::vector<std::function<Partial()>> jobs;
  for (int g = 0; g <= max_genus; ++g) {
    for (std::int64_t d = -max_deg; d <= max_deg; ++d) {
      for (std::int64_t n = 0; n <= max_n; ++n) {
        for (std::int64_t d0 = -max_deg; d0 <= max_deg; ++d0) {
          jobs.emplace_back([=] {
            Partial p;
            const RuledSurfaceGeometry geom(g, d0);
            const H2Class c = spinc_det(d, n, geom);
            const std::int64_t wc = index_wc(c, geom);
            const std::int64_t v = abelian_v(n + 1, -d, n * (n + 1) * d0 / 2, g);
            const std::int64_t w = douady_index(H2Class{n, d}, geom);
            const std::int64_t pair = intersect(c, H2Class::fibre(), geom);
            auto where = [&] {
              return json{{"genus", g}, {"d", d}, {"n", n}, {"d0", d0}, {"w_c", wc}, {"v", v},
                          {"douady_index", w}, {"pair_with_fibre", pair}};
            };
            p.record(wc == 2 * v, where);
            p.record(w == v, where);
            p.record(pair == 2 * n + 2, where);
            const SurfaceTopology topo(g);
            for (const auto& l : basis_monomials(g)) {
              p.record(sw_equals_ggw_check(d, n, geom, l), [&] {
                json j = where();
                j["l"] = to_string(l, topo);
                return j;
              });
            }
            return p;
          });
        }
      }
    }
  }
  return run_jobs("sw_ggw_dictionary", std::move(jobs), threads);
}

GridReport slant_bridge_grid(int max_genus, std::int64_t max_r0, std::int64_t max_deg,
                             unsigned threads) {
  std::vector<std::function<Partial()>> jobs;
  for (int g = 0; g <= max_genus; ++g) {
    for (std::int64_t r0 = 1; r0 <= max_r0; ++r0) {
      for (std::int64_t d = -max_deg; d <= max_deg; ++d) {
        for (std::int64_t d0 = -max_deg; d0 <= max_deg; ++d0) {
          jobs.emplace_back([=] {
            Partial p;
            const std::int64_t v = abelian_v(r0, d, d0, g);
            const AlgebraContext ctx(1, g, d);
            std::string u_sum = "0";
            if (v >= 0) {
              u_sum = "1";
              for (std::int64_t a = 1; a <= v; ++a) u_sum += " + <c1|pt>^" + std::to_string(a);
            }
            const SurfaceTopology topo(g);
            for (const auto& l : basis_monomials(g)) {
              std::string text = "(" + u_sum + ")";
              const Blade b = l.terms().begin()->first;
              for (int j = 0; j < 2 * g; ++j) {
                if (b & (Blade{1} << j)) text += "*<c1|g" + std::to_string(j + 1) + ">";
              }
              const Integer via_algebra = evaluate_abelian(normalize(parse_expr(text, ctx), ctx), g, r0, v);
              const Integer closed = ggw_abelian(g, r0, v, l);
              p.record(via_algebra == closed, [&] {
                return json{{"genus", g}, {"r0", r0}, {"d", d}, {"d0", d0}, {"expr", text},
                            {"evaluate_abelian", cli::to_json(via_algebra)},
                            {"closed_form", cli::to_json(closed)}};
              });
            }
            return p;
          });
        }
      }
    }
  }
  return run_jobs("slant_bridge", std::move(jobs), threads);
}

}  // namespace gwcalc
