#pragma once

// Cross-validation grids shared by the `check` subcommand and the acceptance
// suite. Each grid compares two independent routes to the same number.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace gwcalc {

struct GridReport {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  nlohmann::json first_counterexample;  // null when failures == 0

  bool passed() const { return failures == 0; }
  nlohmann::json to_json() const;
};

/// quot_count(g, r0) = r0^g = ggw_abelian(g, r0, v, 1) for v in {g, g+1, g+2}.
GridReport quot_count_grid(int max_genus, std::int64_t max_r0);

/// ggw_via_segre = ggw_abelian for every basis monomial l and two valid twists.
GridReport oracle_grid(int max_genus, std::int64_t max_r0, std::int64_t max_deg,
                       unsigned threads = 0);

/// Ruled-surface dictionary: w_c / 2 = v = douady_index, <c, f> = 2n + 2 and
/// sw_ruled = sign * ggw_abelian for every basis monomial.
GridReport dictionary_grid(int max_genus, std::int64_t max_deg, std::int64_t max_n,
                           unsigned threads = 0);

/// evaluate_abelian(normalize(sum_{a <= v} u^a l)) = ggw_abelian.
GridReport slant_bridge_grid(int max_genus, std::int64_t max_r0, std::int64_t max_deg,
                             unsigned threads = 0);

}  // namespace gwcalc
