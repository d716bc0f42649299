#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gwcalc/numeric.hpp"

namespace gwcalc::cli {

struct CommandRequest {
  std::string subcommand;  // ggw, ggw-bundle, sw, quot-count, normalize, evaluate, check

  std::optional<std::int64_t> genus, r0, v, deg_e, deg_e0, d, n, deg_v0, r, scalar_degree;
  std::optional<std::int64_t> max_genus, max_r0, max_deg;
  std::optional<std::string> form, expr, chamber, tau;
  std::vector<std::string> k0;  // name=int
  unsigned threads = 0;         // check only; 0 = hardware concurrency
};

struct CommandResponse {
  int exit_code = 0;
  nlohmann::json body;  // empty on usage errors
  std::string error;
};

/// Integers beyond +-2^53 are rendered as decimal strings.
nlohmann::json to_json(const Integer& x);

/// Validates flags for the subcommand and runs it. Usage problems yield exit
/// code 2, failing checks exit code 1.
CommandResponse run(const CommandRequest& request);

/// Full front end: argv parsing, dispatch, JSON on `out`, messages on `err`.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gwcalc::cli
