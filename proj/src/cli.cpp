#include "gwcalc/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <map>
#include <tuple>

#include "gwcalc/exterior.hpp"
#include "gwcalc/index_arith.hpp"
#include "gwcalc/invariants.hpp"
#include "gwcalc/slant_algebra.hpp"
#include "gwcalc/verification.hpp"

namespace gwcalc::cli {

using nlohmann::json;

json to_json(const Integer& x) {
  static const Integer kSafe = Integer(1) << 53;
  if (abs(x) <= kSafe) return json(static_cast<std::int64_t>(x.get_si()));
  return json(x.get_str());
}

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::int64_t need(const std::optional<std::int64_t>& value, const char* flag) {
  if (!value) throw UsageError(std::string("missing required flag --") + flag);
  return *value;
}

int need_genus(const CommandRequest& req) {
  const std::int64_t g = need(req.genus, "genus");
  if (g < 0 || g > SurfaceTopology::kMaxGenus) {
    throw UsageError("--genus must lie in [0, " + std::to_string(SurfaceTopology::kMaxGenus) + "]");
  }
  return static_cast<int>(g);
}

std::int64_t need_positive(const std::optional<std::int64_t>& value, const char* flag) {
  const std::int64_t x = need(value, flag);
  if (x < 1) throw UsageError(std::string("--") + flag + " must be positive");
  return x;
}

std::string form_text(const CommandRequest& req) { return req.form.value_or("1"); }

Chamber requested_chamber(const CommandRequest& req) {
  const std::string c = req.chamber.value_or("interesting");
  if (c == "interesting") return Chamber::Interesting;
  if (c == "empty") return Chamber::Empty;
  throw UsageError("--chamber must be 'interesting' or 'empty'");
}

AlgebraContext algebra_context(const CommandRequest& req) {
  const std::int64_t r = need_positive(req.r, "r");
  std::map<std::string, std::int64_t> k0;
  for (const auto& entry : req.k0) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--k0 expects name=int, got '" + entry + "'");
    const std::string value = entry.substr(eq + 1);
    char* end = nullptr;
    const long long parsed = std::strtoll(value.c_str(), &end, 10);
    if (value.empty() || *end != '\0') throw UsageError("--k0 value is not an integer: '" + entry + "'");
    k0[entry.substr(0, eq)] = parsed;
  }
  return AlgebraContext(static_cast<int>(r), need_genus(req), need(req.scalar_degree, "scalar-degree"),
                        std::move(k0));
}

json context_inputs(const AlgebraContext& ctx) {
  json k0 = json::object();
  for (const auto& [name, value] : ctx.k0_eval) k0[name] = value;
  return json{{"r", ctx.r}, {"genus", ctx.genus}, {"scalar_degree", ctx.scalar_degree}, {"k0", k0}};
}

json run_ggw(const CommandRequest& req, json& inputs) {
  const int g = need_genus(req);
  const std::int64_t r0 = need_positive(req.r0, "r0");
  const std::int64_t v = need(req.v, "v");
  const Chamber chamber = requested_chamber(req);
  inputs = json{{"genus", g}, {"r0", r0}, {"v", v}, {"form", form_text(req)},
                {"chamber", to_string(chamber)}};
  const Multivector l = parse_multivector(form_text(req), SurfaceTopology(g));
  const Integer value = chamber == Chamber::Interesting ? ggw_abelian(g, r0, v, l) : Integer(0);
  return json{{"value", to_json(value)}, {"chamber", to_string(chamber)}};
}

json run_ggw_bundle(const CommandRequest& req, json& inputs) {
  const int g = need_genus(req);
  const std::int64_t r0 = need_positive(req.r0, "r0");
  const std::int64_t d = need(req.deg_e, "deg-e");
  const std::int64_t d0 = need(req.deg_e0, "deg-e0");
  inputs = json{{"genus", g}, {"r0", r0}, {"deg_e", d}, {"deg_e0", d0}, {"form", form_text(req)}};

  Chamber chamber = requested_chamber(req);
  if (req.tau) {
    if (req.chamber) throw UsageError("--tau and --chamber are mutually exclusive");
    Rational tau;
    try {
      tau = Rational(*req.tau);
    } catch (const std::invalid_argument&) {
      throw UsageError("--tau must be a rational p/q, got '" + *req.tau + "'");
    }
    if (tau.get_den() == 0) throw UsageError("--tau has zero denominator");
    tau.canonicalize();
    inputs["tau"] = tau.get_str();
    chamber = chamber_classify(ChamberParams::from_scaled(tau, BundleType(1, d)));
    if (chamber == Chamber::Wall) {
      throw InputError("parameter lies on the wall t*Vol/(2*pi) = -deg(E); the invariant is undefined");
    }
  }
  inputs["chamber"] = to_string(chamber);

  const std::int64_t v = abelian_v(r0, d, d0, g);
  const Multivector l = parse_multivector(form_text(req), SurfaceTopology(g));
  const Integer value = chamber == Chamber::Interesting ? ggw_abelian(g, r0, v, l) : Integer(0);
  return json{{"value", to_json(value)}, {"v", v}, {"chamber", to_string(chamber)}};
}

json run_sw(const CommandRequest& req, json& inputs) {
  const int g = need_genus(req);
  const std::int64_t d = need(req.d, "d");
  const std::int64_t n = need(req.n, "n");
  const std::int64_t d0 = need(req.deg_v0, "deg-v0");
  inputs = json{{"genus", g}, {"d", d}, {"n", n}, {"deg_v0", d0}, {"form", form_text(req)}};
  const RuledSurfaceGeometry geom(g, d0);
  const Multivector l = parse_multivector(form_text(req), SurfaceTopology(g));
  const SWResult sw = sw_ruled(d, n, geom, l);
  return json{{"sign", sw.sign},
              {"plus", to_json(sw.plus())},
              {"minus", to_json(sw.minus())},
              {"w_c", sw.w_c},
              {"c", json{{"s", sw.c.coef_s}, {"f", sw.c.coef_f}}},
              {"pair_with_fibre", sw.pair_with_fibre}};
}

json run_quot_count(const CommandRequest& req, json& inputs) {
  const int g = need_genus(req);
  const std::int64_t r0 = need_positive(req.r0, "r0");
  inputs = json{{"genus", g}, {"r0", r0}};
  return json{{"value", to_json(quot_count(g, r0))}};
}

json run_normalize(const CommandRequest& req, json& inputs) {
  const AlgebraContext ctx = algebra_context(req);
  if (!req.expr) throw UsageError("missing expression argument");
  inputs = context_inputs(ctx);
  inputs["expr"] = *req.expr;
  const NormalForm nf = normalize(parse_expr(*req.expr, ctx), ctx);
  return json{{"normal_form", print_normal(nf)}};
}

json run_evaluate(const CommandRequest& req, json& inputs) {
  const AlgebraContext ctx = algebra_context(req);
  if (!req.expr) throw UsageError("missing expression argument");
  const std::int64_t r0 = need_positive(req.r0, "r0");
  if (req.v.has_value() == req.deg_e0.has_value()) {
    throw UsageError("evaluate needs exactly one of --v or --deg-e0");
  }
  const std::int64_t v = req.v ? *req.v : abelian_v(r0, ctx.scalar_degree, *req.deg_e0, ctx.genus);
  inputs = context_inputs(ctx);
  inputs["expr"] = *req.expr;
  inputs["r0"] = r0;
  if (req.deg_e0) inputs["deg_e0"] = *req.deg_e0;
  const NormalForm nf = normalize(parse_expr(*req.expr, ctx), ctx);
  return json{{"normal_form", print_normal(nf)}, {"v", v},
              {"value", to_json(evaluate_abelian(nf, ctx.genus, r0, v))}};
}

json run_check(const CommandRequest& req, json& inputs, bool& passed) {
  const std::int64_t max_genus = req.max_genus.value_or(4);
  const std::int64_t max_r0 = req.max_r0.value_or(4);
  const std::int64_t max_deg = req.max_deg.value_or(3);
  if (max_genus < 0 || max_genus > 6) throw UsageError("--max-genus must lie in [0, 6]");
  if (max_r0 < 1 || max_r0 > 8) throw UsageError("--max-r0 must lie in [1, 8]");
  if (max_deg < 0 || max_deg > 8) throw UsageError("--max-deg must lie in [0, 8]");
  inputs = json{{"max_genus", max_genus}, {"max_r0", max_r0}, {"max_deg", max_deg}};

  const int g = static_cast<int>(max_genus);
  const std::vector<GridReport> reports = {
      quot_count_grid(g, max_r0),
      oracle_grid(g, max_r0, max_deg, req.threads),
      dictionary_grid(g, max_deg, max_r0 - 1, req.threads),
      slant_bridge_grid(g, max_r0, max_deg, req.threads),
  };
  json checks = json::object();
  passed = true;
  for (const auto& r : reports) {
    checks[r.name] = r.to_json();
    passed = passed && r.passed();
  }
  return json{{"checks", checks}, {"passed", passed}};
}

}  // namespace

CommandResponse run(const CommandRequest& req) {
  CommandResponse response;
  json inputs = json::object();
  try {
    json result;
    bool passed = true;
    if (req.subcommand == "ggw") {
      result = run_ggw(req, inputs);
    } else if (req.subcommand == "ggw-bundle") {
      result = run_ggw_bundle(req, inputs);
    } else if (req.subcommand == "sw") {
      result = run_sw(req, inputs);
    } else if (req.subcommand == "quot-count") {
      result = run_quot_count(req, inputs);
    } else if (req.subcommand == "normalize") {
      result = run_normalize(req, inputs);
    } else if (req.subcommand == "evaluate") {
      result = run_evaluate(req, inputs);
    } else if (req.subcommand == "check") {
      result = run_check(req, inputs, passed);
    } else {
      throw UsageError("unknown subcommand '" + req.subcommand + "'");
    }
    response.body = json{{"command", req.subcommand}, {"inputs", inputs}, {"result", result}};
    response.exit_code = passed ? 0 : 1;
  } catch (const UsageError& e) {
    response.exit_code = 2;
    response.error = e.what();
  } catch (const InputError& e) {
    response.exit_code = 2;
    response.error = e.what();
  } catch (const UnsupportedError& e) {
    response.exit_code = 2;
    response.error = std::string("unsupported: ") + e.what();
  }
  return response;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Gromov-Witten and Seiberg-Witten invariant calculator", "gwcalc"};
  app.require_subcommand(1);

  CommandRequest req;
  std::map<std::string, std::int64_t> ints;
  std::vector<std::tuple<CLI::Option*, std::optional<std::int64_t>*, std::string>> int_flags;
  std::vector<std::tuple<CLI::Option*, std::optional<std::string>*, std::string>> str_flags;

  auto int_flag = [&](CLI::App* sub, const std::string& name, std::optional<std::int64_t>& slot,
                      const std::string& help, bool required = false) {
    const std::string key = sub->get_name() + name;
    auto* opt = sub->add_option(name, ints[key], help);
    if (required) opt->required();
    int_flags.emplace_back(opt, &slot, key);
  };
  std::map<std::string, std::string> strs;
  auto str_flag = [&](CLI::App* sub, const std::string& name, std::optional<std::string>& slot,
                      const std::string& help) {
    const std::string key = sub->get_name() + name;
    auto* opt = sub->add_option(name, strs[key], help);
    str_flags.emplace_back(opt, &slot, key);
    return opt;
  };

  auto* ggw = app.add_subcommand("ggw", "abelian invariant for given expected dimension v");
  int_flag(ggw, "--genus", req.genus, "genus of the curve", true);
  int_flag(ggw, "--r0", req.r0, "rank of the target bundle", true);
  int_flag(ggw, "--v", req.v, "expected dimension", true);
  str_flag(ggw, "--form", req.form, "multivector l, e.g. 2*a1^b1 - 3 (default 1)");
  str_flag(ggw, "--chamber", req.chamber, "interesting (default) or empty");

  auto* bundle = app.add_subcommand("ggw-bundle", "abelian invariant from bundle degrees");
  int_flag(bundle, "--genus", req.genus, "genus of the curve", true);
  int_flag(bundle, "--r0", req.r0, "rank of the target bundle", true);
  int_flag(bundle, "--deg-e", req.deg_e, "degree of the kernel line bundle", true);
  int_flag(bundle, "--deg-e0", req.deg_e0, "degree of the target bundle", true);
  str_flag(bundle, "--form", req.form, "multivector l (default 1)");
  str_flag(bundle, "--chamber", req.chamber, "interesting (default) or empty");
  str_flag(bundle, "--tau", req.tau, "rational t*Vol/(2*pi); selects the chamber");

  auto* sw = app.add_subcommand("sw", "full Seiberg-Witten invariant of a ruled surface");
  int_flag(sw, "--genus", req.genus, "genus of the base curve", true);
  int_flag(sw, "--d", req.d, "fibre coefficient of m = d f + n s", true);
  int_flag(sw, "--n", req.n, "section coefficient of m = d f + n s", true);
  int_flag(sw, "--deg-v0", req.deg_v0, "degree of the rank-2 bundle V0", true);
  str_flag(sw, "--form", req.form, "multivector l (default 1)");

  auto* quot = app.add_subcommand("quot-count", "length of a zero-dimensional abelian quot space");
  int_flag(quot, "--genus", req.genus, "genus of the curve", true);
  int_flag(quot, "--r0", req.r0, "rank of the target bundle", true);

  std::string expr;
  auto algebra_flags = [&](CLI::App* sub) {
    int_flag(sub, "--r", req.r, "rank of the structure group U(r)", true);
    int_flag(sub, "--genus", req.genus, "genus of the curve", true);
    int_flag(sub, "--scalar-degree", req.scalar_degree, "degree d of the kernel bundle", true);
    sub->add_option("--k0", req.k0, "degree-2 K0 class pairing, name=int (repeatable)");
    sub->add_option("expr", expr, "slant expression")->required();
  };
  auto* norm = app.add_subcommand("normalize", "normal form of a slant-product expression");
  algebra_flags(norm);
  auto* eval = app.add_subcommand("evaluate", "normalize then evaluate the abelian invariant");
  algebra_flags(eval);
  int_flag(eval, "--r0", req.r0, "rank of the target bundle", true);
  int_flag(eval, "--v", req.v, "expected dimension");
  int_flag(eval, "--deg-e0", req.deg_e0, "degree of the target bundle (alternative to --v)");

  auto* check = app.add_subcommand("check", "run the cross-validation grids");
  int_flag(check, "--max-genus", req.max_genus, "largest genus (default 4)");
  int_flag(check, "--max-r0", req.max_r0, "largest target rank (default 4)");
  int_flag(check, "--max-deg", req.max_deg, "largest |degree| (default 3)");
  check->add_option("--threads", req.threads, "worker threads (default: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  for (auto* sub : app.get_subcommands()) req.subcommand = sub->get_name();
  for (auto& [opt, slot, key] : int_flags) {
    if (opt->count() > 0) *slot = ints[key];
  }
  for (auto& [opt, slot, key] : str_flags) {
    if (opt->count() > 0) *slot = strs[key];
  }
  if (!expr.empty() || req.subcommand == "normalize" || req.subcommand == "evaluate") req.expr = expr;

  const CommandResponse response = run(req);
  if (response.exit_code == 2) {
    err << "error: " << response.error << "\n";
    return 2;
  }
  out << response.body.dump() << "\n";
  return response.exit_code;
}

}  // namespace gwcalc::cli
