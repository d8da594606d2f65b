// Copyright 2026 The dpbw Authors
// SPDX-License-Identifier: Apache-2.0

#include "dpbw/cli/app.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dpbw/cli/report.hpp"
#include "dpbw/cli/scenario.hpp"
#include "dpbw/cli/serialize.hpp"
#include "dpbw/cli/sweep.hpp"
#include "dpbw/equilibrium.hpp"
#include "dpbw/sim.hpp"
#include "dpbw/two_pool.hpp"

#ifndef DPBW_VERSION
#define DPBW_VERSION "0.0.0"
#endif

namespace dpbw::cli {
namespace {

constexpr double kEyalRegretFloor = 1e-4;

struct Options {
  std::string config;
  std::string strategy;
  std::string out;
  std::string format = "auto";
  std::uint64_t seed = 1;

  std::size_t pool = 0;
  int grid = 256;
  double tol = kCertifyTolerance;
  int starts = 16;

  std::string target;
  std::size_t samples = 10000;
  int claim_grid = 1000;
  bool exploratory = false;

  std::string param;
  std::string range;

  std::int64_t rounds = 1000000;
  std::int64_t epochs = 50;
  std::int64_t burn_in = 10;
  std::string award_base = "total";
  double k_sigma = 3.0;
};

struct Outcome {
  int exit_code = kExitOk;
  Json results;
  std::string csv;
  std::ostringstream summary;
};

struct Context {
  ScenarioFile scenario;
  ValidatedGame game;
  std::vector<std::string> digest_parts;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

Context load_context(const Options& o) {
  std::string text = read_file(o.config);
  ScenarioFile s = parse_scenario(text);
  ValidatedGame game = validate_scenario_game(s.game);
  Context ctx{std::move(s), std::move(game), {std::move(text)}};
  return ctx;
}

StrategyProfile strategy_for(Context& ctx, const Options& o) {
  if (!o.strategy.empty()) {
    std::string text = read_file(o.strategy);
    StrategyProfile x = parse_strategy(text, ctx.game);
    ctx.digest_parts.push_back(std::move(text));
    return x;
  }
  if (ctx.scenario.strategy) return *ctx.scenario.strategy;
  return StrategyProfile::zeros(ctx.game.num_pools());
}

TwoPoolGame require_two_pools(const ValidatedGame& game, const char* what) {
  if (game.num_pools() != 2) {
    throw InputError(ErrorCode::kValidationError, "pools",
                     std::string(what) + " needs exactly two pools");
  }
  return TwoPoolGame::from(game);
}

std::string check_csv(const std::vector<std::vector<Json>>& rows) {
  std::string out = csv_line({"check", "passed", "metric", "value"});
  for (const auto& r : rows) out += csv_line(r);
  return out;
}

EquilibriumReport find_equilibria(const ValidatedGame& game, const Options& o) {
  if (game.num_pools() == 2) {
    return enumerate_equilibria_2pool(TwoPoolGame::from(game), o.grid, o.tol);
  }
  return explore_equilibria(game, o.starts, o.seed, o.tol);
}

void cmd_rewards(Context& ctx, const Options& o, Outcome& res) {
  const StrategyProfile x = strategy_for(ctx, o);
  const RewardBreakdown rb = solve_rewards(ctx.game, x);
  const FixedPointResult fp = solve_rewards_fixed_point(ctx.game, x);
  double gap = 0.0;
  for (std::size_t i = 0; i < rb.total.size(); ++i) {
    gap = std::max(gap, std::abs(rb.total[i] - fp.total[i]));
  }
  res.results = rewards_json(ctx.game, rb);
  res.results["strategy"] = profile_json(x);
  res.results["social_welfare"] = social_welfare(ctx.game, x);
  res.results["fixed_point"] = Json{{"converged", fp.converged},
                                    {"iterations", fp.iterations},
                                    {"max_gap", gap}};
  res.csv = csv_line({"pool", "direct", "infiltration", "reward", "utility"});
  for (std::size_t i = 0; i < rb.total.size(); ++i) {
    res.csv += csv_line({ctx.game.pool_name(i), rb.direct[i], rb.infiltration[i],
                         rb.total[i], rb.utility[i]});
    res.summary << ctx.game.pool_name(i) << ": r = " << fmt(rb.total[i])
                << ", U = " << fmt(rb.utility[i]) << "\n";
  }
  res.summary << "social welfare " << fmt(social_welfare(ctx.game, x)) << "\n";
}

void cmd_best_response(Context& ctx, const Options& o, Outcome& res) {
  const std::size_t n = ctx.game.num_pools();
  if (o.pool < 1 || o.pool > n) {
    throw InputError(ErrorCode::kValidationError, "--pool",
                     "pool index must lie in 1.." + std::to_string(n));
  }
  const StrategyProfile x = strategy_for(ctx, o);
  const std::size_t p = o.pool - 1;
  const BestResponseResult br = best_response(ctx.game, x, p);
  const double incumbent = utility(ctx.game, x, p);
  res.results = best_response_json(br);
  res.results["incumbent_utility"] = incumbent;
  res.results["improvement"] = br.value - incumbent;
  std::vector<Json> head{"pool", "value", "incumbent_utility", "method", "iterations"};
  std::vector<Json> row{o.pool, br.value, incumbent, to_string(br.method),
                        br.iterations};
  for (std::size_t j = 0; j < n; ++j) {
    head.emplace_back("x_" + std::to_string(o.pool) + "_" + std::to_string(j + 1));
    row.emplace_back(br.strategy[j]);
  }
  res.csv = csv_line(head) + csv_line(row);
  res.summary << "best response of " << ctx.game.pool_name(p) << ": [";
  for (std::size_t j = 0; j < n; ++j) res.summary << (j ? ", " : "") << fmt(br.strategy[j]);
  res.summary << "] with utility " << fmt(br.value) << " (incumbent "
              << fmt(incumbent) << ")\n";
}

void equilibria_csv(const EquilibriumReport& r, std::size_t n, Outcome& res) {
  std::vector<Json> head{"candidate"};
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      head.emplace_back("x_" + std::to_string(i) + "_" + std::to_string(j));
    }
  }
  for (const char* c : {"regret", "welfare", "certified", "case_1", "case_2"}) {
    head.emplace_back(c);
  }
  res.csv = csv_line(head);
  for (std::size_t k = 0; k < r.candidates.size(); ++k) {
    const auto& c = r.candidates[k];
    std::vector<Json> row{k + 1};
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) row.emplace_back(c.profile(i, j));
    }
    row.emplace_back(c.regret);
    row.emplace_back(c.welfare);
    row.emplace_back(c.certified);
    for (std::size_t p = 0; p < 2; ++p) {
      row.push_back(c.case_labels ? Json(to_string((*c.case_labels)[p].label))
                                  : Json());
    }
    res.csv += csv_line(row);
  }
}

void summarize_equilibria(const EquilibriumReport& r, std::ostream& os) {
  os << r.certified_count() << " certified equilibrium candidate(s) of "
     << r.candidates.size() << "\n";
  for (const auto& c : r.candidates) {
    os << "  " << (c.certified ? "certified " : "uncertified ") << "[";
    for (std::size_t i = 0; i < c.profile.num_pools(); ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < c.profile.num_pools(); ++j) {
        os << (j ? ", " : "") << fmt(c.profile(i, j));
      }
      os << "]";
    }
    os << "] regret " << fmt(c.regret) << ", welfare " << fmt(c.welfare) << "\n";
  }
  if (r.certified_count() > 0) {
    os << "PoA " << fmt(r.poa) << ", PoS " << fmt(r.pos) << "\n";
  }
}

void cmd_equilibria(Context& ctx, const Options& o, Outcome& res) {
  const EquilibriumReport r = find_equilibria(ctx.game, o);
  res.results = equilibrium_report_json(r);
  res.results["theorem1_bound_holds"] = ctx.game.theorem1_bound_holds();
  if (auto t2 = ctx.game.theorem2_precondition()) {
    res.results["theorem2_precondition"] = *t2;
  }
  equilibria_csv(r, ctx.game.num_pools(), res);
  summarize_equilibria(r, res.summary);
}

void verify_theorem1_cmd(Context& ctx, const Options& o, Outcome& res) {
  const Theorem1Report r = verify_theorem1(ctx.game, o.samples, o.seed);
  res.results = theorem1_json(r);
  res.exit_code = r.passed() ? kExitOk : kExitCheckFailed;
  res.csv = check_csv({{"reward_bound", r.passed(), "max_reward_excess",
                        r.max_reward_excess},
                       {"per_pool_term", r.passed(), "max_per_pool_term",
                        r.max_per_pool_term},
                       {"violations", r.passed(), "count", r.violations.size()}});
  res.summary << (r.passed() ? "no-attack profile is an equilibrium: "
                             : "VIOLATIONS found: ")
              << r.violations.size() << " violation(s) over " << r.evaluated
              << " deviations\n";
}

void verify_theorem2_cmd(Context& ctx, const Options& o, Outcome& res) {
  const TwoPoolGame g = require_two_pools(ctx.game, "verify theorem2");
  const Theorem2Report r =
      verify_theorem2(g, o.grid, o.tol, o.exploratory, o.claim_grid);
  res.results = theorem2_json(r);
  if (r.passed || (o.exploratory && !r.precondition_met)) {
    res.exit_code = kExitOk;
  } else {
    res.exit_code = kExitCheckFailed;
  }
  res.csv = check_csv(
      {{"precondition", r.precondition_met, "certified_candidates",
        r.equilibria.certified_count()},
       {"unique_zero", r.unique_zero, "certified_candidates",
        r.equilibria.certified_count()},
       {"corners", r.corners.all_certified, "corners", r.corners.corners.size()},
       {"claims", r.claims ? Json(r.claims->passed()) : Json(), "violations",
        r.claims ? Json(r.claims->violations.size()) : Json()}});
  if (r.passed) {
    res.summary << "unique NE (0,0)\n";
  } else if (!r.precondition_met) {
    res.summary << "preconditions unmet (exploratory run, outcome not asserted)\n";
  } else {
    res.summary << "FAILED: zero profile is not the unique certified equilibrium\n";
  }
  summarize_equilibria(r.equilibria, res.summary);
}

void verify_claims_cmd(Context& ctx, const Options& o, Outcome& res) {
  const TwoPoolGame g = require_two_pools(ctx.game, "verify claims");
  const ClaimReport r = claim_suite(g, o.claim_grid);
  res.results = claim_report_json(r);
  res.exit_code = r.passed() ? kExitOk : kExitCheckFailed;
  const std::size_t table1_flags =
      res.results["table1"]["discrepancies"].size();
  res.csv = check_csv(
      {{"claim1", r.claim1_violations[0] + r.claim1_violations[1] == 0,
        "violations", r.claim1_violations[0] + r.claim1_violations[1]},
       {"claim2", r.claim2_violations[0] + r.claim2_violations[1] == 0,
        "violations", r.claim2_violations[0] + r.claim2_violations[1]},
       {"claim3", r.claim3_violations[0] + r.claim3_violations[1] == 0,
        "violations", r.claim3_violations[0] + r.claim3_violations[1]},
       {"lemma2", r.lemma2_violations[0] + r.lemma2_violations[1] == 0,
        "violations", r.lemma2_violations[0] + r.lemma2_violations[1]},
       {"lemma1", r.lemma1.contradiction_holds, "qbar_sum", r.lemma1.qbar_sum},
       {"table1_diagnostic", Json(), "discrepancies", table1_flags}});
  res.summary << (r.passed() ? "claim suite passed" : "claim suite FAILED") << " on a "
              << r.grid_n << "-point grid; " << r.violations.size()
              << " violation(s) recorded\n"
              << "coefficient-table diagnostic: " << table1_flags
              << " sign discrepancy(ies) reported\n";
}

void verify_corners_cmd(Context& ctx, const Options&, Outcome& res) {
  const TwoPoolGame g = require_two_pools(ctx.game, "verify corners");
  const CornerReport r = corner_case_check(g);
  res.results = corner_report_json(r);
  res.exit_code = r.all_certified ? kExitOk : kExitCheckFailed;
  std::vector<std::vector<Json>> rows;
  for (const auto& c : r.corners) {
    rows.push_back({"corner(" + fmt(c.x1) + ";" + fmt(c.x2) + ")",
                    c.certified_non_equilibrium, "deviation_gain",
                    c.deviation_gain});
  }
  res.csv = check_csv(rows);
  res.summary << (r.all_certified ? "all corners are certified non-equilibria\n"
                                  : "FAILED: some corner is not refuted\n");
}

void verify_eyal_cmd(Context& ctx, const Options& o, Outcome& res) {
  GameConfig cfg = ctx.game.config();
  for (auto& a : cfg.alphas) a = 1.0;
  const ValidatedGame eyal = validate_game(cfg);
  const double zero_regret = regret(eyal, StrategyProfile::zeros(eyal.num_pools()));
  const EquilibriumReport r = find_equilibria(eyal, o);

  bool below = r.certified_count() > 0;
  Json utilities = Json::array();
  for (const auto& c : r.candidates) {
    if (!c.certified) continue;
    Json u = Json::array();
    for (std::size_t i = 0; i < eyal.num_pools(); ++i) {
      const double ui = utility(eyal, c.profile, i);
      u.push_back(ui);
      if (!(ui < eyal.power(i) / eyal.total_power())) below = false;
    }
    utilities.push_back(u);
  }
  const bool not_nash = zero_regret > kEyalRegretFloor;
  const bool passed = not_nash && below;
  res.results = Json{{"passed", passed},
                     {"zero_profile_regret", zero_regret},
                     {"regret_floor", kEyalRegretFloor},
                     {"zero_profile_not_equilibrium", not_nash},
                     {"all_below_honest", below},
                     {"certified_utilities", utilities},
                     {"equilibria", equilibrium_report_json(r)}};
  res.exit_code = passed ? kExitOk : kExitCheckFailed;
  res.csv = check_csv({{"zero_profile_not_equilibrium", not_nash,
                        "zero_profile_regret", zero_regret},
                       {"all_below_honest", below, "certified_candidates",
                        r.certified_count()}});
  res.summary << "alpha = 1 for every pool: zero-profile regret "
              << fmt(zero_regret) << "\n";
  summarize_equilibria(r, res.summary);
  res.summary << (passed ? "every certified equilibrium leaves each pool below "
                           "its honest share\n"
                         : "FAILED: baseline contrast does not hold\n");
}

void cmd_verify(Context& ctx, const Options& o, Outcome& res) {
  if (o.target == "theorem1") return verify_theorem1_cmd(ctx, o, res);
  if (o.target == "theorem2") return verify_theorem2_cmd(ctx, o, res);
  if (o.target == "claims") return verify_claims_cmd(ctx, o, res);
  if (o.target == "corners") return verify_corners_cmd(ctx, o, res);
  return verify_eyal_cmd(ctx, o, res);
}

void cmd_sweep(Context& ctx, const Options& o, Outcome& res) {
  const SweepSpec spec = parse_sweep_spec(o.param, o.range);
  SweepOptions opts;
  opts.grid_n = o.grid;
  opts.eps = o.tol;
  opts.random_starts = o.starts;
  opts.seed = o.seed;
  const std::vector<SweepRow> rows = sweep(ctx.scenario.game, spec, opts);
  const std::size_t n = ctx.game.num_pools();
  res.csv = sweep_csv(rows, n);
  Json jrows = Json::array();
  std::size_t errors = 0;
  for (const auto& r : rows) {
    Json j{{"param_value", r.param_value}};
    if (!r.error.empty()) {
      ++errors;
      j["error"] = r.error;
    } else {
      j["n_equilibria"] = r.n_equilibria;
      j["best"] = r.best ? profile_json(*r.best) : Json();
      j["regret"] = r.regret;
      j["welfare"] = r.welfare;
      j["poa"] = r.poa;
      j["pos"] = r.pos;
      j["theorem1_bound_holds"] = r.theorem1_bound_holds;
      j["theorem2_precond_holds"] =
          r.theorem2_precond_holds ? Json(*r.theorem2_precond_holds) : Json();
    }
    jrows.push_back(j);
  }
  res.results = Json{{"param", spec.param},
                     {"start", spec.start},
                     {"stop", spec.stop},
                     {"step", spec.step},
                     {"columns", sweep_csv_header(n)},
                     {"rows", jrows}};
  res.summary << "sweep over " << spec.param << ": " << rows.size() << " row(s), "
              << errors << " with errors\n";
  for (const auto& r : rows) {
    res.summary << "  " << fmt(r.param_value) << ": ";
    if (!r.error.empty()) {
      res.summary << "error: " << r.error << "\n";
    } else {
      res.summary << r.n_equilibria << " certified, PoA " << fmt(r.poa)
                  << ", PoS " << fmt(r.pos) << "\n";
    }
  }
}

void cmd_simulate(Context& ctx, const Options& o, Outcome& res) {
  if (o.epochs <= 0 || o.rounds <= 0 || o.rounds % o.epochs != 0) {
    throw InputError(ErrorCode::kInvalidRange, "--rounds",
                     "rounds must be a positive multiple of epochs");
  }
  const StrategyProfile x = strategy_for(ctx, o);
  SimConfig cfg;
  cfg.rounds_per_epoch = o.rounds / o.epochs;
  cfg.epochs = o.epochs;
  cfg.burn_in_epochs = o.burn_in;
  cfg.seed = o.seed;
  cfg.award_base = o.award_base == "direct" ? AwardBase::kDirectRevenueOnly
                                            : AwardBase::kTotalRevenue;
  try {
    validate_sim_config(cfg);
  } catch (const Error& e) {
    throw InputError(ErrorCode::kValidationError, "--burn-in", e.what());
  }
  const SimResult sim = simulate(ctx.game, x, cfg);
  const RewardBreakdown rb = solve_rewards(ctx.game, x);
  const CompareReport cmp = compare(sim, rb, o.k_sigma, &ctx.game);
  res.results = Json{{"award_base", to_string(cfg.award_base)},
                     {"canonical", sim.canonical},
                     {"rounds_per_epoch", cfg.rounds_per_epoch},
                     {"epochs", cfg.epochs},
                     {"burn_in_epochs", cfg.burn_in_epochs},
                     {"k_sigma", o.k_sigma},
                     {"strategy", profile_json(x)},
                     {"simulation", sim_result_json(sim)},
                     {"analytic", rewards_json(ctx.game, rb)},
                     {"comparison", compare_json(cmp)}};
  // The alternative award base has no analytic counterpart here.
  res.exit_code = (!sim.canonical || cmp.passed) ? kExitOk : kExitCheckFailed;
  res.csv = csv_line({"quantity", "pool", "empirical", "analytic", "std_err",
                      "bound", "passed"});
  for (const auto& e : cmp.entries) {
    res.csv += csv_line({e.quantity, ctx.game.pool_name(e.pool), e.empirical,
                         e.analytic, e.std_err, e.bound, e.passed});
    res.summary << e.quantity << "[" << ctx.game.pool_name(e.pool)
                << "]: simulated " << fmt(e.empirical) << " +- " << fmt(e.std_err)
                << ", analytic " << fmt(e.analytic) << (e.passed ? "" : "  MISMATCH")
                << "\n";
  }
  if (!sim.canonical) res.summary << "non-canonical award base; not asserted\n";
}

std::vector<std::string> command_echo(int argc, const char* const* argv) {
  std::vector<std::string> echo;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--out") {
      ++i;
      continue;
    }
    if (a.rfind("--out=", 0) == 0) continue;
    echo.push_back(a);
  }
  return echo;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "Scenario JSON file")->required();
  sub->add_option("--strategy", o.strategy, "Strategy JSON file");
  sub->add_option("--out", o.out, "Machine-readable report path");
  sub->add_option("--format", o.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--seed", o.seed, "Random seed");
}

void add_search(CLI::App* sub, Options& o) {
  sub->add_option("--grid", o.grid, "Grid resolution per axis (two pools)")
      ->check(CLI::Range(1, 100000));
  sub->add_option("--tol", o.tol, "Certification tolerance on regret")
      ->check(CLI::PositiveNumber);
  sub->add_option("--starts", o.starts, "Random starts for more than two pools")
      ->check(CLI::NonNegativeNumber);
}

}  // namespace

const char* version() { return DPBW_VERSION; }

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Solver and verification lab for withholding games with a "
               "finder's award"};
  app.set_version_flag("--version", DPBW_VERSION);
  app.require_subcommand(1, 1);

  auto* rewards = app.add_subcommand("rewards", "Rewards and utilities of a profile");
  add_common(rewards, o);

  auto* br = app.add_subcommand("best-response", "Best response of one pool");
  add_common(br, o);
  br->add_option("--pool", o.pool, "Pool index (1-based)")->required();

  auto* eq = app.add_subcommand("equilibria", "Enumerate pure equilibria");
  add_common(eq, o);
  add_search(eq, o);

  auto* verify = app.add_subcommand("verify", "Run a verification campaign");
  add_common(verify, o);
  add_search(verify, o);
  verify->add_option("target", o.target, "What to verify")
      ->required()
      ->check(CLI::IsMember({"theorem1", "theorem2", "claims", "corners", "eyal"}));
  verify->add_option("--samples", o.samples, "Deviations sampled per pool");
  verify->add_option("--claim-grid", o.claim_grid, "Grid points for the claim suite")
      ->check(CLI::Range(1, 100000));
  verify->add_flag("--exploratory", o.exploratory,
                   "Report instead of rejecting games outside the preconditions");

  auto* sw = app.add_subcommand("sweep", "Sweep one parameter");
  add_common(sw, o);
  add_search(sw, o);
  sw->add_option("--param", o.param, "alpha, alpha_<i>, m or m_<i>")->required();
  sw->add_option("--range", o.range, "start:stop:step")->required();

  auto* sim = app.add_subcommand("simulate", "Monte Carlo mining simulation");
  add_common(sim, o);
  sim->add_option("--rounds", o.rounds, "Total rounds");
  sim->add_option("--epochs", o.epochs, "Settlement epochs");
  sim->add_option("--burn-in", o.burn_in, "Epochs discarded before estimating");
  sim->add_option("--award-base", o.award_base, "total (canonical) or direct")
      ->check(CLI::IsMember({"total", "direct"}));
  sim->add_option("--k-sigma", o.k_sigma, "Standard errors allowed")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  Outcome res;
  try {
    Context ctx = load_context(o);
    if (name == "rewards") {
      cmd_rewards(ctx, o, res);
    } else if (name == "best-response") {
      cmd_best_response(ctx, o, res);
    } else if (name == "equilibria") {
      cmd_equilibria(ctx, o, res);
    } else if (name == "verify") {
      cmd_verify(ctx, o, res);
    } else if (name == "sweep") {
      cmd_sweep(ctx, o, res);
    } else {
      cmd_simulate(ctx, o, res);
    }

    if (!o.out.empty()) {
      const std::string format =
          o.format == "auto" ? (name == "sweep" ? "csv" : "json") : o.format;
      if (format == "csv") {
        write_file_atomic(o.out, res.csv);
      } else {
        Json report{{"tool", "dpbw"},
                    {"version", DPBW_VERSION},
                    {"command", command_echo(argc, argv)},
                    {"inputs_digest", inputs_digest(ctx.digest_parts)},
                    {"seed", o.seed},
                    {"exit_code", res.exit_code},
                    {"results", res.results}};
        write_file_atomic(o.out, to_json_text(report));
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  out << res.summary.str();
  return res.exit_code;
}

}  // namespace dpbw::cli
