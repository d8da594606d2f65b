// Copyright 2026 The dpbw Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance campaign. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dpbw/cli/app.hpp"
#include "dpbw/cli/report.hpp"
#include "dpbw/equilibrium.hpp"
#include "dpbw/instances.hpp"
#include "dpbw/sim.hpp"
#include "dpbw/two_pool.hpp"

using namespace dpbw;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 2026;
const fs::path kSource = DPBW_SOURCE_DIR;

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::vector<TwoPoolGame> theorem2_games() {
  std::vector<TwoPoolGame> games;
  for (std::uint64_t k = 0; k < 50; ++k) {
    SplitMix64 rng = make_stream(kSeed, 2, k);
    games.push_back(random_theorem2_game(rng, two_pool_campaign_options()));
  }
  return games;
}

Outcome criterion1() {
  std::size_t violations = 0;
  double worst_excess = -1.0;
  double worst_term = -1.0;
  for (std::uint64_t k = 0; k < 200; ++k) {
    SplitMix64 rng = make_stream(kSeed, 1, k);
    const std::size_t n = 2 + k % 5;
    const ValidatedGame game = validate_game(random_game(rng, n, AlphaRule::kAtBound));
    const Theorem1Report r = verify_theorem1(game, 10000, derive_seed(kSeed, 1, k, 1));
    violations += r.violations.size();
    worst_excess = std::max(worst_excess, r.max_reward_excess);
    worst_term = std::max(worst_term, r.max_per_pool_term);
  }
  return {violations == 0,
          "200 games x 1e4 deviations, violations=" + std::to_string(violations) +
              ", max r_i - m_i/m=" + fmt("%.3e", worst_excess) +
              ", max per-pool term=" + fmt("%.3e", worst_term) + " (tol 1e-10)"};
}

Outcome criterion2(const std::vector<TwoPoolGame>& games) {
  std::size_t bad = 0;
  double worst_dev = 0.0;
  for (const auto& g : games) {
    if (!g.theorem2_precondition()) {
      ++bad;
      continue;
    }
    const EquilibriumReport r = enumerate_equilibria_2pool(g, 256, 1e-8);
    std::size_t certified = 0;
    bool at_zero = true;
    for (const auto& c : r.candidates) {
      if (!c.certified) continue;
      ++certified;
      const double dev = std::max(c.profile(0, 1), c.profile(1, 0));
      worst_dev = std::max(worst_dev, dev);
      at_zero = at_zero && dev <= 1e-6;
    }
    if (certified != 1 || !at_zero || std::abs(r.poa - 1.0) > 1e-9 ||
        std::abs(r.pos - 1.0) > 1e-9) {
      ++bad;
    }
  }
  return {bad == 0, "50 games, failing=" + std::to_string(bad) +
                        ", max |x*| =" + fmt("%.3e", worst_dev) +
                        " (unique certified NE at (0,0) within 1e-6, PoA=PoS=1 +- 1e-9)"};
}

Outcome criterion3(const std::vector<TwoPoolGame>& games) {
  std::size_t bad = 0;
  double min_regret = INFINITY;
  double max_ratio = 0.0;
  for (const auto& base : games) {
    const TwoPoolGame g = make_two_pool(base.m, base.m1, base.m2, 1.0, 1.0);
    const ValidatedGame vg = g.validated();
    const double zero_regret = regret(vg, StrategyProfile::two_pool(0.0, 0.0));
    min_regret = std::min(min_regret, zero_regret);
    const EquilibriumReport r = enumerate_equilibria_2pool(g, 256, 1e-8);
    bool ok = zero_regret > 1e-4 && r.certified_count() > 0;
    for (const auto& c : r.candidates) {
      if (!c.certified) continue;
      for (std::size_t i = 0; i < 2; ++i) {
        const double share = g.power(i) / g.m;
        const double u = utility(vg, c.profile, i);
        max_ratio = std::max(max_ratio, u / share);
        ok = ok && u < share;
      }
    }
    if (!ok) ++bad;
  }
  return {bad == 0, "50 games at alpha=1, failing=" + std::to_string(bad) +
                        ", min zero-profile regret=" + fmt("%.3e", min_regret) +
                        " (> 1e-4), max U_i/(m_i/m)=" + fmt("%.6f", max_ratio) + " (< 1)"};
}

Outcome criterion4(const std::vector<TwoPoolGame>& games) {
  double worst = 0.0;
  for (std::uint64_t k = 0; k < 20; ++k) {
    worst = std::max(worst, max_closed_form_gap(games[k], 10000, derive_seed(kSeed, 4, k)));
  }
  return {worst <= 1e-10,
          "20 games x 1e4 profiles, max gap=" + fmt("%.3e", worst) + " (tol 1e-10)"};
}

Outcome criterion5(const std::vector<TwoPoolGame>& games) {
  std::size_t checked = 0;
  std::size_t violations = 0;
  double worst_endpoint = -INFINITY;
  for (const auto& g : games) {
    if (!(g.alpha1 > 0.5 && g.alpha2 > 0.5 && g.theorem2_precondition())) continue;
    ++checked;
    const ClaimReport r = claim_suite(g, 1000);
    for (std::size_t p = 0; p < 2; ++p) {
      violations += r.claim1_violations[p] + r.claim2_violations[p] + r.lemma2_violations[p];
      worst_endpoint = std::max({worst_endpoint, r.lemma2[p].expanded_at_zero, r.lemma2[p].expanded_at_full});
    }
  }
  return {checked == games.size() && violations == 0,
          std::to_string(checked) + " games at grid 1000, claim/endpoint violations=" +
              std::to_string(violations) + ", max endpoint Q=" + fmt("%.4g", worst_endpoint) +
              " (< 0)"};
}

Outcome criterion6() {
  const ValidatedGame game = make_two_pool(18.0, 2.0, 3.0, 0.8, 0.8).validated();
  const StrategyProfile x = StrategyProfile::two_pool(1.0, 0.0);
  SimConfig cfg;
  cfg.epochs = 50;
  cfg.rounds_per_epoch = 1000000 / cfg.epochs;
  cfg.seed = kSeed;
  const SimResult sim = simulate(game, x, cfg);
  const double r_ref[2] = {1.6 / 17.0, 3.0 / 17.0};
  const double u_ref[2] = {1.6 / 17.0, 2.4 / 17.0};
  bool ok = true;
  double worst = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    const double tr = std::max(3.0 * sim.std_err_r[i], 0.01 * r_ref[i]);
    const double tu = std::max(3.0 * sim.std_err_U[i], 0.01 * u_ref[i]);
    ok = ok && std::abs(sim.empirical_r[i] - r_ref[i]) <= tr &&
         std::abs(sim.empirical_U[i] - u_ref[i]) <= tu;
    worst = std::max({worst, std::abs(sim.empirical_r[i] - r_ref[i]) / tr,
                      std::abs(sim.empirical_U[i] - u_ref[i]) / tu});
  }
  return {ok, "G* x12=1, 1e6 rounds / 50 epochs, worst |emp-analytic|/tol=" +
                  fmt("%.3f", worst) + " (tol max(3 se, 1%))"};
}

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "dpbw");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
}

Outcome criterion7(const fs::path& dir) {
  const fs::path out = dir / "claims.json";
  const int code = run_cli({"verify", "claims", "--config",
                            (kSource / "scenarios" / "gstar.json").string(),
                            "--out", out.string()});
  const cli::Json j = cli::Json::parse(cli::read_file(out));
  const cli::Json& results = j["results"];
  const cli::Json& disc = results["table1"]["discrepancies"];
  bool zero_flagged = false;
  for (const auto& d : disc) {
    zero_flagged = zero_flagged || (d["x1"] == 0.0 && d["x2"] == 0.0);
  }
  const bool exact_ok = results["passed"].get<bool>();
  return {code == 0 && zero_flagged && exact_ok,
          "exit=" + std::to_string(code) + ", discrepancies=" + std::to_string(disc.size()) +
              ", (0,0) flagged=" + (zero_flagged ? "yes" : "no") +
              ", exact-path claims passed=" + (exact_ok ? "yes" : "no")};
}

Outcome criterion8(const fs::path& dir) {
  const std::string gstar = (kSource / "scenarios" / "gstar.json").string();
  const std::string five = (kSource / "scenarios" / "five_pools.json").string();
  const std::vector<std::vector<std::string>> commands{
      {"verify", "theorem1", "--config", five, "--samples", "2000", "--seed", "7"},
      {"verify", "theorem2", "--config", gstar},
      {"verify", "claims", "--config", gstar},
      {"sweep", "--config", gstar, "--param", "alpha", "--range", "0.5:1.0:0.05"},
      {"sweep", "--config", five, "--param", "m", "--range", "100:100:10", "--starts", "2", "--format", "json",
       "--seed", "3"}};
  std::size_t identical = 0;
  for (std::size_t c = 0; c < commands.size(); ++c) {
    std::string text[2];
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path out = dir / ("det" + std::to_string(c) + "_" + std::to_string(rep));
      auto args = commands[c];
      args.insert(args.end(), {"--out", out.string()});
      if (run_cli(args) != 0) break;
      text[rep] = cli::read_file(out);
    }
    if (!text[0].empty() && text[0] == text[1]) ++identical;
  }
  return {identical == commands.size(), std::to_string(identical) + "/" +
                                            std::to_string(commands.size()) +
                                            " verify/sweep outputs byte-identical"};
}

}  // namespace

int main() {
  const fs::path dir = fs::temp_directory_path() / ("dpbw_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::vector<TwoPoolGame> games = theorem2_games();

  const std::vector<std::function<Outcome()>> criteria{
      criterion1,
      [&] { return criterion2(games); },
      [&] { return criterion3(games); },
      [&] { return criterion4(games); },
      [&] { return criterion5(games); },
      criterion6,
      [&] { return criterion7(dir); },
      [&] { return criterion8(dir); }};

  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu: %s  %s [%.1fs]\n", k + 1, o.passed ? "PASS" : "FAIL",
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.passed) ++failed;
  }
  fs::remove_all(dir);
  return failed == 0 ? 0 : 1;
}
