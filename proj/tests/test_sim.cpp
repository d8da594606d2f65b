// Copyright 2026 The dpbw Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <numeric>

#include "dpbw/instances.hpp"
#include "dpbw/sim.hpp"
#include "support.hpp"

using namespace dpbw;
using dpbw::testing::gstar_game;
using dpbw::testing::x12;

namespace {

SimConfig config(std::int64_t rounds, std::int64_t epochs, std::uint64_t seed) {
  SimConfig c;
  c.rounds_per_epoch = rounds / epochs;
  c.epochs = epochs;
  c.seed = seed;
  return c;
}

double l1(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

}  // namespace

TEST_CASE("honest network: empirical revenue matches power shares") {
  const SimResult r = simulate(gstar_game(), StrategyProfile::zeros(2),
                               config(1000000, 50, 101));
  CHECK(r.rounds_total == 800000);
  CHECK(r.rounds_simulated == 1000000);
  CHECK(std::abs(r.empirical_r[0] - 1.0 / 9.0) <= 3.0 * r.std_err_r[0]);
  CHECK(std::abs(r.empirical_r[1] - 1.0 / 6.0) <= 3.0 * r.std_err_r[1]);
  CHECK(r.empirical_U == r.empirical_r);
  CHECK(r.std_err_r[0] > 0.0);
}

TEST_CASE("one-sided infiltration matches the analytic rewards") {
  const ValidatedGame g = gstar_game();
  const SimResult r = simulate(g, x12(1.0), config(1000000, 50, 102));
  const RewardBreakdown a = solve_rewards(g, x12(1.0));
  const CompareReport c = compare(r, a, 3.0, &g);
  CHECK(c.passed);
  CHECK(c.entries.size() == 4);
  for (const auto& e : c.entries) {
    CHECK(std::abs(e.empirical - e.analytic) <=
          std::max(3.0 * e.std_err, 0.01 * e.analytic));
  }
  CHECK(std::abs(a.total[0] - 1.6 / 17.0) <= 1e-12);
  CHECK(std::abs(a.utility[1] - 2.4 / 17.0) <= 1e-12);
}

TEST_CASE("fixed seed gives identical results") {
  const ValidatedGame g = gstar_game();
  const SimConfig c = config(200000, 20, 103);
  CHECK(simulate(g, x12(1.0), c) == simulate(g, x12(1.0), c));
  SimConfig other = c;
  other.seed = 104;
  CHECK_FALSE(simulate(g, x12(1.0), c) == simulate(g, x12(1.0), other));
}

TEST_CASE("compare flags the offending pool") {
  SimResult s;
  s.empirical_r = {0.1, 0.2};
  s.empirical_U = {0.1, 0.2};
  s.std_err_r = {1e-6, 1e-6};
  s.std_err_U = {1e-6, 1e-6};
  RewardBreakdown a;
  a.total = {0.1 + 1e-7, 0.2};
  a.utility = {0.1, 0.2 - 1e-7};
  CHECK(compare(s, a, 3.0).passed);

  a.total = {0.1, 0.2 / 1.1};
  const CompareReport bad = compare(s, a, 3.0);
  CHECK_FALSE(bad.passed);
  REQUIRE(bad.failures.size() == 1);
  CHECK(bad.failures[0] == "r[pool 2]");

  a.total = {0.1};
  CHECK_THROWS_AS(compare(s, a, 3.0), Error);
}

TEST_CASE("property: settlement conserves revenue every epoch") {
  for (std::uint64_t k = 0; k < 20; ++k) {
    SplitMix64 rng = make_stream(41, k);
    const std::size_t n = 2 + k % 4;
    const ValidatedGame g = validate_game(random_game(rng, n, AlphaRule::kWide));
    const StrategyProfile x = random_profile(rng, g);
    SimConfig c = config(20000, 10, k);
    c.burn_in_epochs = 2;
    c.record_ledger = true;
    c.award_base = k % 2 ? AwardBase::kDirectRevenueOnly : AwardBase::kTotalRevenue;
    const SimResult r = simulate(g, x, c);
    REQUIRE(r.ledger.size() == 10);
    for (std::size_t t = 0; t < r.ledger.size(); ++t) {
      const EpochLedger& e = r.ledger[t];
      const double blocks = static_cast<double>(
          std::accumulate(e.blocks.begin(), e.blocks.end(), std::int64_t{0}));
      const double carry = std::accumulate(e.carry_in.begin(), e.carry_in.end(), 0.0);
      const double booked = std::accumulate(e.booked.begin(), e.booked.end(), 0.0);
      const double settled = std::accumulate(e.award.begin(), e.award.end(), 0.0) +
                             std::accumulate(e.honest_share.begin(),
                                             e.honest_share.end(), 0.0) +
                             e.payouts.sum();
      CHECK(std::abs(booked - (blocks + carry)) <= 1e-9 * std::max(1.0, booked));
      CHECK(std::abs(settled - booked) <= 1e-9 * std::max(1.0, booked));
      CHECK(blocks + static_cast<double>(e.outside_blocks) == 2000.0);
      if (t + 1 < r.ledger.size()) {
        for (std::size_t i = 0; i < n; ++i) {
          CHECK(r.ledger[t + 1].carry_in[i] ==
                e.payouts.row(static_cast<Eigen::Index>(i)).sum());
        }
      }
    }
  }
}

TEST_CASE("property: settlement carry-in decays geometrically") {
  for (std::uint64_t k = 0; k < 200; ++k) {
    SplitMix64 rng = make_stream(42, k);
    const std::size_t n = 2 + k % 5;
    GameConfig cfg = random_game(rng, n, AlphaRule::kWide);
    double max_alpha = 0.0;
    for (auto& a : cfg.alphas) {
      a *= 0.9;
      max_alpha = std::max(max_alpha, a);
    }
    const ValidatedGame g = validate_game(cfg);
    const StrategyProfile x = random_profile(rng, g);
    const auto tr = settlement_transient(g, x, 40);
    const std::vector<double>& limit = tr.back();
    const std::vector<double> dr = direct_rewards(g, x);
    const double revenue = std::accumulate(limit.begin(), limit.end(), 0.0) +
                           std::accumulate(dr.begin(), dr.end(), 0.0);
    for (std::size_t t = 1; t + 1 < tr.size(); ++t) {
      const double prev = l1(tr[t - 1], limit);
      const double cur = l1(tr[t], limit);
      CHECK(cur <= max_alpha * prev + 1e-15);
    }
    CHECK(l1(tr[30], limit) <= 1e-6 * revenue);
  }
}

TEST_CASE("estimates tighten as the run grows") {
  const ValidatedGame g = gstar_game();
  const RewardBreakdown a = solve_rewards(g, x12(1.0));
  std::vector<double> errors;
  for (std::int64_t rounds : {100000, 1000000, 10000000}) {
    const SimResult r = simulate(g, x12(1.0), config(rounds, 50, 105));
    double err = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(std::abs(r.empirical_r[i] - a.total[i]) <= 3.0 * r.std_err_r[i]);
      err = std::max(err, std::abs(r.empirical_r[i] - a.total[i]));
    }
    errors.push_back(err);
  }
  CHECK(errors[2] < errors[1]);
  CHECK(errors[1] < errors[0]);
}

TEST_CASE("direct-revenue award base converges to its own fixed point") {
  const ValidatedGame g = validate_game({18.0, {2.0, 3.0}, {0.6, 0.7}, {}});
  const StrategyProfile x = StrategyProfile::two_pool(1.0, 1.5);
  SimConfig c = config(2000000, 50, 106);
  c.award_base = AwardBase::kDirectRevenueOnly;
  const SimResult r = simulate(g, x, c);
  CHECK_FALSE(r.canonical);
  const auto tr = settlement_transient(g, x, 5, AwardBase::kDirectRevenueOnly);
  const auto dr = direct_rewards(g, x);
  for (std::size_t i = 0; i < 2; ++i) {
    const double expected = dr[i] + tr.back()[i];
    CHECK(std::abs(r.empirical_r[i] - expected) <= 4.0 * r.std_err_r[i]);
  }
  // The canonical base pays out more of the carried-in income proportionally.
  const RewardBreakdown canonical = solve_rewards(g, x);
  CHECK(std::abs(canonical.total[0] - (dr[0] + tr.back()[0])) > 1e-6);
}

TEST_CASE("simulation configuration is validated") {
  const ValidatedGame g = gstar_game();
  SimConfig c = config(1000, 10, 1);
  c.burn_in_epochs = 10;
  CHECK_THROWS_AS(simulate(g, x12(1.0), c), Error);
  c.burn_in_epochs = 0;
  c.rounds_per_epoch = 0;
  CHECK_THROWS_AS(simulate(g, x12(1.0), c), Error);
}
