// Copyright 2026 The dpbw Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dpbw/game.hpp"
#include "dpbw/parallel.hpp"

namespace dpbw {

// What the (1 - alpha_i) award is taken from.
enum class AwardBase {
  kTotalRevenue,       // all booked revenue, carried-in income included
  kDirectRevenueOnly,  // only blocks found in the pool (non-canonical)
};

std::string to_string(AwardBase b);

struct SimConfig {
  std::int64_t rounds_per_epoch = 20000;
  std::int64_t epochs = 50;
  std::uint64_t seed = 1;
  std::int64_t burn_in_epochs = 10;
  AwardBase award_base = AwardBase::kTotalRevenue;
  bool record_ledger = false;
};

void validate_sim_config(const SimConfig& cfg);

// Settlement of one epoch. Vectors are indexed by pool; payouts(i, j) is
// what pool j's proportional distribution paid to pool i's infiltrators.
struct EpochLedger {
  std::vector<std::int64_t> blocks;
  std::int64_t outside_blocks = 0;
  std::vector<double> carry_in;
  std::vector<double> booked;        // blocks + carry_in
  std::vector<double> award;         // lump to the block finder
  std::vector<double> honest_share;  // proportional share kept by the pool
  Eigen::MatrixXd payouts;
};

struct SimResult {
  std::vector<double> empirical_r;  // mean per-round pool revenue
  std::vector<double> empirical_U;  // mean per-round honest-miner income
  std::vector<double> std_err_r;
  std::vector<double> std_err_U;
  std::int64_t rounds_total = 0;    // rounds entering the estimates
  std::int64_t rounds_simulated = 0;
  std::int64_t outside_blocks = 0;
  bool canonical = true;
  std::vector<EpochLedger> ledger;  // filled when record_ledger is set

  bool operator==(const SimResult& other) const;
};

SimResult simulate(const ValidatedGame& game, const StrategyProfile& x,
                   const SimConfig& cfg);

// Independent replicas, replica k seeded from (cfg.seed, k).
std::vector<SimResult> simulate_replicas(const ValidatedGame& game,
                                         const StrategyProfile& x,
                                         const SimConfig& cfg,
                                         std::size_t replicas,
                                         Execution exec = Execution::kParallel);

// Expected carry-in per epoch when every epoch books its expected blocks.
// Element t is the carry-in vector of epoch t (epoch 0 starts empty), and
// the last element is the fixed point limit.
std::vector<std::vector<double>> settlement_transient(
    const ValidatedGame& game, const StrategyProfile& x, std::int64_t epochs,
    AwardBase base = AwardBase::kTotalRevenue);

struct CompareEntry {
  std::string quantity;  // "r" or "U"
  std::size_t pool = 0;
  double empirical = 0.0;
  double analytic = 0.0;
  double std_err = 0.0;
  double bound = 0.0;
  bool passed = false;
};

struct CompareReport {
  std::vector<CompareEntry> entries;
  bool passed = false;
  std::vector<std::string> failures;  // "r[pool B]" style names
};

// Per entry: |empirical - analytic| <= max(k_sigma se, 0.01 analytic + 1e-6).
CompareReport compare(const SimResult& sim, const RewardBreakdown& analytic,
                      double k_sigma, const ValidatedGame* names = nullptr);

}  // namespace dpbw
