// Copyright 2026 The dpbw Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "dpbw/game.hpp"
#include "dpbw/random.hpp"
#include "dpbw/two_pool.hpp"

namespace dpbw {

enum class AlphaRule {
  kAtBound,      // every alpha_i = 1 - m_max/m
  kUpperHalf,    // alpha_i in (1/2, bound], the regime of the two-pool claims
  kWide,         // alpha_i in [0, 1], exploratory
};

struct InstanceOptions {
  double min_total = 10.0;
  double max_total = 1000.0;
  // Combined pool share sum_i m_i / m is drawn from [min_share, max_share).
  double min_share = 0.05;
  double max_share = 1.0 / 3.0;
  // Each pool's weight within the combined share is drawn from
  // [min_weight, 1) before normalization.
  double min_weight = 0.1;
};

GameConfig random_game(SplitMix64& rng, std::size_t n, AlphaRule rule,
                       const InstanceOptions& opts = {});

// Two-pool game meeting the uniqueness preconditions, alpha_i drawn from
// (1/2, bound_i].
TwoPoolGame random_theorem2_game(SplitMix64& rng,
                                 const InstanceOptions& opts = {});

// Defaults for two-pool campaigns: pools jointly hold 20% to 1/3 of the
// total, neither below a quarter of the pair.
InstanceOptions two_pool_campaign_options();

// Uniform point of {v >= 0 : sum v <= budget} in `dims` dimensions.
std::vector<double> random_budget_point(SplitMix64& rng, std::size_t dims,
                                        double budget);

// Every pool infiltrates with a uniform point of its budget simplex.
StrategyProfile random_profile(SplitMix64& rng, const ValidatedGame& game);

}  // namespace dpbw
