// Copyright 2026 The dpbw Authors
// SPDX-License-Identifier: Apache-2.0

#include "dpbw/instances.hpp"

#include <algorithm>
#include <cmath>

namespace dpbw {

GameConfig random_game(SplitMix64& rng, std::size_t n, AlphaRule rule,
                       const InstanceOptions& opts) {
  GameConfig cfg;
  cfg.total_power = rng.uniform(opts.min_total, opts.max_total);
  const double share = rng.uniform(opts.min_share, opts.max_share);
  std::vector<double> w(n);
  double wsum = 0.0;
  for (auto& v : w) {
    v = rng.uniform(opts.min_weight, 1.0);
    wsum += v;
  }
  cfg.pool_powers.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    cfg.pool_powers[i] = cfg.total_power * share * w[i] / wsum;
  }
  const double m_max =
      *std::max_element(cfg.pool_powers.begin(), cfg.pool_powers.end());
  const double bound = 1.0 - m_max / cfg.total_power;
  cfg.alphas.resize(n);
  for (auto& a : cfg.alphas) {
    switch (rule) {
      case AlphaRule::kAtBound: a = bound; break;
      case AlphaRule::kUpperHalf: a = bound - (bound - 0.5) * rng.uniform(); break;
      case AlphaRule::kWide: a = rng.uniform(); break;
    }
  }
  return cfg;
}

InstanceOptions two_pool_campaign_options() {
  InstanceOptions opts;
  opts.min_share = 0.2;
  opts.max_share = 1.0 / 3.0;
  opts.min_weight = 1.0 / 3.0;
  return opts;
}

TwoPoolGame random_theorem2_game(SplitMix64& rng, const InstanceOptions& opts) {
  const GameConfig cfg = random_game(rng, 2, AlphaRule::kWide, opts);
  TwoPoolGame g{cfg.total_power, cfg.pool_powers[0], cfg.pool_powers[1], 0.0, 0.0};
  const double b1 = 1.0 - g.m2 / g.m;
  const double b2 = 1.0 - g.m1 / g.m;
  g.alpha1 = b1 - (b1 - 0.5) * rng.uniform();
  g.alpha2 = b2 - (b2 - 0.5) * rng.uniform();
  return g;
}

std::vector<double> random_budget_point(SplitMix64& rng, std::size_t dims,
                                        double budget) {
  // Normalized exponentials with one slack coordinate: Dirichlet(1, ..., 1).
  std::vector<double> e(dims + 1);
  double sum = 0.0;
  for (auto& v : e) {
    v = -std::log(rng.uniform_open_low());
    sum += v;
  }
  std::vector<double> out(dims);
  for (std::size_t k = 0; k < dims; ++k) out[k] = budget * e[k] / sum;
  return out;
}

StrategyProfile random_profile(SplitMix64& rng, const ValidatedGame& game) {
  const std::size_t n = game.num_pools();
  StrategyProfile x = StrategyProfile::zeros(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto point = random_budget_point(rng, n - 1, game.power(i));
    std::size_t k = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) x(i, j) = point[k++];
    }
  }
  // Only reachable when the pools own all the power.
  const double total = x.total();
  if (!(total < game.total_power())) {
    const double scale = 0.5 * game.total_power() / total;
    x = StrategyProfile(x.matrix() * scale);
  }
  return x;
}

}  // namespace dpbw
