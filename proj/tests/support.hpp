// Copyright 2026 The dpbw Authors
// SPDX-License-Identifier: Apache-2.0

// Shared fixtures and independent reference computations for the test suites.

#pragma once

#include <cmath>
#include <vector>

#include "dpbw/game.hpp"
#include "dpbw/two_pool.hpp"

namespace dpbw::testing {

inline TwoPoolGame gstar() { return make_two_pool(18.0, 2.0, 3.0, 0.8, 0.8); }
inline TwoPoolGame gstar_eyal() { return make_two_pool(18.0, 2.0, 3.0, 1.0, 1.0); }

inline ValidatedGame gstar_game() { return gstar().validated(); }

inline StrategyProfile x12(double v) { return StrategyProfile::two_pool(v, 0.0); }

// Two-pool rewards by Cramer's rule on
//   r1 = DR1 + a2 x1 r2 / (m2 + x1),  r2 = DR2 + a1 x2 r1 / (m1 + x2).
inline std::array<double, 2> cramer_rewards(const TwoPoolGame& g, double x1,
                                            double x2) {
  const double honest = g.m - x1 - x2;
  const double dr1 = (g.m1 - x1) / honest;
  const double dr2 = (g.m2 - x2) / honest;
  const double p = g.alpha2 * x1 / (g.m2 + x1);  // share of r2 paid to 1
  const double q = g.alpha1 * x2 / (g.m1 + x2);  // share of r1 paid to 2
  const double det = 1.0 - p * q;
  return {(dr1 + p * dr2) / det, (dr2 + q * dr1) / det};
}

inline double cramer_utility(const TwoPoolGame& g, double x1, double x2,
                             std::size_t player) {
  const auto r = cramer_rewards(g, x1, x2);
  const double own = g.power(player);
  const double a = g.alpha(player);
  const double incoming = player == 0 ? x2 : x1;
  return (1.0 - a + own * a / (own + incoming)) * r[player];
}

// Gauss-Seidel sweeps of r <- DR + M r, written from the model definitions
// without touching the library's matrices.
inline std::vector<double> gauss_seidel_rewards(const GameConfig& cfg,
                                                const Eigen::MatrixXd& x,
                                                int sweeps = 20000) {
  const std::size_t n = cfg.pool_powers.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) total += x(i, j);
  }
  const double honest = cfg.total_power - total;
  std::vector<double> dr(n), reg(n), r(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double out = 0.0;
    double in = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      out += x(i, j);
      in += x(j, i);
    }
    dr[i] = (cfg.pool_powers[i] - out) / honest;
    reg[i] = cfg.pool_powers[i] + in;
  }
  for (int s = 0; s < sweeps; ++s) {
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double v = dr[i];
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) v += cfg.alphas[j] * x(i, j) * r[j] / reg[j];
      }
      change = std::max(change, std::abs(v - r[i]));
      r[i] = v;
    }
    if (change < 1e-16) break;
  }
  return r;
}

}  // namespace dpbw::testing
