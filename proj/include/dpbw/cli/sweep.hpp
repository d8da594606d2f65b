// Copyright 2026 The dpbw Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dpbw/equilibrium.hpp"
#include "dpbw/game.hpp"

namespace dpbw::cli {

// Parameter names: "alpha" (every pool), "alpha_<i>", "m", "m_<i>", with
// 1-based pool indices.
struct SweepSpec {
  std::string param;
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
};

// Parses "a:b:step". Throws InvalidRange for step <= 0 or stop < start.
SweepSpec parse_sweep_spec(const std::string& param, const std::string& range);

// start + k step for k = 0, 1, ... while not past stop (with a 1e-9 step
// allowance for rounding).
std::vector<double> sweep_values(const SweepSpec& spec);

struct SweepOptions {
  int grid_n = 256;
  double eps = kCertifyTolerance;
  int random_starts = 16;  // games with more than two pools
  std::uint64_t seed = 1;
  Execution exec = Execution::kParallel;
};

struct SweepRow {
  double param_value = 0.0;
  std::size_t n_equilibria = 0;  // certified candidates
  std::optional<StrategyProfile> best;  // highest-welfare certified candidate
  double regret = 0.0;
  double welfare = 0.0;
  double poa = 0.0;
  double pos = 0.0;
  bool theorem1_bound_holds = false;
  std::optional<bool> theorem2_precond_holds;
  std::string error;  // non-empty when the row could not be evaluated
};

std::vector<SweepRow> sweep(const GameConfig& base, const SweepSpec& spec,
                            const SweepOptions& opts = {});

// Fixed column order; x_<i>_<j> are 1-based entries of the n x n profile.
std::vector<std::string> sweep_csv_header(std::size_t n);
std::string sweep_csv(const std::vector<SweepRow>& rows, std::size_t n);

}  // namespace dpbw::cli
