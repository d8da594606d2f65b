// Copyright 2026 The dpbw Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dpbw/error.hpp"

namespace dpbw {

// Residual bound for the coupled reward system.
inline constexpr double kSolverResidualTol = 1e-12;
// Agreement required between the direct solve and fixed-point iteration.
inline constexpr double kCrossCheckTol = 1e-10;
// Relative slack on budget checks, absorbs rounding in convex combinations.
inline constexpr double kBudgetSlack = 1e-12;

struct GameConfig {
  double total_power = 0.0;          // m
  std::vector<double> pool_powers;   // m_1..m_n
  std::vector<double> alphas;        // share distributed proportionally
  std::vector<std::string> pool_names;  // empty or one per pool
};

// A GameConfig that passed validation, plus which theorem preconditions it
// satisfies. Only validate_game() constructs one.
class ValidatedGame {
 public:
  const GameConfig& config() const { return config_; }
  std::size_t num_pools() const { return config_.pool_powers.size(); }
  double total_power() const { return config_.total_power; }
  double power(std::size_t i) const { return config_.pool_powers[i]; }
  double alpha(std::size_t i) const { return config_.alphas[i]; }
  double max_power() const { return max_power_; }
  double pool_power_sum() const { return power_sum_; }
  std::string pool_name(std::size_t i) const;

  // 1 - m_max / m, the no-attack equilibrium bound on every alpha.
  double theorem1_alpha_bound() const;
  bool theorem1_bound_holds(std::size_t i) const;
  bool theorem1_bound_holds() const;
  // Two-pool uniqueness preconditions; empty unless n == 2.
  std::optional<bool> theorem2_precondition() const;

 private:
  friend ValidatedGame validate_game(GameConfig cfg);
  explicit ValidatedGame(GameConfig cfg);

  GameConfig config_;
  double max_power_ = 0.0;
  double power_sum_ = 0.0;
};

ValidatedGame validate_game(GameConfig cfg);

// x(i, j) is the power pool i registers inside pool j.
class StrategyProfile {
 public:
  StrategyProfile() = default;
  explicit StrategyProfile(Eigen::MatrixXd infiltration)
      : x_(std::move(infiltration)) {}

  static StrategyProfile zeros(std::size_t n) {
    return StrategyProfile(Eigen::MatrixXd::Zero(n, n));
  }
  static StrategyProfile two_pool(double x1, double x2);

  std::size_t num_pools() const { return static_cast<std::size_t>(x_.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return x_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  double& operator()(std::size_t i, std::size_t j) {
    return x_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Eigen::MatrixXd& matrix() const { return x_; }

  std::vector<double> row(std::size_t i) const;
  void set_row(std::size_t i, const std::vector<double>& values);

  double outgoing(std::size_t i) const;  // sum_{j != i} x_ij
  double incoming(std::size_t j) const;  // sum_{l != j} x_lj
  double total() const;

  bool operator==(const StrategyProfile& other) const {
    return x_.rows() == other.x_.rows() && x_.cols() == other.x_.cols() &&
           x_ == other.x_;
  }

 private:
  Eigen::MatrixXd x_;
};

void validate_strategy(const ValidatedGame& game, const StrategyProfile& x);

struct RewardBreakdown {
  std::vector<double> direct;        // DR_i
  std::vector<double> infiltration;  // IR_i
  std::vector<double> total;         // r_i
  std::vector<double> utility;       // U_i
  double solver_residual = 0.0;
};

std::vector<double> direct_rewards(const ValidatedGame& game,
                                   const StrategyProfile& x);

// M(i, j) = alpha_j x_ij / (m_j + sum_l x_lj): the share of pool j's total
// reward that pool i's infiltrators collect.
Eigen::MatrixXd payout_matrix(const ValidatedGame& game,
                              const StrategyProfile& x);

// Utility multiplier on r_i: 1 - alpha_i + m_i alpha_i / (m_i + incoming_i).
double utility_coefficient(const ValidatedGame& game, const StrategyProfile& x,
                           std::size_t i);

// Solves (I - M) r = DR directly and fills utilities.
RewardBreakdown solve_rewards(const ValidatedGame& game,
                              const StrategyProfile& x);

struct FixedPointResult {
  std::vector<double> total;
  int iterations = 0;
  bool converged = false;
  double last_change = 0.0;
};

// Independent route to the same rewards: iterate r <- DR + M r.
FixedPointResult solve_rewards_fixed_point(const ValidatedGame& game,
                                           const StrategyProfile& x,
                                           double tol = 1e-12,
                                           int max_iter = 100000);

double social_welfare(const ValidatedGame& game, const StrategyProfile& x);

namespace detail {
// Hot-loop variants that skip strategy validation.
RewardBreakdown solve_rewards_unchecked(const ValidatedGame& game,
                                        const StrategyProfile& x);
double utility_unchecked(const ValidatedGame& game, const StrategyProfile& x,
                         std::size_t i);
}  // namespace detail

}  // namespace dpbw
