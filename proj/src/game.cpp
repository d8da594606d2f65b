// Copyright 2026 The dpbw Authors
// SPDX-License-Identifier: Apache-2.0

#include "dpbw/game.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace dpbw {
namespace {

std::string pool_label(std::size_t i) { return "pool " + std::to_string(i); }

bool within_budget(double used, double budget) {
  return used <= budget * (1.0 + kBudgetSlack);
}

}  // namespace

ValidatedGame::ValidatedGame(GameConfig cfg) : config_(std::move(cfg)) {
  max_power_ = *std::max_element(config_.pool_powers.begin(),
                                 config_.pool_powers.end());
  power_sum_ = std::accumulate(config_.pool_powers.begin(),
                               config_.pool_powers.end(), 0.0);
}

std::string ValidatedGame::pool_name(std::size_t i) const {
  if (i < config_.pool_names.size() && !config_.pool_names[i].empty()) {
    return config_.pool_names[i];
  }
  return pool_label(i);
}

double ValidatedGame::theorem1_alpha_bound() const {
  return 1.0 - max_power_ / config_.total_power;
}

bool ValidatedGame::theorem1_bound_holds(std::size_t i) const {
  return alpha(i) <= theorem1_alpha_bound() + kBudgetSlack;
}

bool ValidatedGame::theorem1_bound_holds() const {
  for (std::size_t i = 0; i < num_pools(); ++i) {
    if (!theorem1_bound_holds(i)) return false;
  }
  return true;
}

std::optional<bool> ValidatedGame::theorem2_precondition() const {
  if (num_pools() != 2) return std::nullopt;
  const double m = total_power();
  const double m1 = power(0);
  const double m2 = power(1);
  return alpha(0) <= 1.0 - m2 / m + kBudgetSlack &&
         alpha(1) <= 1.0 - m1 / m + kBudgetSlack && m > 3.0 * (m1 + m2);
}

ValidatedGame validate_game(GameConfig cfg) {
  const std::size_t n = cfg.pool_powers.size();
  if (n < 2) {
    throw Error(ErrorCode::kTooFewPools, "a game needs at least two pools");
  }
  if (cfg.alphas.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "expected one alpha per pool (" + std::to_string(n) + ")");
  }
  if (!cfg.pool_names.empty() && cfg.pool_names.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "pool_names must be empty or name every pool");
  }
  if (!(std::isfinite(cfg.total_power) && cfg.total_power > 0.0)) {
    throw Error(ErrorCode::kNonPositivePower,
                "total power must be a positive finite number");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double mi = cfg.pool_powers[i];
    if (!(std::isfinite(mi) && mi > 0.0)) {
      throw Error(ErrorCode::kNonPositivePower,
                  pool_label(i) + " power must be a positive finite number");
    }
    sum += mi;
    const double a = cfg.alphas[i];
    if (!(a >= 0.0 && a <= 1.0)) {
      throw Error(ErrorCode::kAlphaOutOfRange,
                  pool_label(i) + " alpha must lie in [0, 1]");
    }
  }
  if (!within_budget(sum, cfg.total_power)) {
    std::ostringstream os;
    os.precision(17);
    os << "pool powers sum to " << sum << " which exceeds total power "
       << cfg.total_power;
    throw Error(ErrorCode::kPowerBudgetExceeded, os.str());
  }
  return ValidatedGame(std::move(cfg));
}

StrategyProfile StrategyProfile::two_pool(double x1, double x2) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(2, 2);
  x(0, 1) = x1;
  x(1, 0) = x2;
  return StrategyProfile(std::move(x));
}

std::vector<double> StrategyProfile::row(std::size_t i) const {
  std::vector<double> out(num_pools());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = (*this)(i, j);
  return out;
}

void StrategyProfile::set_row(std::size_t i, const std::vector<double>& values) {
  for (std::size_t j = 0; j < values.size(); ++j) (*this)(i, j) = values[j];
}

double StrategyProfile::outgoing(std::size_t i) const {
  double s = 0.0;
  for (std::size_t j = 0; j < num_pools(); ++j) {
    if (j != i) s += (*this)(i, j);
  }
  return s;
}

double StrategyProfile::incoming(std::size_t j) const {
  double s = 0.0;
  for (std::size_t l = 0; l < num_pools(); ++l) {
    if (l != j) s += (*this)(l, j);
  }
  return s;
}

double StrategyProfile::total() const {
  double s = 0.0;
  for (std::size_t i = 0; i < num_pools(); ++i) s += outgoing(i);
  return s;
}

void validate_strategy(const ValidatedGame& game, const StrategyProfile& x) {
  const std::size_t n = game.num_pools();
  if (x.num_pools() != n ||
      static_cast<std::size_t>(x.matrix().cols()) != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "strategy must be an " + std::to_string(n) + "x" +
                    std::to_string(n) + " matrix");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = x(i, j);
      if (i == j && v != 0.0) {
        throw Error(ErrorCode::kSelfInfiltration,
                    pool_label(i) + " cannot infiltrate itself");
      }
      if (!(std::isfinite(v) && v >= 0.0)) {
        throw Error(ErrorCode::kNegativeInfiltration,
                    "infiltration from " + pool_label(i) + " into " +
                        pool_label(j) + " must be finite and non-negative");
      }
    }
    if (!within_budget(x.outgoing(i), game.power(i))) {
      throw Error(ErrorCode::kBudgetExceeded,
                  pool_label(i) + " infiltrates with more power than it has");
    }
  }
  if (!(x.total() < game.total_power())) {
    throw Error(ErrorCode::kDegenerateDenominator,
                "total infiltration leaves no honest mining power");
  }
}

std::vector<double> direct_rewards(const ValidatedGame& game,
                                   const StrategyProfile& x) {
  validate_strategy(game, x);
  const std::size_t n = game.num_pools();
  const double honest_total = game.total_power() - x.total();
  std::vector<double> dr(n);
  for (std::size_t i = 0; i < n; ++i) {
    dr[i] = (game.power(i) - x.outgoing(i)) / honest_total;
  }
  return dr;
}

Eigen::MatrixXd payout_matrix(const ValidatedGame& game,
                              const StrategyProfile& x) {
  const auto n = static_cast<Eigen::Index>(game.num_pools());
  Eigen::MatrixXd pay = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    const double registered = game.power(ju) + x.incoming(ju);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == j) continue;
      pay(i, j) = game.alpha(ju) * x.matrix()(i, j) / registered;
    }
  }
  return pay;
}

double utility_coefficient(const ValidatedGame& game, const StrategyProfile& x,
                           std::size_t i) {
  const double incoming = x.incoming(i);
  if (incoming == 0.0) return 1.0;
  const double mi = game.power(i);
  const double a = game.alpha(i);
  return 1.0 - a + mi * a / (mi + incoming);
}

namespace detail {

RewardBreakdown solve_rewards_unchecked(const ValidatedGame& game,
                                        const StrategyProfile& x) {
  const std::size_t n = game.num_pools();
  const auto ni = static_cast<Eigen::Index>(n);
  const double honest_total = game.total_power() - x.total();

  Eigen::VectorXd dr(ni);
  for (std::size_t i = 0; i < n; ++i) {
    dr(static_cast<Eigen::Index>(i)) =
        (game.power(i) - x.outgoing(i)) / honest_total;
  }
  const Eigen::MatrixXd pay = payout_matrix(game, x);
  const Eigen::MatrixXd system = Eigen::MatrixXd::Identity(ni, ni) - pay;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
  if (!lu.isInvertible()) {
    throw Error(ErrorCode::kSingularSystem,
                "reward system is singular; this indicates a bug since valid "
                "inputs always give a non-singular system");
  }
  const Eigen::VectorXd r = lu.solve(dr);
  const Eigen::VectorXd ir = pay * r;
  const double residual = (r - dr - ir).cwiseAbs().maxCoeff();
  if (!(residual <= kSolverResidualTol)) {
    throw Error(ErrorCode::kResidualTooLarge,
                "reward system residual " + std::to_string(residual) +
                    " exceeds tolerance");
  }

  RewardBreakdown out;
  out.direct.resize(n);
  out.infiltration.resize(n);
  out.total.resize(n);
  out.utility.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    out.direct[i] = dr(ii);
    out.infiltration[i] = ir(ii);
    out.total[i] = r(ii);
    out.utility[i] = utility_coefficient(game, x, i) * r(ii);
  }
  out.solver_residual = residual;
  return out;
}

double utility_unchecked(const ValidatedGame& game, const StrategyProfile& x,
                         std::size_t i) {
  return solve_rewards_unchecked(game, x).utility[i];
}

}  // namespace detail

RewardBreakdown solve_rewards(const ValidatedGame& game,
                              const StrategyProfile& x) {
  validate_strategy(game, x);
  return detail::solve_rewards_unchecked(game, x);
}

FixedPointResult solve_rewards_fixed_point(const ValidatedGame& game,
                                           const StrategyProfile& x,
                                           double tol, int max_iter) {
  const std::vector<double> dr = direct_rewards(game, x);
  const Eigen::MatrixXd pay = payout_matrix(game, x);
  const std::size_t n = dr.size();

  FixedPointResult out;
  out.total = dr;
  std::vector<double> next(n);
  for (int it = 1; it <= max_iter; ++it) {
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = dr[i];
      for (std::size_t j = 0; j < n; ++j) {
        s += pay(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *
             out.total[j];
      }
      next[i] = s;
      change = std::max(change, std::abs(s - out.total[i]));
    }
    out.total.swap(next);
    out.iterations = it;
    out.last_change = change;
    if (change <= tol) {
      out.converged = true;
      break;
    }
  }
  return out;
}

double social_welfare(const ValidatedGame& game, const StrategyProfile& x) {
  validate_strategy(game, x);
  return game.total_power() - x.total();
}

}  // namespace dpbw
