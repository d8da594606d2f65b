// Copyright 2026 The dpbw Authors
// SPDX-License-Identifier: Apache-2.0

#include "dpbw/sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "dpbw/random.hpp"

namespace dpbw {
namespace {

struct Settlement {
  std::vector<double> award;
  std::vector<double> honest_share;
  Eigen::MatrixXd payouts;
};

// Splits each pool's booked revenue. `direct` is only read for the
// direct-revenue award base.
Settlement settle(const ValidatedGame& game, const StrategyProfile& x,
                  const std::vector<double>& booked,
                  const std::vector<double>& direct, AwardBase base) {
  const std::size_t n = game.num_pools();
  Settlement s{std::vector<double>(n), std::vector<double>(n),
               Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                     static_cast<Eigen::Index>(n))};
  for (std::size_t j = 0; j < n; ++j) {
    const double a = game.alpha(j);
    const double award_base =
        base == AwardBase::kTotalRevenue ? booked[j] : direct[j];
    s.award[j] = (1.0 - a) * award_base;
    const double pot = booked[j] - s.award[j];
    const double registered = game.power(j) + x.incoming(j);
    s.honest_share[j] = pot * game.power(j) / registered;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j) continue;
      s.payouts(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          pot * x(i, j) / registered;
    }
  }
  return s;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double e : v) s += e;
  return s / static_cast<double>(v.size());
}

double standard_error(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double mu = mean(v);
  double ss = 0.0;
  for (double e : v) ss += (e - mu) * (e - mu);
  return std::sqrt(ss / static_cast<double>(v.size() - 1) /
                   static_cast<double>(v.size()));
}

}  // namespace

std::string to_string(AwardBase b) {
  return b == AwardBase::kTotalRevenue ? "total_revenue" : "direct_revenue_only";
}

void validate_sim_config(const SimConfig& cfg) {
  if (cfg.rounds_per_epoch <= 0) {
    throw Error(ErrorCode::kDomainError, "rounds_per_epoch must be positive");
  }
  if (cfg.epochs <= 0) {
    throw Error(ErrorCode::kDomainError, "epochs must be positive");
  }
  if (cfg.burn_in_epochs < 0 || cfg.burn_in_epochs >= cfg.epochs) {
    throw Error(ErrorCode::kDomainError,
                "burn_in_epochs must be non-negative and below epochs");
  }
}

bool SimResult::operator==(const SimResult& o) const {
  return empirical_r == o.empirical_r && empirical_U == o.empirical_U &&
         std_err_r == o.std_err_r && std_err_U == o.std_err_U &&
         rounds_total == o.rounds_total &&
         rounds_simulated == o.rounds_simulated &&
         outside_blocks == o.outside_blocks && canonical == o.canonical;
}

SimResult simulate(const ValidatedGame& game, const StrategyProfile& x,
                   const SimConfig& cfg) {
  validate_sim_config(cfg);
  validate_strategy(game, x);
  const std::size_t n = game.num_pools();
  const double honest_total = game.total_power() - x.total();
  if (!(honest_total > 0.0)) {
    throw Error(ErrorCode::kDegenerateDenominator,
                "no honest mining power left in the network");
  }

  // Outcome n is the outside world.
  std::vector<double> weights(n + 1);
  double pool_honest = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    weights[i] = std::max(0.0, game.power(i) - x.outgoing(i));
    pool_honest += weights[i];
  }
  weights[n] = std::max(0.0, honest_total - pool_honest);
  std::discrete_distribution<std::size_t> winner(weights.begin(), weights.end());
  SplitMix64 rng = make_stream(cfg.seed, 0x5157);

  SimResult out;
  out.canonical = cfg.award_base == AwardBase::kTotalRevenue;
  const auto kept = static_cast<std::size_t>(cfg.epochs - cfg.burn_in_epochs);
  std::vector<std::vector<double>> r_samples(n), u_samples(n);
  for (std::size_t i = 0; i < n; ++i) {
    r_samples[i].reserve(kept);
    u_samples[i].reserve(kept);
  }

  std::vector<double> carry(n, 0.0);
  const auto rounds = static_cast<double>(cfg.rounds_per_epoch);
  for (std::int64_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::vector<std::int64_t> blocks(n + 1, 0);
    for (std::int64_t round = 0; round < cfg.rounds_per_epoch; ++round) {
      ++blocks[winner(rng)];
    }
    std::vector<double> direct(n), booked(n);
    for (std::size_t i = 0; i < n; ++i) {
      direct[i] = static_cast<double>(blocks[i]);
      booked[i] = direct[i] + carry[i];
    }
    const Settlement s = settle(game, x, booked, direct, cfg.award_base);

    if (cfg.record_ledger) {
      EpochLedger entry;
      entry.blocks.assign(blocks.begin(), blocks.begin() + static_cast<std::ptrdiff_t>(n));
      entry.outside_blocks = blocks[n];
      entry.carry_in = carry;
      entry.booked = booked;
      entry.award = s.award;
      entry.honest_share = s.honest_share;
      entry.payouts = s.payouts;
      out.ledger.push_back(std::move(entry));
    }
    if (epoch >= cfg.burn_in_epochs) {
      for (std::size_t i = 0; i < n; ++i) {
        r_samples[i].push_back(booked[i] / rounds);
        u_samples[i].push_back((s.award[i] + s.honest_share[i]) / rounds);
      }
      out.outside_blocks += blocks[n];
    }
    for (std::size_t i = 0; i < n; ++i) {
      carry[i] = s.payouts.row(static_cast<Eigen::Index>(i)).sum();
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    out.empirical_r.push_back(mean(r_samples[i]));
    out.empirical_U.push_back(mean(u_samples[i]));
    out.std_err_r.push_back(standard_error(r_samples[i]));
    out.std_err_U.push_back(standard_error(u_samples[i]));
  }
  out.rounds_total = static_cast<std::int64_t>(kept) * cfg.rounds_per_epoch;
  out.rounds_simulated = cfg.epochs * cfg.rounds_per_epoch;
  return out;
}

std::vector<SimResult> simulate_replicas(const ValidatedGame& game,
                                         const StrategyProfile& x,
                                         const SimConfig& cfg,
                                         std::size_t replicas, Execution exec) {
  std::vector<SimResult> out(replicas);
  for_each_index(exec, static_cast<std::int64_t>(replicas), [&](std::int64_t k) {
    SimConfig local = cfg;
    local.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(k));
    out[static_cast<std::size_t>(k)] = simulate(game, x, local);
  });
  return out;
}

std::vector<std::vector<double>> settlement_transient(
    const ValidatedGame& game, const StrategyProfile& x, std::int64_t epochs,
    AwardBase base) {
  validate_strategy(game, x);
  const std::size_t n = game.num_pools();
  const std::vector<double> direct = direct_rewards(game, x);
  std::vector<std::vector<double>> out;
  std::vector<double> carry(n, 0.0);
  for (std::int64_t t = 0; t < epochs; ++t) {
    out.push_back(carry);
    std::vector<double> booked(n);
    for (std::size_t i = 0; i < n; ++i) booked[i] = direct[i] + carry[i];
    const Settlement s = settle(game, x, booked, direct, base);
    for (std::size_t i = 0; i < n; ++i) {
      carry[i] = s.payouts.row(static_cast<Eigen::Index>(i)).sum();
    }
  }
  // Limit: carry = M booked with booked = direct + carry.
  if (base == AwardBase::kTotalRevenue) {
    const RewardBreakdown rb = solve_rewards(game, x);
    out.push_back(rb.infiltration);
  } else {
    // Only the pot alpha_j DR_j + carry_j is shared proportionally.
    Eigen::MatrixXd m_share = Eigen::MatrixXd::Zero(
        static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
      const double registered = game.power(j) + x.incoming(j);
      for (std::size_t i = 0; i < n; ++i) {
        if (i != j) {
          m_share(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
              x(i, j) / registered;
        }
      }
    }
    Eigen::VectorXd dr(static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
      dr(static_cast<Eigen::Index>(j)) = game.alpha(j) * direct[j];
    }
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(
        static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    const Eigen::VectorXd c = (id - m_share).fullPivLu().solve(m_share * dr);
    out.emplace_back(c.data(), c.data() + c.size());
  }
  return out;
}

CompareReport compare(const SimResult& sim, const RewardBreakdown& analytic,
                      double k_sigma, const ValidatedGame* names) {
  const std::size_t n = analytic.total.size();
  if (sim.empirical_r.size() != n || sim.empirical_U.size() != n ||
      analytic.utility.size() != n || sim.std_err_r.size() != n ||
      sim.std_err_U.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "simulation and analytic results cover different pool counts");
  }
  CompareReport report;
  auto add = [&](const char* what, std::size_t i, double emp, double ana,
                 double se) {
    CompareEntry e{what, i, emp, ana, se,
                   std::max(k_sigma * se, 0.01 * std::abs(ana) + 1e-6), false};
    e.passed = std::abs(emp - ana) <= e.bound;
    if (!e.passed) {
      const std::string pool =
          names ? names->pool_name(i) : std::to_string(i + 1);
      report.failures.push_back(std::string(what) + "[pool " + pool + "]");
    }
    report.entries.push_back(e);
  };
  for (std::size_t i = 0; i < n; ++i) {
    add("r", i, sim.empirical_r[i], analytic.total[i], sim.std_err_r[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    add("U", i, sim.empirical_U[i], analytic.utility[i], sim.std_err_U[i]);
  }
  report.passed = report.failures.empty();
  return report;
}

}  // namespace dpbw
