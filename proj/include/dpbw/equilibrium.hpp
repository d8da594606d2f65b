// Copyright 2026 The dpbw Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dpbw/game.hpp"
#include "dpbw/optimize.hpp"
#include "dpbw/parallel.hpp"
#include "dpbw/two_pool.hpp"

namespace dpbw {

// Regret bound (on utilities, which are at most 1) for certifying a profile.
inline constexpr double kCertifyTolerance = 1e-8;
// Profiles closer than this fraction of total pool power are merged.
inline constexpr double kMergeDistance = 1e-6;
// br_dynamics stops when no entry moves by more than this fraction of total
// pool power.
inline constexpr double kDynamicsTolerance = 1e-10;

enum class BestResponseMethod { kGridRefine, kCoordinateAscent };

std::string to_string(BestResponseMethod m);

struct BestResponseResult {
  std::size_t player = 0;
  std::vector<double> strategy;  // row of the profile, zero on the diagonal
  double value = 0.0;            // utility at the best response
  BestResponseMethod method = BestResponseMethod::kGridRefine;
  int iterations = 0;
};

class NoConvergenceError : public Error {
 public:
  NoConvergenceError(const std::string& what, BestResponseResult best)
      : Error(ErrorCode::kNoConvergence, what), best_(std::move(best)) {}
  const BestResponseResult& best() const { return best_; }

 private:
  BestResponseResult best_;
};

struct CoordinateAscentOptions {
  int max_sweeps = 200;
  double min_improvement = 1e-12;
};

// Two pools: 1-D maximization of the closed-form reward over [0, m_player].
// More pools: cyclic coordinate ascent over the player's infiltration row.
BestResponseResult best_response(const ValidatedGame& game,
                                 const StrategyProfile& x, std::size_t player);

// Forces the coordinate-ascent route (any n), used to cross-check the 1-D
// two-pool optimizer.
BestResponseResult best_response_coordinate(
    const ValidatedGame& game, const StrategyProfile& x, std::size_t player,
    const CoordinateAscentOptions& opts = {});

// Best response of `player` against opponent infiltration x_other.
ScalarMaximum two_pool_best_reward(const TwoPoolGame& g, std::size_t player,
                                   double x_other);

// Utility through the same route best_response uses.
double utility(const ValidatedGame& game, const StrategyProfile& x,
               std::size_t player);

double regret(const ValidatedGame& game, const StrategyProfile& x);

bool is_nash(const ValidatedGame& game, const StrategyProfile& x, double eps);

enum class DynamicsOutcome { kConverged, kNotConverged };

struct DynamicsResult {
  std::vector<StrategyProfile> trajectory;  // starts with x0
  DynamicsOutcome outcome = DynamicsOutcome::kNotConverged;
  StrategyProfile final_profile;
  int iterations = 0;
  double final_regret = 0.0;  // set when converged
  bool certified = false;     // converged and is_nash(final, eps)
};

// Simultaneous damped best-response iteration
// x <- (1 - damping) x + damping BR(x).
DynamicsResult br_dynamics(const ValidatedGame& game, const StrategyProfile& x0,
                           double damping, int max_iter,
                           double eps = kCertifyTolerance);

struct EquilibriumCandidate {
  StrategyProfile profile;
  double regret = 0.0;
  double welfare = 0.0;
  std::optional<std::array<CaseLabel, 2>> case_labels;
  bool certified = false;
};

struct EquilibriumReport {
  std::vector<EquilibriumCandidate> candidates;
  double poa = 0.0;
  double pos = 0.0;
  double optimum_welfare = 0.0;
  std::vector<std::string> notes;

  std::size_t certified_count() const;
};

EquilibriumReport enumerate_equilibria_2pool(
    const TwoPoolGame& g, int grid_n = 256, double eps = kCertifyTolerance,
    Execution exec = Execution::kParallel);

// Exploratory search for n pools: damped dynamics from the zero profile and
// from `random_starts` seeded random profiles. Nothing is claimed about
// uniqueness.
EquilibriumReport explore_equilibria(const ValidatedGame& game,
                                     int random_starts, std::uint64_t seed,
                                     double eps = kCertifyTolerance,
                                     Execution exec = Execution::kParallel);

// (PoA, PoS) over certified candidates.
std::pair<double, double> poa_pos(double optimum_welfare,
                                  const std::vector<EquilibriumCandidate>& c);
std::pair<double, double> poa_pos(const ValidatedGame& game,
                                  const EquilibriumReport& report);

struct Theorem1Violation {
  std::size_t player = 0;
  std::vector<double> deviation;
  std::string check;  // "reward", "utility" or "per_pool_term"
  double value = 0.0;
  double bound = 0.0;
};

struct Theorem1Report {
  std::size_t samples_per_player = 0;
  std::size_t evaluated = 0;
  double max_reward_excess = 0.0;    // max r_i(x'_i, 0) - m_i/m
  double max_per_pool_term = 0.0;    // max of the normalized per-pool term
  std::vector<Theorem1Violation> violations;

  bool passed() const { return violations.empty(); }
};

inline constexpr double kTheorem1Tolerance = 1e-10;

// Samples deviations x'_i uniformly over {x >= 0, sum x <= m_i} plus the
// vertices and edge midpoints, and checks r_i(x'_i, 0) <= m_i/m and
// U_i(x'_i, 0) <= m_i/m.
Theorem1Report verify_theorem1(const ValidatedGame& game,
                               std::size_t n_samples, std::uint64_t seed,
                               Execution exec = Execution::kParallel);

struct Theorem2Report {
  bool precondition_met = false;
  EquilibriumReport equilibria;
  CornerReport corners;
  std::optional<ClaimReport> claims;  // requires the preconditions
  bool unique_zero = false;
  bool passed = false;
  std::vector<std::string> notes;
};

// Throws PreconditionUnmet unless `exploratory`, in which case the outcome is
// reported with passed = false.
Theorem2Report verify_theorem2(const TwoPoolGame& g, int grid_n = 256,
                               double eps = kCertifyTolerance,
                               bool exploratory = false, int claim_grid = 1000,
                               Execution exec = Execution::kParallel);

}  // namespace dpbw
