// Copyright 2026 The dpbw Authors
// SPDX-License-Identifier: Apache-2.0

#include "dpbw/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dpbw/instances.hpp"
#include "dpbw/optimize.hpp"
#include "dpbw/random.hpp"

namespace dpbw {
namespace {

double opponent_infiltration(const StrategyProfile& x, std::size_t player) {
  return player == 0 ? x(1, 0) : x(0, 1);
}

// Upper end of the player's interval so that the honest power stays positive.
double feasible_cap(double budget, double total_power, double used_elsewhere) {
  const double room = total_power - used_elsewhere;
  if (budget < room) return budget;
  return std::max(0.0, room * (1.0 - 1e-12));
}

double max_abs_diff(const StrategyProfile& a, const StrategyProfile& b) {
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

StrategyProfile best_response_profile(const ValidatedGame& game,
                                      const StrategyProfile& x) {
  StrategyProfile out = x;
  for (std::size_t p = 0; p < game.num_pools(); ++p) {
    BestResponseResult br;
    try {
      br = best_response(game, x, p);
    } catch (const NoConvergenceError& e) {
      br = e.best();
    }
    out.set_row(p, br.strategy);
  }
  return out;
}

std::string describe(const StrategyProfile& x) {
  std::ostringstream os;
  os.precision(10);
  os << "[";
  for (Eigen::Index i = 0; i < x.matrix().rows(); ++i) {
    os << (i ? ", [" : "[");
    for (Eigen::Index j = 0; j < x.matrix().cols(); ++j) {
      os << (j ? ", " : "") << x.matrix()(i, j);
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

// Merge nearly equal candidates (keeping the lower regret) and order the
// survivors by profile coordinates.
std::vector<EquilibriumCandidate> merge_candidates(
    std::vector<EquilibriumCandidate> raw, double distance) {
  std::vector<EquilibriumCandidate> merged;
  for (auto& c : raw) {
    auto it = std::find_if(merged.begin(), merged.end(), [&](const auto& m) {
      return max_abs_diff(m.profile, c.profile) <= distance;
    });
    if (it == merged.end()) {
      merged.push_back(std::move(c));
    } else if (c.regret < it->regret) {
      *it = std::move(c);
    }
  }
  std::sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) {
    const auto& ma = a.profile.matrix();
    const auto& mb = b.profile.matrix();
    return std::lexicographical_compare(ma.data(), ma.data() + ma.size(),
                                        mb.data(), mb.data() + mb.size());
  });
  return merged;
}

void finish_report(EquilibriumReport& report, double optimum) {
  report.optimum_welfare = optimum;
  if (report.certified_count() == 0) {
    report.poa = std::numeric_limits<double>::quiet_NaN();
    report.pos = std::numeric_limits<double>::quiet_NaN();
    report.notes.push_back("no certified equilibrium; PoA and PoS undefined");
  } else {
    std::tie(report.poa, report.pos) = poa_pos(optimum, report.candidates);
  }
  for (const auto& c : report.candidates) {
    if (!c.certified) {
      std::ostringstream os;
      os.precision(10);
      os << "approximate candidate " << describe(c.profile) << " with regret "
         << c.regret << " is not certified";
      report.notes.push_back(os.str());
    }
  }
}

EquilibriumCandidate candidate_from_dynamics(const ValidatedGame& game,
                                             const DynamicsResult& dyn,
                                             double eps) {
  EquilibriumCandidate c;
  c.profile = dyn.final_profile;
  c.regret = dyn.outcome == DynamicsOutcome::kConverged
                 ? dyn.final_regret
                 : regret(game, dyn.final_profile);
  c.welfare = game.total_power() - c.profile.total();
  c.certified = dyn.outcome == DynamicsOutcome::kConverged && c.regret <= eps;
  return c;
}

}  // namespace

std::string to_string(BestResponseMethod m) {
  return m == BestResponseMethod::kGridRefine ? "GridRefine" : "CoordinateAscent";
}

ScalarMaximum two_pool_best_reward(const TwoPoolGame& g, std::size_t player,
                                   double x_other) {
  const double hi = feasible_cap(g.power(player), g.m, x_other);
  auto at = [&](double t) {
    return player == 0 ? std::array<double, 2>{t, x_other}
                       : std::array<double, 2>{x_other, t};
  };
  auto reward = [&](double t) {
    const auto p = at(t);
    return closed_form_rewards(g, p[0], p[1])[player];
  };
  auto slope = [&](double t) {
    const auto p = at(t);
    return reward_slope(g, p[0], p[1], player);
  };
  return maximize_scalar(reward, slope, 0.0, hi);
}

BestResponseResult best_response(const ValidatedGame& game,
                                 const StrategyProfile& x, std::size_t player) {
  validate_strategy(game, x);
  if (player >= game.num_pools()) {
    throw Error(ErrorCode::kDomainError, "player index out of range");
  }
  if (game.num_pools() != 2) return best_response_coordinate(game, x, player);

  const TwoPoolGame g = TwoPoolGame::from(game);
  const double other = opponent_infiltration(x, player);
  const ScalarMaximum best = two_pool_best_reward(g, player, other);

  BestResponseResult out;
  out.player = player;
  out.method = BestResponseMethod::kGridRefine;
  out.strategy = {0.0, 0.0};
  out.strategy[1 - player] = best.argmax;
  const double own = g.power(player);
  const double a = g.alpha(player);
  out.value = (other == 0.0 ? 1.0 : 1.0 - a + own * a / (own + other)) * best.value;
  out.iterations = best.evaluations;
  return out;
}

BestResponseResult best_response_coordinate(const ValidatedGame& game,
                                            const StrategyProfile& x,
                                            std::size_t player,
                                            const CoordinateAscentOptions& opts) {
  validate_strategy(game, x);
  const std::size_t n = game.num_pools();
  if (player >= n) {
    throw Error(ErrorCode::kDomainError, "player index out of range");
  }
  StrategyProfile work = x;
  double best = detail::utility_unchecked(game, work, player);
  const double others = x.total() - x.outgoing(player);

  BestResponseResult out;
  out.player = player;
  out.method = BestResponseMethod::kCoordinateAscent;

  for (int sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
    const double sweep_start = best;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == player) continue;
      const double rest = work.outgoing(player) - work(player, j);
      const double cap = std::max(0.0, game.power(player) - rest);
      const double hi = feasible_cap(cap, game.total_power(), others + rest);
      const double incumbent = work(player, j);
      auto f = [&](double t) {
        work(player, j) = t;
        return detail::utility_unchecked(game, work, player);
      };
      const ScalarMaximum m = maximize_scalar(f, 0.0, hi);
      if (m.value > best) {
        work(player, j) = m.argmax;
        best = m.value;
      } else {
        work(player, j) = incumbent;
      }
    }
    out.iterations = sweep;
    if (best - sweep_start < opts.min_improvement) {
      out.strategy = work.row(player);
      out.value = best;
      return out;
    }
  }
  out.strategy = work.row(player);
  out.value = best;
  throw NoConvergenceError("coordinate ascent did not settle within " +
                               std::to_string(opts.max_sweeps) + " sweeps",
                           out);
}

double utility(const ValidatedGame& game, const StrategyProfile& x,
               std::size_t player) {
  validate_strategy(game, x);
  if (game.num_pools() == 2) {
    return closed_form_utility(TwoPoolGame::from(game), x(0, 1), x(1, 0), player);
  }
  return detail::utility_unchecked(game, x, player);
}

double regret(const ValidatedGame& game, const StrategyProfile& x) {
  validate_strategy(game, x);
  double worst = 0.0;
  for (std::size_t p = 0; p < game.num_pools(); ++p) {
    const double gain = best_response(game, x, p).value - utility(game, x, p);
    worst = std::max(worst, gain);
  }
  return worst;
}

bool is_nash(const ValidatedGame& game, const StrategyProfile& x, double eps) {
  if (!(eps > 0.0)) {
    throw Error(ErrorCode::kDomainError, "is_nash needs eps > 0");
  }
  return regret(game, x) <= eps;
}

DynamicsResult br_dynamics(const ValidatedGame& game, const StrategyProfile& x0,
                           double damping, int max_iter, double eps) {
  if (!(damping > 0.0 && damping <= 1.0)) {
    throw Error(ErrorCode::kDomainError, "damping must lie in (0, 1]");
  }
  validate_strategy(game, x0);
  const double tol = kDynamicsTolerance * game.pool_power_sum();

  DynamicsResult out;
  out.trajectory.push_back(x0);
  StrategyProfile current = x0;
  for (int it = 1; it <= max_iter; ++it) {
    const StrategyProfile target = best_response_profile(game, current);
    StrategyProfile next(
        (1.0 - damping) * current.matrix() + damping * target.matrix());
    for (std::size_t i = 0; i < game.num_pools(); ++i) next(i, i) = 0.0;
    const double change = max_abs_diff(next, current);
    out.trajectory.push_back(next);
    current = std::move(next);
    out.iterations = it;
    if (change <= tol) {
      out.outcome = DynamicsOutcome::kConverged;
      // The best response at the fixed point is usually the sharper
      // representative (exact zeros at boundary optima).
      out.final_profile = current;
      out.final_regret = regret(game, current);
      const StrategyProfile snapped = best_response_profile(game, current);
      const double snapped_regret = regret(game, snapped);
      if (snapped_regret <= out.final_regret) {
        out.final_profile = snapped;
        out.final_regret = snapped_regret;
      }
      out.certified = out.final_regret <= eps;
      return out;
    }
  }
  out.final_profile = current;
  return out;
}

std::size_t EquilibriumReport::certified_count() const {
  return static_cast<std::size_t>(std::count_if(
      candidates.begin(), candidates.end(),
      [](const auto& c) { return c.certified; }));
}

EquilibriumReport enumerate_equilibria_2pool(const TwoPoolGame& g, int grid_n,
                                             double eps, Execution exec) {
  if (grid_n < 1) {
    throw Error(ErrorCode::kDomainError, "grid_n must be positive");
  }
  const ValidatedGame game = g.validated();
  const auto nodes = static_cast<std::size_t>(grid_n) + 1;
  auto node = [&](std::size_t player, std::size_t k) {
    return g.power(player) * static_cast<double>(k) / grid_n;
  };

  // br[0][l]: player 0's reply to x2 = node(1, l); br[1][k]: reply to x1.
  std::array<std::vector<double>, 2> br{std::vector<double>(nodes),
                                        std::vector<double>(nodes)};
  for_each_index(exec, static_cast<std::int64_t>(2 * nodes), [&](std::int64_t idx) {
    const auto player = static_cast<std::size_t>(idx) / nodes;
    const auto k = static_cast<std::size_t>(idx) % nodes;
    br[player][k] = two_pool_best_reward(g, player, node(1 - player, k)).argmax;
  });

  const double h1 = g.m1 / grid_n * (1.0 + 1e-9);
  const double h2 = g.m2 / grid_n * (1.0 + 1e-9);
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t k = 0; k < nodes; ++k) {
    for (std::size_t l = 0; l < nodes; ++l) {
      const double x1 = node(0, k);
      const double x2 = node(1, l);
      if (!(x1 + x2 < g.m)) continue;
      if (std::abs(x1 - br[0][l]) <= h1 && std::abs(x2 - br[1][k]) <= h2) {
        cells.emplace_back(k, l);
      }
    }
  }

  std::vector<EquilibriumCandidate> raw(cells.size());
  for_each_index(exec, static_cast<std::int64_t>(cells.size()), [&](std::int64_t c) {
    const auto [k, l] = cells[static_cast<std::size_t>(c)];
    const StrategyProfile start = StrategyProfile::two_pool(node(0, k), node(1, l));
    const DynamicsResult dyn = br_dynamics(game, start, 0.5, 2000, eps);
    raw[static_cast<std::size_t>(c)] = candidate_from_dynamics(game, dyn, eps);
  });

  EquilibriumReport report;
  report.candidates = merge_candidates(std::move(raw), kMergeDistance * (g.m1 + g.m2));
  for (auto& c : report.candidates) {
    const double x1 = c.profile(0, 1);
    const double x2 = c.profile(1, 0);
    c.case_labels = std::array<CaseLabel, 2>{classify_case(g, x1, x2, 0),
                                             classify_case(g, x1, x2, 1)};
  }
  report.notes.push_back("grid candidates seeded: " + std::to_string(cells.size()));
  finish_report(report, g.m);
  return report;
}

EquilibriumReport explore_equilibria(const ValidatedGame& game,
                                     int random_starts, std::uint64_t seed,
                                     double eps, Execution exec) {
  const std::size_t n = game.num_pools();
  std::vector<StrategyProfile> starts{StrategyProfile::zeros(n)};
  for (int s = 0; s < random_starts; ++s) {
    SplitMix64 rng = make_stream(seed, static_cast<std::uint64_t>(s));
    starts.push_back(random_profile(rng, game));
  }
  std::vector<EquilibriumCandidate> raw(starts.size());
  for_each_index(exec, static_cast<std::int64_t>(starts.size()), [&](std::int64_t s) {
    const DynamicsResult dyn =
        br_dynamics(game, starts[static_cast<std::size_t>(s)], 0.5, 500, eps);
    raw[static_cast<std::size_t>(s)] = candidate_from_dynamics(game, dyn, eps);
  });
  EquilibriumReport report;
  report.candidates =
      merge_candidates(std::move(raw), kMergeDistance * game.pool_power_sum());
  if (n == 2) {
    const TwoPoolGame g = TwoPoolGame::from(game);
    for (auto& c : report.candidates) {
      const double x1 = c.profile(0, 1);
      const double x2 = c.profile(1, 0);
      c.case_labels = std::array<CaseLabel, 2>{classify_case(g, x1, x2, 0),
                                               classify_case(g, x1, x2, 1)};
    }
  }
  report.notes.push_back("exploratory search from " +
                         std::to_string(starts.size()) +
                         " starts; uniqueness is not certified");
  finish_report(report, game.total_power());
  return report;
}

std::pair<double, double> poa_pos(double optimum_welfare,
                                  const std::vector<EquilibriumCandidate>& c) {
  double worst = std::numeric_limits<double>::infinity();
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& cand : c) {
    if (!cand.certified) continue;
    worst = std::min(worst, cand.welfare);
    best = std::max(best, cand.welfare);
  }
  if (!std::isfinite(worst)) {
    throw Error(ErrorCode::kNoCertifiedEquilibrium,
                "PoA and PoS need at least one certified equilibrium");
  }
  return {optimum_welfare / worst, optimum_welfare / best};
}

std::pair<double, double> poa_pos(const ValidatedGame& game,
                                  const EquilibriumReport& report) {
  return poa_pos(game.total_power(), report.candidates);
}

Theorem1Report verify_theorem1(const ValidatedGame& game, std::size_t n_samples,
                               std::uint64_t seed, Execution exec) {
  if (!game.theorem1_bound_holds()) {
    throw Error(ErrorCode::kPreconditionUnmet,
                "every alpha_i must satisfy alpha_i <= 1 - m_max/m");
  }
  const std::size_t n = game.num_pools();
  const double m = game.total_power();
  constexpr std::size_t kChunk = 1024;
  constexpr std::size_t kMaxViolationsPerUnit = 8;

  // Deterministic extreme deviations: vertices and edge midpoints of the
  // budget simplex (including the zero vertex).
  auto structured = [&](std::size_t i) {
    std::vector<std::vector<double>> out;
    const double mi = game.power(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      std::vector<double> v(n, 0.0);
      v[j] = mi;
      out.push_back(v);
      v[j] = 0.5 * mi;
      out.push_back(v);
      for (std::size_t k = j + 1; k < n; ++k) {
        if (k == i) continue;
        std::vector<double> w(n, 0.0);
        w[j] = 0.5 * mi;
        w[k] = 0.5 * mi;
        out.push_back(w);
      }
    }
    return out;
  };

  struct Unit {
    std::size_t player;
    std::size_t chunk;  // 0 is the structured set
  };
  std::vector<Unit> units;
  const std::size_t random_chunks = (n_samples + kChunk - 1) / kChunk;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c <= random_chunks; ++c) units.push_back({i, c});
  }

  struct UnitResult {
    std::size_t evaluated = 0;
    double max_reward_excess = -std::numeric_limits<double>::infinity();
    double max_term = -std::numeric_limits<double>::infinity();
    std::vector<Theorem1Violation> violations;
  };
  std::vector<UnitResult> results(units.size());

  for_each_index(exec, static_cast<std::int64_t>(units.size()), [&](std::int64_t u) {
    const Unit unit = units[static_cast<std::size_t>(u)];
    UnitResult& res = results[static_cast<std::size_t>(u)];
    const std::size_t i = unit.player;
    const double baseline = game.power(i) / m;
    StrategyProfile y = StrategyProfile::zeros(n);

    auto check = [&](const std::vector<double>& dev) {
      y.set_row(i, dev);
      const RewardBreakdown rb = detail::solve_rewards_unchecked(game, y);
      ++res.evaluated;
      auto record = [&](const char* what, double value, double bound) {
        if (res.violations.size() < kMaxViolationsPerUnit) {
          res.violations.push_back({i, dev, what, value, bound});
        }
      };
      res.max_reward_excess = std::max(res.max_reward_excess, rb.total[i] - baseline);
      if (!(rb.total[i] <= baseline + kTheorem1Tolerance)) {
        record("reward", rb.total[i], baseline + kTheorem1Tolerance);
      }
      if (!(rb.utility[i] <= baseline + kTheorem1Tolerance)) {
        record("utility", rb.utility[i], baseline + kTheorem1Tolerance);
      }
      // Numerator of each pool's summand, normalized by m m_j.
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double mj = game.power(j);
        const double term =
            ((game.power(i) - m) * (mj + dev[j]) + m * mj * game.alpha(j)) /
            (m * mj);
        res.max_term = std::max(res.max_term, term);
        if (!(term <= 1e-12)) record("per_pool_term", term, 0.0);
      }
    };

    if (unit.chunk == 0) {
      for (const auto& dev : structured(i)) check(dev);
      return;
    }
    const std::size_t begin = (unit.chunk - 1) * kChunk;
    const std::size_t end = std::min(n_samples, begin + kChunk);
    SplitMix64 rng = make_stream(seed, i, unit.chunk);
    std::vector<double> dev(n, 0.0);
    for (std::size_t s = begin; s < end; ++s) {
      const auto point = random_budget_point(rng, n - 1, game.power(i));
      std::size_t k = 0;
      for (std::size_t j = 0; j < n; ++j) dev[j] = (j == i) ? 0.0 : point[k++];
      check(dev);
    }
  });

  Theorem1Report report;
  report.samples_per_player = n_samples;
  report.max_reward_excess = -std::numeric_limits<double>::infinity();
  report.max_per_pool_term = -std::numeric_limits<double>::infinity();
  for (auto& r : results) {
    report.evaluated += r.evaluated;
    report.max_reward_excess = std::max(report.max_reward_excess, r.max_reward_excess);
    report.max_per_pool_term = std::max(report.max_per_pool_term, r.max_term);
    for (auto& v : r.violations) report.violations.push_back(std::move(v));
  }
  return report;
}

Theorem2Report verify_theorem2(const TwoPoolGame& g, int grid_n, double eps,
                               bool exploratory, int claim_grid, Execution exec) {
  Theorem2Report out;
  out.precondition_met = g.theorem2_precondition();
  if (!out.precondition_met && !exploratory) {
    throw Error(ErrorCode::kPreconditionUnmet,
                "uniqueness check requires alpha1 <= 1 - m2/m, "
                "alpha2 <= 1 - m1/m and m > 3 (m1 + m2)");
  }
  out.equilibria = enumerate_equilibria_2pool(g, grid_n, eps, exec);
  out.corners = corner_case_check(g);
  if (out.precondition_met) {
    out.claims = claim_suite(g, claim_grid, exec);
  } else {
    out.notes.push_back(
        "preconditions unmet: exploratory run, claim suite skipped and the "
        "outcome is not asserted");
  }
  std::size_t certified = 0;
  bool only_zero = true;
  for (const auto& c : out.equilibria.candidates) {
    if (!c.certified) continue;
    ++certified;
    if (std::max(c.profile(0, 1), c.profile(1, 0)) > 1e-6) only_zero = false;
  }
  out.unique_zero = certified == 1 && only_zero;
  out.passed = out.precondition_met && out.unique_zero;
  return out;
}

}  // namespace dpbw
