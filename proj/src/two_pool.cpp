// Copyright 2026 The dpbw Authors
// SPDX-License-Identifier: Apache-2.0

#include "dpbw/two_pool.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dpbw/random.hpp"

namespace dpbw {
namespace {

// Forward-mode dual number, enough arithmetic for the closed forms.
struct Dual {
  double v = 0.0;
  double d = 0.0;
};

Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
Dual operator/(Dual a, Dual b) {
  return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
}
Dual operator+(double a, Dual b) { return {a + b.v, b.d}; }
Dual operator-(double a, Dual b) { return {a - b.v, -b.d}; }
Dual operator*(double a, Dual b) { return {a * b.v, a * b.d}; }

template <typename T>
std::array<T, 2> closed_form(const TwoPoolGame& g, T x1, T x2) {
  const T honest = g.m - x1 - x2;
  const T coupling = (g.m1 + x2) * (g.m2 + x1) - g.alpha1 * g.alpha2 * x1 * x2;
  const T denom = honest * coupling;
  const T r1 = (g.m1 + x2) *
               ((g.m1 - x1) * (g.m2 + x1) + g.alpha2 * x1 * (g.m2 - x2)) /
               denom;
  const T r2 = (g.m2 + x1) *
               ((g.m2 - x2) * (g.m1 + x2) + g.alpha1 * x2 * (g.m1 - x1)) /
               denom;
  return {r1, r2};
}

bool in_budget(double x, double cap) {
  return x >= 0.0 && x <= cap * (1.0 + kBudgetSlack);
}

void check_domain(const TwoPoolGame& g, double x1, double x2) {
  if (!(in_budget(x1, g.m1) && in_budget(x2, g.m2))) {
    throw Error(ErrorCode::kDomainError,
                "two-pool profile outside [0, m1] x [0, m2]");
  }
  if (!(x1 + x2 < g.m)) {
    throw Error(ErrorCode::kDomainError,
                "two-pool profile leaves no honest mining power");
  }
}

void check_player(std::size_t player) {
  if (player > 1) {
    throw Error(ErrorCode::kDomainError, "two-pool player index must be 0 or 1");
  }
}

int sign_of(double v, double zero_tol) {
  if (v > zero_tol) return 1;
  if (v < -zero_tol) return -1;
  return 0;
}

// Printed deviation-quadratic coefficients for player 0.
void table1_coefficients(const TwoPoolGame& g, double x1, double x2, double r1,
                         double& A, double& B) {
  const double a12 = g.alpha1 * g.alpha2;
  A = -(g.m1 + x2) + r1 * (g.m1 + x2 - a12 * x2);
  const double direct_part = (g.m1 - x1) * (g.m2 + x1);
  B = (g.m1 + x2) * (g.m1 - g.m2 - 2.0 * x1 + g.alpha2 * (g.m2 - x2)) +
      (g.m1 + g.m2) * (direct_part + g.alpha2 * x1 * (g.m2 - x2)) /
          (g.m - x1 - x2) +
      (g.m1 + x2 - a12 * x2) * (g.m1 + x2) *
          (direct_part + g.alpha2 * x2 * (g.m2 - x2)) /
          ((g.m1 + x2) * (g.m2 + x1) - a12 * x1 * x2);
}

QPolynomial q_player0(const TwoPoolGame& g, double x2) {
  const double m = g.m, m1 = g.m1, m2 = g.m2;
  const double a1 = g.alpha1, a2 = g.alpha2;
  QPolynomial q;
  q.a = (-a1 * a2 * a2 * m2 + a1 * a2 * m - a1 * a2 * m1 - a2 * m1 +
         a1 * a2 * m2 + a2 * m2 - m + 2.0 * m1) *
            x2 +
        (a1 * a2 * a2 - a1 * a2 - a2 + 1.0) * x2 * x2 + a2 * m2 * m1 + m1 * m1 -
        m * m1;
  q.b = -2.0 * m * m1 * m2 + 2.0 * m1 * m1 * m2 +
        (-2.0 * m * m2 + 4.0 * m1 * m2 - 2.0 * a1 * a2 * m1 * m2) * x2 +
        2.0 * m2 * x2 * x2;
  const double shared =
      a2 * m2 * x2 * x2 * x2 +
      (-m * a2 * m2 + a2 * m1 * m2 - a1 * a2 * m1 * m2 + m2 * m2 -
       a2 * m2 * m2) *
          x2 * x2 +
      (-m * a2 * m1 * m2 + m * a1 * a2 * m1 * m2 - m * m2 * m2 +
       m * a2 * m2 * m2 + 2.0 * m1 * m2 * m2 - a2 * m1 * m2 * m2) *
          x2 +
      (-m * m1 * m2 * m2 + m * a2 * m1 * m2 * m2);
  q.c = shared + m1 * m1 * m2 * m2;
  q.c_as_printed = shared + m1 * m2 * m2;
  q.x_other = x2;
  return q;
}

// Qbar helper for player 0 at opponent infiltration x2.
double qbar_player0(const TwoPoolGame& g, double x2) {
  const double a12 = g.alpha1 * g.alpha2;
  return 2.0 * g.m1 * g.m1 +
         x2 * (-g.m + g.m2 + a12 * (g.m - x2) + x2) +
         g.m1 * (-g.m + g.m2 + (3.0 - 2.0 * a12) * x2);
}

}  // namespace

bool TwoPoolGame::theorem2_precondition() const {
  return alpha1 <= 1.0 - m2 / m + kBudgetSlack &&
         alpha2 <= 1.0 - m1 / m + kBudgetSlack && m > 3.0 * (m1 + m2);
}

GameConfig TwoPoolGame::to_config() const {
  GameConfig cfg;
  cfg.total_power = m;
  cfg.pool_powers = {m1, m2};
  cfg.alphas = {alpha1, alpha2};
  return cfg;
}

ValidatedGame TwoPoolGame::validated() const { return validate_game(to_config()); }

TwoPoolGame TwoPoolGame::from(const ValidatedGame& game) {
  if (game.num_pools() != 2) {
    throw Error(ErrorCode::kDimensionMismatch,
                "two-pool analysis needs exactly two pools");
  }
  return {game.total_power(), game.power(0), game.power(1), game.alpha(0),
          game.alpha(1)};
}

TwoPoolGame make_two_pool(double m, double m1, double m2, double alpha1,
                          double alpha2) {
  return TwoPoolGame::from(
      validate_game(TwoPoolGame{m, m1, m2, alpha1, alpha2}.to_config()));
}

std::array<double, 2> closed_form_rewards(const TwoPoolGame& g, double x1,
                                          double x2) {
  check_domain(g, x1, x2);
  return closed_form<double>(g, x1, x2);
}

double closed_form_utility(const TwoPoolGame& g, double x1, double x2,
                           std::size_t player) {
  check_player(player);
  const auto r = closed_form_rewards(g, x1, x2);
  const double own = g.power(player);
  const double a = g.alpha(player);
  const double incoming = player == 0 ? x2 : x1;
  const double coef = incoming == 0.0 ? 1.0 : 1.0 - a + own * a / (own + incoming);
  return coef * r[player];
}

double reward_slope(const TwoPoolGame& g, double x1, double x2,
                    std::size_t player) {
  check_player(player);
  check_domain(g, x1, x2);
  const Dual d1{x1, player == 0 ? 1.0 : 0.0};
  const Dual d2{x2, player == 1 ? 1.0 : 0.0};
  return closed_form<Dual>(g, d1, d2)[player].d;
}

double deviation_gain_exact(const TwoPoolGame& g, double x1, double x2,
                            std::size_t player, double delta) {
  check_player(player);
  check_domain(g, x1, x2);
  if (delta == 0.0) return 0.0;
  double y1 = x1;
  double y2 = x2;
  (player == 0 ? y1 : y2) += delta;
  if (!in_budget(player == 0 ? y1 : y2, g.power(player))) {
    throw Error(ErrorCode::kDomainError,
                "deviation leaves the player's strategy interval");
  }
  return closed_form_rewards(g, y1, y2)[player] -
         closed_form_rewards(g, x1, x2)[player];
}

DeviationQuadratic deviation_quadratic(const TwoPoolGame& g, double x1,
                                       double x2, std::size_t player,
                                       int sample_count) {
  check_player(player);
  check_domain(g, x1, x2);
  const TwoPoolGame gp = player == 0 ? g : g.mirrored();
  const double own = player == 0 ? x1 : x2;
  const double other = player == 0 ? x2 : x1;
  const double r_own = closed_form<double>(gp, own, other)[0];

  DeviationQuadratic q;
  q.player = player;
  table1_coefficients(gp, own, other, r_own, q.A, q.B);
  q.C = 0.0;
  q.exact_slope = reward_slope(g, x1, x2, player);
  q.slope_sign_consistent =
      sign_of(q.B, 0.0) == sign_of(q.exact_slope, 0.0);

  const double lo = -own;
  const double hi = gp.m1 - own;
  const double min_step = 1e-12 * gp.m1;
  for (int k = 0; k < sample_count; ++k) {
    const double delta = lo + (hi - lo) * (k + 0.5) / sample_count;
    if (std::abs(delta) < min_step) continue;
    SignSample s;
    s.delta = delta;
    s.quadratic = (q.A * delta + q.B) * delta + q.C;
    s.exact = deviation_gain_exact(gp, own, other, 0, delta);
    const double q_scale =
        1e-12 * (std::abs(q.A) * delta * delta + std::abs(q.B * delta));
    s.consistent = sign_of(s.quadratic, q_scale) == sign_of(s.exact, 1e-15);
    if (!s.consistent) ++q.mismatches;
    q.samples.push_back(s);
  }
  return q;
}

QPolynomial q_coefficients(const TwoPoolGame& g, std::size_t player,
                           double x_other) {
  check_player(player);
  const double cap = player == 0 ? g.m2 : g.m1;
  if (!in_budget(x_other, cap)) {
    throw Error(ErrorCode::kDomainError,
                "opponent infiltration outside its strategy interval");
  }
  QPolynomial q = q_player0(player == 0 ? g : g.mirrored(), x_other);
  q.player = player;
  return q;
}

QValue q_value(const TwoPoolGame& g, double x1, double x2, std::size_t player) {
  check_player(player);
  check_domain(g, x1, x2);
  const TwoPoolGame gp = player == 0 ? g : g.mirrored();
  const double own = player == 0 ? x1 : x2;
  const double other = player == 0 ? x2 : x1;

  QValue out;
  out.expanded = q_player0(gp, other)(own);
  const double r_own = closed_form<double>(gp, own, other)[0];
  double A = 0.0;
  double B = 0.0;
  table1_coefficients(gp, own, other, r_own, A, B);
  const double a12 = gp.alpha1 * gp.alpha2;
  const double honest = gp.m - own - other;
  const double coupling = (gp.m1 + other) * (gp.m2 + own) - a12 * own * other;
  out.clearing_factor = honest * coupling / (gp.m1 + other);
  const double printed_coupling =
      (gp.m1 + gp.m2) * (gp.m2 + gp.m1) - a12 * own * other;
  out.clearing_factor_as_printed = honest * printed_coupling / (gp.m1 + other);
  out.cleared = B * out.clearing_factor;
  if (std::abs(out.cleared) > 1e-9) {
    out.sign_agrees = sign_of(out.expanded, 0.0) == sign_of(out.cleared, 0.0);
  }
  return out;
}

std::string to_string(Case c) {
  switch (c) {
    case Case::kCase1: return "Case1";
    case Case::kCase2: return "Case2";
    case Case::kCase3: return "Case3";
    case Case::kNone: return "None";
  }
  return "None";
}

CaseLabel classify_case(const TwoPoolGame& g, double x1, double x2,
                        std::size_t player, double tol) {
  check_player(player);
  check_domain(g, x1, x2);
  const double cap = g.power(player);
  const double own = player == 0 ? x1 : x2;
  const double h = 1e-6 * cap;
  const double eps_pos = kBudgetSlack * cap;

  CaseLabel out;
  out.player = player;
  auto gain = [&](double delta) {
    return deviation_gain_exact(g, x1, x2, player, delta);
  };
  if (own <= eps_pos) {
    const double step = std::min(h, cap - own);
    out.slope = gain(step) / step * cap;
    out.label = out.slope <= tol ? Case::kCase1 : Case::kNone;
  } else if (own >= cap - eps_pos) {
    const double step = std::min(h, own);
    out.slope = -gain(-step) / step * cap;
    out.label = out.slope >= -tol ? Case::kCase3 : Case::kNone;
  } else {
    const double step = std::min({h, own, std::max(cap - own, 0.0)});
    out.slope = (gain(step) - gain(-step)) / (2.0 * step) * cap;
    out.label = std::abs(out.slope) <= tol ? Case::kCase2 : Case::kNone;
  }
  return out;
}

Lemma2Endpoints lemma2_endpoints(const TwoPoolGame& g, std::size_t player) {
  check_player(player);
  const TwoPoolGame gp = player == 0 ? g : g.mirrored();
  const double m = gp.m, m1 = gp.m1, m2 = gp.m2;
  const double a12 = gp.alpha1 * gp.alpha2;
  Lemma2Endpoints out;
  out.player = player;
  out.printed_at_zero = gp.alpha2 * m1 * m1 * m2 * (-m + 2.0 * m1 + m2);
  out.printed_at_full =
      -(m1 + m2) * (m - m1 - m2) * (-a12 * m1 * m2 + (m1 + m2) * (m1 + m2));
  out.expanded_at_zero = q_player0(gp, 0.0)(m1);
  out.expanded_at_full = q_player0(gp, m2)(m1);
  return out;
}

bool ClaimReport::passed() const {
  for (const auto& v : violations) {
    if (v.in_regime) return false;
  }
  return lemma1.contradiction_holds && lemma1.simultaneous_root_cells == 0;
}

std::vector<Table1Entry> table1_diagnostic(const TwoPoolGame& g) {
  const std::array<std::array<double, 2>, 5> profiles{{{0.0, 0.0},
                                                       {g.m1, 0.0},
                                                       {0.0, g.m2},
                                                       {g.m1, g.m2},
                                                       {0.5 * g.m1, 0.5 * g.m2}}};
  std::vector<Table1Entry> out;
  for (const auto& p : profiles) {
    if (!(p[0] + p[1] < g.m)) continue;
    for (std::size_t player = 0; player < 2; ++player) {
      out.push_back({p[0], p[1], deviation_quadratic(g, p[0], p[1], player)});
    }
  }
  return out;
}

ClaimReport claim_suite(const TwoPoolGame& g, int grid_n, Execution exec) {
  if (!g.theorem2_precondition()) {
    throw Error(ErrorCode::kPreconditionUnmet,
                "claim suite requires alpha1 <= 1 - m2/m, alpha2 <= 1 - m1/m "
                "and m > 3 (m1 + m2)");
  }
  if (grid_n < 2) {
    throw Error(ErrorCode::kDomainError, "claim suite grid needs grid_n >= 2");
  }
  ClaimReport report;
  report.grid_n = grid_n;
  report.in_regime = g.alpha1 > 0.5 && g.alpha2 > 0.5 && g.m >= 2.0 * (g.m1 + g.m2);
  const bool in_regime = report.in_regime;

  // Keep the diagnostic sign grid moderate; the claims use the full grid.
  const int sign_stride = std::max(1, grid_n / 64);
  constexpr std::size_t kMaxLoggedDiscrepancies = 32;

  struct RowResult {
    std::vector<ClaimViolation> violations;
    std::array<std::size_t, 3> counts{};
    std::size_t sign_checks = 0;
    std::vector<SignDiscrepancy> discrepancies;
  };

  for (std::size_t player = 0; player < 2; ++player) {
    const TwoPoolGame gp = player == 0 ? g : g.mirrored();
    const double own_cap = gp.m1;
    const double other_cap = gp.m2;
    const double c_scale =
        1e-12 * (gp.m * own_cap * other_cap * other_cap +
                 own_cap * own_cap * other_cap * other_cap);
    std::vector<RowResult> rows(static_cast<std::size_t>(grid_n) + 1);

    for_each_index(exec, grid_n + 1, [&](std::int64_t k) {
      RowResult& row = rows[static_cast<std::size_t>(k)];
      const double x_other = other_cap * static_cast<double>(k) / grid_n;
      const QPolynomial q = q_player0(gp, x_other);
      if (!(q.c <= c_scale)) {
        row.violations.push_back({"claim1", player, x_other, 0.0, q.c, in_regime});
        ++row.counts[0];
      }
      if (!(q.b < 0.0)) {
        row.violations.push_back({"claim2", player, x_other, 0.0, q.b, in_regime});
        ++row.counts[1];
      }
      const bool interior_other = k > 0 && k < grid_n;
      if (interior_other && q.a <= 0.0) {
        for (int j = 1; j < grid_n; ++j) {
          const double x_own = own_cap * static_cast<double>(j) / grid_n;
          const double v = q(x_own);
          if (!(v < 0.0)) {
            row.violations.push_back({"claim3", player, x_other, x_own, v, in_regime});
            ++row.counts[2];
            break;
          }
        }
      }
      if (interior_other && k % sign_stride == 0) {
        for (int j = sign_stride; j < grid_n; j += sign_stride) {
          const double x_own = own_cap * static_cast<double>(j) / grid_n;
          const double x1 = player == 0 ? x_own : x_other;
          const double x2 = player == 0 ? x_other : x_own;
          const QValue qv = q_value(g, x1, x2, player);
          ++row.sign_checks;
          if (!qv.sign_agrees) {
            row.discrepancies.push_back({player, x1, x2, qv.expanded, qv.cleared});
          }
        }
      }
    });

    for (auto& row : rows) {
      for (auto& v : row.violations) report.violations.push_back(v);
      report.claim1_violations[player] += row.counts[0];
      report.claim2_violations[player] += row.counts[1];
      report.claim3_violations[player] += row.counts[2];
      report.q_sign_checks += row.sign_checks;
      for (auto& d : row.discrepancies) {
        if (report.q_sign_discrepancies.size() < kMaxLoggedDiscrepancies) {
          report.q_sign_discrepancies.push_back(d);
        }
      }
    }

    const Lemma2Endpoints ends = lemma2_endpoints(g, player);
    report.lemma2[player] = ends;
    const std::array<std::pair<double, double>, 4> checks{{
        {0.0, ends.printed_at_zero},
        {other_cap, ends.printed_at_full},
        {0.0, ends.expanded_at_zero},
        {other_cap, ends.expanded_at_full},
    }};
    for (const auto& [x_other, value] : checks) {
      if (!(value < 0.0)) {
        report.violations.push_back({"lemma2", player, x_other, own_cap, value, in_regime});
        ++report.lemma2_violations[player];
      }
    }
  }

  // No simultaneous interior roots of Q_1 and Q_2.
  Lemma1Check& l1 = report.lemma1;
  const double a12 = g.alpha1 * g.alpha2;
  l1.ell = g.ell();
  l1.threshold = (4.0 - a12) / (2.0 - a12);
  l1.qbar_own = qbar_player0(g, g.m2);
  l1.qbar_other = qbar_player0(g.mirrored(), g.m1);
  l1.qbar_sum = l1.qbar_own + l1.qbar_other;
  const double s = g.m1 + g.m2;
  l1.qbar_sum_closed = (4.0 - 2.0 * l1.ell - a12 + l1.ell * a12) * s * s -
                       2.0 * a12 * g.m1 * g.m2;
  l1.contradiction_holds = l1.ell >= l1.threshold;

  const auto nodes = static_cast<std::size_t>(grid_n) + 1;
  std::vector<double> q1(nodes * nodes);
  std::vector<double> q2(nodes * nodes);
  for_each_index(exec, static_cast<std::int64_t>(nodes), [&](std::int64_t jj) {
    const auto j = static_cast<std::size_t>(jj);
    const double x2 = g.m2 * static_cast<double>(j) / grid_n;
    const QPolynomial p1 = q_player0(g, x2);
    for (std::size_t i = 0; i < nodes; ++i) {
      const double x1 = g.m1 * static_cast<double>(i) / grid_n;
      q1[j * nodes + i] = p1(x1);
      q2[j * nodes + i] = q_player0(g.mirrored(), x1)(x2);
    }
  });
  std::vector<std::size_t> cell_counts(nodes - 1, 0);
  for_each_index(exec, static_cast<std::int64_t>(nodes - 1), [&](std::int64_t jj) {
    const auto j = static_cast<std::size_t>(jj);
    for (std::size_t i = 0; i + 1 < nodes; ++i) {
      const std::array<std::size_t, 4> idx{j * nodes + i, j * nodes + i + 1,
                                           (j + 1) * nodes + i,
                                           (j + 1) * nodes + i + 1};
      auto changes_sign = [&](const std::vector<double>& q) {
        double lo = q[idx[0]];
        double hi = q[idx[0]];
        for (auto k : idx) {
          lo = std::min(lo, q[k]);
          hi = std::max(hi, q[k]);
        }
        return lo < 0.0 && hi > 0.0;
      };
      if (changes_sign(q1) && changes_sign(q2)) ++cell_counts[j];
    }
  });
  for (auto c : cell_counts) l1.simultaneous_root_cells += c;

  report.table1 = table1_diagnostic(g);
  report.notes.push_back(
      "lemma1: threshold compares ell = m/(m1+m2); the original derivation "
      "writes this symbol as alpha");
  report.notes.push_back(
      "claim1: constant term of c uses m1^2*m2^2 (the tabulated m1*m2^2 is "
      "dimensionally inconsistent); c_as_printed is kept for comparison");
  if (!in_regime) {
    report.notes.push_back(
        "out of regime: alpha_i > 1/2 or m >= 2(m1+m2) does not hold; "
        "violations are reported but not counted as failures");
  }
  return report;
}

CornerReport corner_case_check(const TwoPoolGame& g) {
  CornerReport out;
  out.honest_baseline = {g.m1 / g.m, g.m2 / g.m};
  const std::array<std::array<double, 2>, 3> profiles{
      {{0.0, g.m2}, {g.m1, 0.0}, {g.m1, g.m2}}};
  const std::array<std::size_t, 3> deviators{1, 0, 0};
  bool ok = true;
  for (std::size_t c = 0; c < 3; ++c) {
    CornerProfile& cp = out.corners[c];
    cp.x1 = profiles[c][0];
    cp.x2 = profiles[c][1];
    cp.deviator = deviators[c];
    if (!(cp.x1 + cp.x2 < g.m)) {
      ok = false;
      continue;
    }
    cp.utility = {closed_form_utility(g, cp.x1, cp.x2, 0),
                  closed_form_utility(g, cp.x1, cp.x2, 1)};
    const double d1 = cp.deviator == 0 ? 0.0 : cp.x1;
    const double d2 = cp.deviator == 1 ? 0.0 : cp.x2;
    cp.deviation_gain = closed_form_utility(g, d1, d2, cp.deviator) -
                        cp.utility[cp.deviator];
    cp.certified_non_equilibrium = cp.deviation_gain > 0.0;
    ok = ok && cp.certified_non_equilibrium;
  }
  const double s = g.m1 + g.m2;
  // Player 0 attacks fully at (m1, 0); player 1 at (0, m2).
  out.attacker_utility_printed[0] =
      (1.0 - g.alpha2) * g.m1 * g.m2 / ((g.m - g.m1) * s);
  out.attacker_utility_printed[1] =
      (1.0 - g.alpha1) * g.m1 * g.m2 / ((g.m - g.m2) * s);
  out.attacker_utility_model[0] = out.corners[1].utility[0];
  out.attacker_utility_model[1] = out.corners[0].utility[1];
  for (std::size_t p = 0; p < 2; ++p) {
    ok = ok && out.attacker_utility_printed[p] < out.honest_baseline[p] &&
         out.attacker_utility_model[p] < out.honest_baseline[p];
  }
  ok = ok && out.corners[2].utility[0] == 0.0 && out.corners[2].utility[1] == 0.0;
  out.all_certified = ok;
  return out;
}

double max_closed_form_gap(const TwoPoolGame& g, std::int64_t profiles,
                           std::uint64_t seed, Execution exec) {
  const ValidatedGame game = g.validated();
  constexpr std::int64_t kChunk = 1024;
  const std::int64_t chunks = (profiles + kChunk - 1) / kChunk;
  std::vector<double> chunk_max(static_cast<std::size_t>(chunks), 0.0);
  for_each_index(exec, chunks, [&](std::int64_t c) {
    SplitMix64 rng = make_stream(seed, static_cast<std::uint64_t>(c));
    const std::int64_t end = std::min(profiles, (c + 1) * kChunk);
    double worst = 0.0;
    for (std::int64_t k = c * kChunk; k < end; ++k) {
      const double x1 = rng.uniform(0.0, g.m1);
      const double x2 = rng.uniform(0.0, g.m2);
      if (!(x1 + x2 < g.m)) continue;
      const auto closed = closed_form_rewards(g, x1, x2);
      const auto solved = solve_rewards(game, StrategyProfile::two_pool(x1, x2));
      for (std::size_t p = 0; p < 2; ++p) {
        worst = std::max(worst, std::abs(closed[p] - solved.total[p]));
      }
    }
    chunk_max[static_cast<std::size_t>(c)] = worst;
  });
  double worst = 0.0;
  for (double v : chunk_max) worst = std::max(worst, v);
  return worst;
}

}  // namespace dpbw
