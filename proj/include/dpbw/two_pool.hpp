// Copyright 2026 The dpbw Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dpbw/game.hpp"
#include "dpbw/parallel.hpp"

namespace dpbw {

// Two-pool game. Player 0 holds m1 and infiltrates with x1, player 1 holds m2
// and infiltrates with x2.
struct TwoPoolGame {
  double m = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;

  // m = ell * (m1 + m2)
  double ell() const { return m / (m1 + m2); }
  double power(std::size_t player) const { return player == 0 ? m1 : m2; }
  double alpha(std::size_t player) const { return player == 0 ? alpha1 : alpha2; }

  // alpha1 <= 1 - m2/m, alpha2 <= 1 - m1/m and m > 3 (m1 + m2).
  bool theorem2_precondition() const;

  // Same game with the players' roles swapped.
  TwoPoolGame mirrored() const { return {m, m2, m1, alpha2, alpha1}; }

  GameConfig to_config() const;
  ValidatedGame validated() const;
  static TwoPoolGame from(const ValidatedGame& game);
};

// Builds a TwoPoolGame after running the game-core validation on it.
TwoPoolGame make_two_pool(double m, double m1, double m2, double alpha1,
                          double alpha2);

// Closed-form rewards (r1, r2). Requires 0 <= xi <= mi and x1 + x2 < m.
std::array<double, 2> closed_form_rewards(const TwoPoolGame& g, double x1,
                                          double x2);

// Utility of `player` at (x1, x2) from the closed-form reward.
double closed_form_utility(const TwoPoolGame& g, double x1, double x2,
                           std::size_t player);

// d r_player / d x_player at (x1, x2), exact derivative of the closed form
// by forward-mode differentiation.
double reward_slope(const TwoPoolGame& g, double x1, double x2,
                    std::size_t player);

// f_player(delta): reward change when `player` moves its own infiltration
// by delta with the opponent fixed.
double deviation_gain_exact(const TwoPoolGame& g, double x1, double x2,
                            std::size_t player, double delta);

struct SignSample {
  double delta = 0.0;
  double quadratic = 0.0;  // A delta^2 + B delta + C
  double exact = 0.0;      // deviation_gain_exact
  bool consistent = true;
};

// Coefficients of the printed deviation quadratic, kept as a diagnostic.
struct DeviationQuadratic {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  std::size_t player = 0;
  double exact_slope = 0.0;  // reward_slope at the profile
  // sign(B) against sign(exact_slope); the first-order term alone.
  bool slope_sign_consistent = true;
  std::vector<SignSample> samples;
  std::size_t mismatches = 0;

  bool sign_consistent() const { return mismatches == 0; }
};

DeviationQuadratic deviation_quadratic(const TwoPoolGame& g, double x1,
                                       double x2, std::size_t player,
                                       int sample_count = 16);

// Q_player(x) = a x^2 + b x + c in the player's own infiltration x, with
// coefficients depending only on the opponent's infiltration.
struct QPolynomial {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  // The constant term as typeset in the published coefficient table, whose
  // m1*m2^2 monomial is dimensionally inconsistent (m1^2*m2^2 is correct).
  double c_as_printed = 0.0;
  std::size_t player = 0;
  double x_other = 0.0;

  double operator()(double x) const { return (a * x + b) * x + c; }
};

QPolynomial q_coefficients(const TwoPoolGame& g, std::size_t player,
                           double x_other);

struct QValue {
  double expanded = 0.0;         // a x^2 + b x + c
  double cleared = 0.0;          // printed B times the clearing factor
  double clearing_factor = 0.0;  // (m - x1 - x2) D / (m_own + x_other)
  // Same factor with the prose's (m1 + m2)(m2 + m1) in place of D's product.
  double clearing_factor_as_printed = 0.0;
  bool sign_agrees = true;
};

QValue q_value(const TwoPoolGame& g, double x1, double x2, std::size_t player);

enum class Case { kCase1, kCase2, kCase3, kNone };

std::string to_string(Case c);

struct CaseLabel {
  Case label = Case::kNone;
  std::size_t player = 0;
  // One-sided (boundary) or central (interior) difference quotient of the
  // deviation gain, per unit of the player's power share.
  double slope = 0.0;
};

inline constexpr double kCaseTolerance = 1e-8;

CaseLabel classify_case(const TwoPoolGame& g, double x1, double x2,
                        std::size_t player, double tol = kCaseTolerance);

struct Lemma2Endpoints {
  std::size_t player = 0;
  double printed_at_zero = 0.0;   // printed Q(m_own, 0)
  double printed_at_full = 0.0;   // printed Q(m_own, m_other)
  double expanded_at_zero = 0.0;  // a m^2 + b m + c at x_other = 0
  double expanded_at_full = 0.0;  // same at x_other = m_other
};

Lemma2Endpoints lemma2_endpoints(const TwoPoolGame& g, std::size_t player);

struct Lemma1Check {
  double ell = 0.0;
  double threshold = 0.0;          // (4 - a1 a2) / (2 - a1 a2)
  double qbar_own = 0.0;           // Qbar_1(m2)
  double qbar_other = 0.0;         // Qbar_2(m1)
  double qbar_sum = 0.0;
  double qbar_sum_closed = 0.0;    // same sum through the ell expression
  bool contradiction_holds = false;  // ell >= threshold, hence sum <= 0
  std::size_t simultaneous_root_cells = 0;
};

struct ClaimViolation {
  std::string claim;
  std::size_t player = 0;
  double x_other = 0.0;
  double x_own = 0.0;
  double value = 0.0;
  bool in_regime = true;
};

struct SignDiscrepancy {
  std::size_t player = 0;
  double x1 = 0.0;
  double x2 = 0.0;
  double expanded = 0.0;
  double cleared = 0.0;
};

struct Table1Entry {
  double x1 = 0.0;
  double x2 = 0.0;
  DeviationQuadratic quadratic;
};

struct ClaimReport {
  int grid_n = 0;
  bool in_regime = true;  // alpha_i > 1/2 and m >= 2 (m1 + m2)
  std::vector<ClaimViolation> violations;
  std::array<std::size_t, 2> claim1_violations{};
  std::array<std::size_t, 2> claim2_violations{};
  std::array<std::size_t, 2> claim3_violations{};
  std::array<std::size_t, 2> lemma2_violations{};
  std::array<Lemma2Endpoints, 2> lemma2{};
  Lemma1Check lemma1;
  // Diagnostics, never counted as failures.
  std::size_t q_sign_checks = 0;
  std::vector<SignDiscrepancy> q_sign_discrepancies;
  std::vector<Table1Entry> table1;
  std::vector<std::string> notes;

  bool passed() const;
};

ClaimReport claim_suite(const TwoPoolGame& g, int grid_n,
                        Execution exec = Execution::kParallel);

// Sign diagnostic for B at a fixed set of profiles: the four corners and
// the box centre.
std::vector<Table1Entry> table1_diagnostic(const TwoPoolGame& g);

struct CornerProfile {
  double x1 = 0.0;
  double x2 = 0.0;
  std::array<double, 2> utility{};
  std::size_t deviator = 0;        // player that drops to 0
  double deviation_gain = 0.0;     // utility gain of that move
  bool certified_non_equilibrium = false;
};

struct CornerReport {
  // (0, m2), (m1, 0), (m1, m2), in that order.
  std::array<CornerProfile, 3> corners{};
  // Attacker's utility at the one-sided corners: printed expression with a
  // (1 - alpha) factor, and the model value (alpha factor).
  std::array<double, 2> attacker_utility_printed{};
  std::array<double, 2> attacker_utility_model{};
  std::array<double, 2> honest_baseline{};  // m_i / m
  bool all_certified = false;
};

CornerReport corner_case_check(const TwoPoolGame& g);

// Largest |closed form - linear solve| over `profiles` random in-domain
// profiles drawn from stream `seed`.
double max_closed_form_gap(const TwoPoolGame& g, std::int64_t profiles,
                           std::uint64_t seed,
                           Execution exec = Execution::kParallel);

}  // namespace dpbw
