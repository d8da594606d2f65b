// Copyright 2026 The dpbw Authors
// SPDX-License-Identifier: Apache-2.0

#include "dpbw/cli/serialize.hpp"

namespace dpbw::cli {
namespace {

Json pair_json(const std::array<std::size_t, 2>& a) { return Json{a[0], a[1]}; }

Json quadratic_json(const DeviationQuadratic& q) {
  return Json{{"player", q.player + 1},
              {"A", q.A},
              {"B", q.B},
              {"C", q.C},
              {"exact_slope", q.exact_slope},
              {"slope_sign_consistent", q.slope_sign_consistent},
              {"samples", q.samples.size()},
              {"sample_sign_mismatches", q.mismatches}};
}

}  // namespace

Json profile_json(const StrategyProfile& x) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < x.num_pools(); ++i) rows.push_back(x.row(i));
  return rows;
}

Json rewards_json(const ValidatedGame& game, const RewardBreakdown& rb) {
  Json pools = Json::array();
  for (std::size_t i = 0; i < rb.total.size(); ++i) {
    pools.push_back(Json{{"pool", game.pool_name(i)},
                         {"direct", rb.direct[i]},
                         {"infiltration", rb.infiltration[i]},
                         {"reward", rb.total[i]},
                         {"utility", rb.utility[i]},
                         {"honest_baseline", game.power(i) / game.total_power()}});
  }
  return Json{{"pools", pools}, {"solver_residual", rb.solver_residual}};
}

Json best_response_json(const BestResponseResult& br) {
  return Json{{"pool", br.player + 1},
              {"strategy", br.strategy},
              {"value", br.value},
              {"method", to_string(br.method)},
              {"iterations", br.iterations}};
}

Json equilibrium_report_json(const EquilibriumReport& r) {
  Json cands = Json::array();
  for (const auto& c : r.candidates) {
    Json j{{"profile", profile_json(c.profile)},
           {"regret", c.regret},
           {"welfare", c.welfare},
           {"certified", c.certified}};
    if (c.case_labels) {
      Json labels = Json::array();
      for (const auto& l : *c.case_labels) {
        labels.push_back(Json{{"pool", l.player + 1},
                              {"case", to_string(l.label)},
                              {"slope", l.slope}});
      }
      j["case_labels"] = labels;
    }
    cands.push_back(j);
  }
  return Json{{"candidates", cands},
              {"certified_count", r.certified_count()},
              {"poa", r.poa},
              {"pos", r.pos},
              {"optimum_welfare", r.optimum_welfare},
              {"notes", r.notes}};
}

Json theorem1_json(const Theorem1Report& r) {
  Json viol = Json::array();
  for (const auto& v : r.violations) {
    viol.push_back(Json{{"pool", v.player + 1},
                        {"check", v.check},
                        {"deviation", v.deviation},
                        {"value", v.value},
                        {"bound", v.bound}});
  }
  return Json{{"passed", r.passed()},
              {"samples_per_pool", r.samples_per_player},
              {"evaluated", r.evaluated},
              {"max_reward_excess", r.max_reward_excess},
              {"max_per_pool_term", r.max_per_pool_term},
              {"violations", viol}};
}

Json table1_json(const std::vector<Table1Entry>& entries) {
  Json rows = Json::array();
  Json discrepancies = Json::array();
  for (const auto& e : entries) {
    Json j{{"x1", e.x1}, {"x2", e.x2}, {"quadratic", quadratic_json(e.quadratic)}};
    rows.push_back(j);
    if (!e.quadratic.slope_sign_consistent || !e.quadratic.sign_consistent()) {
      discrepancies.push_back(j);
    }
  }
  return Json{{"entries", rows}, {"discrepancies", discrepancies}};
}

Json claim_report_json(const ClaimReport& r) {
  Json viol = Json::array();
  for (const auto& v : r.violations) {
    viol.push_back(Json{{"claim", v.claim},
                        {"pool", v.player + 1},
                        {"x_other", v.x_other},
                        {"x_own", v.x_own},
                        {"value", v.value},
                        {"in_regime", v.in_regime}});
  }
  Json lemma2 = Json::array();
  for (const auto& e : r.lemma2) {
    lemma2.push_back(Json{{"pool", e.player + 1},
                          {"printed_at_zero", e.printed_at_zero},
                          {"printed_at_full", e.printed_at_full},
                          {"expanded_at_zero", e.expanded_at_zero},
                          {"expanded_at_full", e.expanded_at_full}});
  }
  Json qsign = Json::array();
  for (const auto& d : r.q_sign_discrepancies) {
    qsign.push_back(Json{{"pool", d.player + 1},
                         {"x1", d.x1},
                         {"x2", d.x2},
                         {"expanded", d.expanded},
                         {"cleared", d.cleared}});
  }
  const Lemma1Check& l = r.lemma1;
  return Json{
      {"passed", r.passed()},
      {"grid_n", r.grid_n},
      {"in_regime", r.in_regime},
      {"claim1_violations", pair_json(r.claim1_violations)},
      {"claim2_violations", pair_json(r.claim2_violations)},
      {"claim3_violations", pair_json(r.claim3_violations)},
      {"lemma2_violations", pair_json(r.lemma2_violations)},
      {"violations", viol},
      {"lemma2_endpoints", lemma2},
      {"lemma1", Json{{"ell", l.ell},
                      {"threshold", l.threshold},
                      {"qbar_own", l.qbar_own},
                      {"qbar_other", l.qbar_other},
                      {"qbar_sum", l.qbar_sum},
                      {"qbar_sum_closed", l.qbar_sum_closed},
                      {"contradiction_holds", l.contradiction_holds},
                      {"simultaneous_root_cells", l.simultaneous_root_cells}}},
      {"q_sign_checks", r.q_sign_checks},
      {"q_sign_discrepancies", qsign},
      {"table1", table1_json(r.table1)},
      {"notes", r.notes}};
}

Json corner_report_json(const CornerReport& r) {
  Json corners = Json::array();
  for (const auto& c : r.corners) {
    corners.push_back(Json{{"x1", c.x1},
                           {"x2", c.x2},
                           {"utility", c.utility},
                           {"deviator", c.deviator + 1},
                           {"deviation_gain", c.deviation_gain},
                           {"certified_non_equilibrium", c.certified_non_equilibrium}});
  }
  return Json{{"passed", r.all_certified},
              {"corners", corners},
              {"attacker_utility_printed", r.attacker_utility_printed},
              {"attacker_utility_model", r.attacker_utility_model},
              {"honest_baseline", r.honest_baseline}};
}

Json theorem2_json(const Theorem2Report& r) {
  Json j{{"passed", r.passed},
         {"precondition_met", r.precondition_met},
         {"unique_zero", r.unique_zero},
         {"equilibria", equilibrium_report_json(r.equilibria)},
         {"corners", corner_report_json(r.corners)}};
  j["claims"] = r.claims ? claim_report_json(*r.claims) : Json();
  j["notes"] = r.notes;
  return j;
}

Json sim_result_json(const SimResult& r) {
  return Json{{"empirical_r", r.empirical_r},
              {"empirical_U", r.empirical_U},
              {"std_err_r", r.std_err_r},
              {"std_err_U", r.std_err_U},
              {"rounds_total", r.rounds_total},
              {"rounds_simulated", r.rounds_simulated},
              {"outside_blocks", r.outside_blocks},
              {"canonical", r.canonical}};
}

Json compare_json(const CompareReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    entries.push_back(Json{{"quantity", e.quantity},
                           {"pool", e.pool + 1},
                           {"empirical", e.empirical},
                           {"analytic", e.analytic},
                           {"std_err", e.std_err},
                           {"bound", e.bound},
                           {"passed", e.passed}});
  }
  return Json{{"passed", r.passed}, {"entries", entries}, {"failures", r.failures}};
}

}  // namespace dpbw::cli
