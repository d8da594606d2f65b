// Copyright 2026 The dpbw Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "dpbw/cli/report.hpp"
#include "dpbw/equilibrium.hpp"
#include "dpbw/sim.hpp"
#include "dpbw/two_pool.hpp"

namespace dpbw::cli {

Json profile_json(const StrategyProfile& x);
Json rewards_json(const ValidatedGame& game, const RewardBreakdown& rb);
Json best_response_json(const BestResponseResult& br);
Json equilibrium_report_json(const EquilibriumReport& r);
Json theorem1_json(const Theorem1Report& r);
Json claim_report_json(const ClaimReport& r);
Json table1_json(const std::vector<Table1Entry>& entries);
Json corner_report_json(const CornerReport& r);
Json theorem2_json(const Theorem2Report& r);
Json sim_result_json(const SimResult& r);
Json compare_json(const CompareReport& r);

}  // namespace dpbw::cli
