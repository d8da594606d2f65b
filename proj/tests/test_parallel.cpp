// Copyright 2026 The dpbw Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "dpbw/equilibrium.hpp"
#include "dpbw/instances.hpp"
#include "dpbw/parallel.hpp"
#include "dpbw/sim.hpp"
#include "dpbw/two_pool.hpp"
#include "support.hpp"

using namespace dpbw;
using namespace dpbw::testing;

namespace {

void check_same(const EquilibriumReport& a, const EquilibriumReport& b) {
  REQUIRE(a.candidates.size() == b.candidates.size());
  for (std::size_t k = 0; k < a.candidates.size(); ++k) {
    CHECK(a.candidates[k].profile.matrix() == b.candidates[k].profile.matrix());
    CHECK(a.candidates[k].regret == b.candidates[k].regret);
    CHECK(a.candidates[k].certified == b.candidates[k].certified);
  }
  CHECK(a.poa == b.poa);
  CHECK(a.pos == b.pos);
  CHECK(a.notes == b.notes);
}

}  // namespace

TEST_CASE("for_each_index visits every index once and rethrows") {
  std::vector<int> hits(1000, 0);
  for_each_index(Execution::kParallel, 1000, [&](std::int64_t i) { hits[i] += 1; });
  CHECK(std::count(hits.begin(), hits.end(), 1) == 1000);
  CHECK_THROWS_AS(for_each_index(Execution::kParallel, 100,
                                 [](std::int64_t i) {
                                   if (i == 57) throw std::runtime_error("boom");
                                 }),
                  std::runtime_error);
}

TEST_CASE("random streams depend only on their coordinates") {
  SplitMix64 a = make_stream(7, 3, 4);
  SplitMix64 b = make_stream(7, 3, 4);
  for (int k = 0; k < 100; ++k) CHECK(a() == b());
  CHECK(derive_seed(7, 3, 4) != derive_seed(7, 4, 3));
  CHECK(derive_seed(7, 3) != derive_seed(8, 3));
  SplitMix64 u = make_stream(1, 2);
  for (int k = 0; k < 10000; ++k) {
    const double v = u.uniform();
    CHECK((v >= 0.0 && v < 1.0));
  }
}

TEST_CASE("serial and parallel kernels agree bitwise") {
  const TwoPoolGame g = gstar();
  check_same(enumerate_equilibria_2pool(g, 64, kCertifyTolerance, Execution::kSerial),
             enumerate_equilibria_2pool(g, 64, kCertifyTolerance, Execution::kParallel));
  check_same(enumerate_equilibria_2pool(gstar_eyal(), 64, kCertifyTolerance, Execution::kSerial),
             enumerate_equilibria_2pool(gstar_eyal(), 64, kCertifyTolerance,
                                        Execution::kParallel));

  SplitMix64 rng = make_stream(5, 0);
  const ValidatedGame five = validate_game(random_game(rng, 5, AlphaRule::kAtBound));
  const Theorem1Report s = verify_theorem1(five, 2000, 3, Execution::kSerial);
  const Theorem1Report p = verify_theorem1(five, 2000, 3, Execution::kParallel);
  CHECK(s.evaluated == p.evaluated);
  CHECK(s.max_reward_excess == p.max_reward_excess);
  CHECK(s.max_per_pool_term == p.max_per_pool_term);
  CHECK(s.violations.size() == p.violations.size());

  const ClaimReport cs = claim_suite(g, 200, Execution::kSerial);
  const ClaimReport cp = claim_suite(g, 200, Execution::kParallel);
  CHECK(cs.violations.size() == cp.violations.size());
  CHECK(cs.claim1_violations == cp.claim1_violations);
  CHECK(cs.claim2_violations == cp.claim2_violations);
  CHECK(cs.claim3_violations == cp.claim3_violations);
  CHECK(cs.q_sign_checks == cp.q_sign_checks);
  CHECK(cs.q_sign_discrepancies.size() == cp.q_sign_discrepancies.size());
  CHECK(cs.lemma1.simultaneous_root_cells == cp.lemma1.simultaneous_root_cells);

  CHECK(max_closed_form_gap(g, 5000, 11, Execution::kSerial) ==
        max_closed_form_gap(g, 5000, 11, Execution::kParallel));

  SimConfig cfg;
  cfg.rounds_per_epoch = 500;
  cfg.epochs = 8;
  cfg.burn_in_epochs = 2;
  const auto x = x12(1.0);
  const auto rs = simulate_replicas(gstar_game(), x, cfg, 4, Execution::kSerial);
  const auto rp = simulate_replicas(gstar_game(), x, cfg, 4, Execution::kParallel);
  REQUIRE(rs.size() == 4);
  CHECK(rs == rp);
  CHECK_FALSE(rs[0] == rs[1]);

  const EquilibriumReport es = explore_equilibria(five, 4, 2, kCertifyTolerance, Execution::kSerial);
  const EquilibriumReport ep = explore_equilibria(five, 4, 2, kCertifyTolerance, Execution::kParallel);
  check_same(es, ep);
}
