// Copyright 2026 The dpbw Authors
// SPDX-License-Identifier: Apache-2.0

#include "dpbw/cli/sweep.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "dpbw/cli/report.hpp"
#include "dpbw/two_pool.hpp"

namespace dpbw::cli {
namespace {

double parse_double(const std::string& s, const std::string& range) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::kInvalidRange,
                "range \"" + range + "\" must look like start:stop:step");
  }
  return v;
}

// Returns the 0-based pool index of "<prefix>_<i>", or -1 for plain prefix.
long pool_suffix(const std::string& param, const std::string& prefix) {
  if (param == prefix) return -1;
  const std::string head = prefix + "_";
  if (param.rfind(head, 0) != 0) return -2;
  long idx = 0;
  const char* first = param.data() + head.size();
  const char* last = param.data() + param.size();
  auto [ptr, ec] = std::from_chars(first, last, idx);
  if (ec != std::errc() || ptr != last || first == last || idx < 1) return -2;
  return idx - 1;
}

void apply(GameConfig& cfg, const std::string& param, double v) {
  const auto n = static_cast<long>(cfg.pool_powers.size());
  if (long i = pool_suffix(param, "alpha"); i >= -1) {
    if (i >= n) throw Error(ErrorCode::kInvalidRange, "no pool for " + param);
    if (i == -1) {
      for (auto& a : cfg.alphas) a = v;
    } else {
      cfg.alphas[static_cast<std::size_t>(i)] = v;
    }
    return;
  }
  if (long i = pool_suffix(param, "m"); i >= -1) {
    if (i >= n) throw Error(ErrorCode::kInvalidRange, "no pool for " + param);
    if (i == -1) {
      cfg.total_power = v;
    } else {
      cfg.pool_powers[static_cast<std::size_t>(i)] = v;
    }
    return;
  }
  throw Error(ErrorCode::kInvalidRange,
              "unknown sweep parameter \"" + param +
                  "\" (expected alpha, alpha_<i>, m or m_<i>)");
}

SweepRow evaluate(const GameConfig& cfg, double value, const SweepOptions& opts) {
  SweepRow row;
  row.param_value = value;
  try {
    const ValidatedGame game = validate_game(cfg);
    row.theorem1_bound_holds = game.theorem1_bound_holds();
    row.theorem2_precond_holds = game.theorem2_precondition();
    const EquilibriumReport report =
        game.num_pools() == 2
            ? enumerate_equilibria_2pool(TwoPoolGame::from(game), opts.grid_n,
                                         opts.eps, opts.exec)
            : explore_equilibria(game, opts.random_starts, opts.seed, opts.eps,
                                 opts.exec);
    row.n_equilibria = report.certified_count();
    row.poa = report.poa;
    row.pos = report.pos;
    const EquilibriumCandidate* best = nullptr;
    for (const auto& c : report.candidates) {
      if (c.certified && (!best || c.welfare > best->welfare)) best = &c;
    }
    if (best) {
      row.best = best->profile;
      row.regret = best->regret;
      row.welfare = best->welfare;
    } else {
      row.regret = std::numeric_limits<double>::quiet_NaN();
      row.welfare = std::numeric_limits<double>::quiet_NaN();
    }
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

SweepSpec parse_sweep_spec(const std::string& param, const std::string& range) {
  SweepSpec spec;
  spec.param = param;
  const auto c1 = range.find(':');
  const auto c2 = c1 == std::string::npos ? c1 : range.find(':', c1 + 1);
  if (c2 == std::string::npos || range.find(':', c2 + 1) != std::string::npos) {
    throw Error(ErrorCode::kInvalidRange,
                "range \"" + range + "\" must look like start:stop:step");
  }
  spec.start = parse_double(range.substr(0, c1), range);
  spec.stop = parse_double(range.substr(c1 + 1, c2 - c1 - 1), range);
  spec.step = parse_double(range.substr(c2 + 1), range);
  if (!(spec.step > 0.0)) {
    throw Error(ErrorCode::kInvalidRange, "range step must be positive");
  }
  if (spec.stop < spec.start) {
    throw Error(ErrorCode::kInvalidRange, "range stop lies below its start");
  }
  if ((spec.stop - spec.start) / spec.step > 1e6) {
    throw Error(ErrorCode::kInvalidRange, "range has more than a million points");
  }
  if (pool_suffix(param, "alpha") < -1 && pool_suffix(param, "m") < -1) {
    throw Error(ErrorCode::kInvalidRange,
                "unknown sweep parameter \"" + param +
                    "\" (expected alpha, alpha_<i>, m or m_<i>)");
  }
  return spec;
}

std::vector<double> sweep_values(const SweepSpec& spec) {
  std::vector<double> out;
  for (long k = 0;; ++k) {
    const double v = spec.start + static_cast<double>(k) * spec.step;
    if (v > spec.stop + 1e-9 * spec.step) break;
    out.push_back(v);
  }
  return out;
}

std::vector<SweepRow> sweep(const GameConfig& base, const SweepSpec& spec,
                            const SweepOptions& opts) {
  std::vector<SweepRow> rows;
  for (double v : sweep_values(spec)) {
    GameConfig cfg = base;
    apply(cfg, spec.param, v);
    rows.push_back(evaluate(cfg, v, opts));
  }
  return rows;
}

std::vector<std::string> sweep_csv_header(std::size_t n) {
  std::vector<std::string> h{"param_value", "n_equilibria"};
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      h.push_back("x_" + std::to_string(i) + "_" + std::to_string(j));
    }
  }
  for (const char* c : {"regret", "welfare", "poa", "pos", "theorem1_bound_holds",
                        "theorem2_precond_holds", "error"}) {
    h.emplace_back(c);
  }
  return h;
}

std::string sweep_csv(const std::vector<SweepRow>& rows, std::size_t n) {
  std::vector<Json> header;
  for (const auto& h : sweep_csv_header(n)) header.emplace_back(h);
  std::string out = csv_line(header);
  for (const auto& r : rows) {
    std::vector<Json> f{r.param_value};
    if (!r.error.empty()) {
      f.resize(header.size() - 1);
      f.emplace_back(r.error);
      out += csv_line(f);
      continue;
    }
    f.emplace_back(r.n_equilibria);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        f.push_back(r.best ? Json((*r.best)(i, j)) : Json());
      }
    }
    f.emplace_back(r.regret);
    f.emplace_back(r.welfare);
    f.emplace_back(r.poa);
    f.emplace_back(r.pos);
    f.emplace_back(r.theorem1_bound_holds);
    f.push_back(r.theorem2_precond_holds ? Json(*r.theorem2_precond_holds) : Json());
    f.emplace_back("");
    out += csv_line(f);
  }
  return out;
}

}  // namespace dpbw::cli
