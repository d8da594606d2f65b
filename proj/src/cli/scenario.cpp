// Copyright 2026 The dpbw Authors
// SPDX-License-Identifier: Apache-2.0

#include "dpbw/cli/scenario.hpp"

#include <cmath>
#include <set>

namespace dpbw::cli {
namespace {

[[noreturn]] void parse_fail(const std::string& path, const std::string& what) {
  throw InputError(ErrorCode::kParseError, path, what);
}

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  throw InputError(ErrorCode::kValidationError, path, what);
}

void reject_unknown(const Json& obj, const std::set<std::string>& allowed,
                    const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) {
      parse_fail(path.empty() ? it.key() : path + "." + it.key(),
                 "unknown field \"" + it.key() + "\"");
    }
  }
}

const Json& require(const Json& obj, const std::string& key,
                    const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    parse_fail(path.empty() ? key : path + "." + key, "missing required field");
  }
  return *it;
}

double number(const Json& v, const std::string& path) {
  if (!v.is_number()) parse_fail(path, "expected a number");
  return v.get<double>();
}

std::string pool_path(std::size_t i, const char* field) {
  return "pools[" + std::to_string(i) + "]." + field;
}

Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    parse_fail("", std::string("malformed JSON: ") + e.what());
  }
}

// Matrix body shared by scenario and strategy documents.
StrategyProfile parse_matrix(const Json& m, const std::string& path) {
  if (!m.is_array()) parse_fail(path, "expected an array of rows");
  const std::size_t n = m.size();
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row_path = path + "[" + std::to_string(i) + "]";
    if (!m[i].is_array() || m[i].size() != n) {
      parse_fail(row_path, "expected a row of " + std::to_string(n) + " numbers");
    }
    for (std::size_t j = 0; j < n; ++j) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          number(m[i][j], row_path + "[" + std::to_string(j) + "]");
    }
  }
  return StrategyProfile(std::move(x));
}

StrategyProfile parse_strategy_object(const Json& obj, const std::string& path) {
  if (!obj.is_object()) parse_fail(path, "expected an object");
  reject_unknown(obj, {"infiltration"}, path);
  const std::string inner = path.empty() ? "infiltration" : path + ".infiltration";
  return parse_matrix(require(obj, "infiltration", path), inner);
}

void check_strategy(const ValidatedGame& game, const StrategyProfile& x,
                    const std::string& path) {
  try {
    validate_strategy(game, x);
  } catch (const Error& e) {
    throw InputError(ErrorCode::kValidationError, path, e.what());
  }
}

}  // namespace

bool ScenarioFile::operator==(const ScenarioFile& o) const {
  return game.total_power == o.game.total_power &&
         game.pool_powers == o.game.pool_powers && game.alphas == o.game.alphas &&
         game.pool_names == o.game.pool_names && strategy == o.strategy &&
         label == o.label && metadata == o.metadata;
}

ValidatedGame validate_scenario_game(const GameConfig& cfg) {
  try {
    return validate_game(cfg);
  } catch (const Error& e) {
    std::string path;
    switch (e.code()) {
      case ErrorCode::kTooFewPools:
      case ErrorCode::kDimensionMismatch:
      case ErrorCode::kPowerBudgetExceeded:
        path = "pools";
        break;
      case ErrorCode::kNonPositivePower:
        path = "total_power";
        for (std::size_t i = 0; i < cfg.pool_powers.size(); ++i) {
          const double mi = cfg.pool_powers[i];
          if (std::isfinite(cfg.total_power) && cfg.total_power > 0.0 &&
              !(std::isfinite(mi) && mi > 0.0)) {
            path = pool_path(i, "power");
            break;
          }
        }
        break;
      case ErrorCode::kAlphaOutOfRange:
        for (std::size_t i = 0; i < cfg.alphas.size(); ++i) {
          if (!(cfg.alphas[i] >= 0.0 && cfg.alphas[i] <= 1.0)) {
            path = pool_path(i, "alpha");
            break;
          }
        }
        break;
      default:
        break;
    }
    throw InputError(ErrorCode::kValidationError, path, e.what());
  }
}

ScenarioFile parse_scenario(const std::string& text) {
  const Json doc = parse_document(text);
  if (!doc.is_object()) parse_fail("", "a scenario must be a JSON object");
  reject_unknown(doc, {"total_power", "pools", "strategy", "label", "metadata"}, "");

  ScenarioFile s;
  s.game.total_power = number(require(doc, "total_power", ""), "total_power");
  const Json& pools = require(doc, "pools", "");
  if (!pools.is_array()) parse_fail("pools", "expected an array of pools");
  bool any_name = false;
  for (std::size_t i = 0; i < pools.size(); ++i) {
    const std::string path = "pools[" + std::to_string(i) + "]";
    const Json& p = pools[i];
    if (!p.is_object()) parse_fail(path, "expected an object");
    reject_unknown(p, {"name", "power", "alpha"}, path);
    s.game.pool_powers.push_back(number(require(p, "power", path), path + ".power"));
    s.game.alphas.push_back(number(require(p, "alpha", path), path + ".alpha"));
    std::string name;
    if (auto it = p.find("name"); it != p.end()) {
      if (!it->is_string()) parse_fail(path + ".name", "expected a string");
      name = it->get<std::string>();
      any_name = true;
    }
    s.game.pool_names.push_back(name);
  }
  if (!any_name) s.game.pool_names.clear();
  if (auto it = doc.find("label"); it != doc.end()) {
    if (!it->is_string()) parse_fail("label", "expected a string");
    s.label = it->get<std::string>();
  }
  if (auto it = doc.find("metadata"); it != doc.end()) {
    if (!it->is_object()) parse_fail("metadata", "expected an object");
    s.metadata = *it;
  }

  const ValidatedGame game = validate_scenario_game(s.game);
  if (auto it = doc.find("strategy"); it != doc.end()) {
    s.strategy = parse_strategy_object(*it, "strategy");
    check_strategy(game, *s.strategy, "strategy.infiltration");
  }
  return s;
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_file(path));
}

StrategyProfile parse_strategy(const std::string& text, const ValidatedGame& game) {
  const StrategyProfile x = parse_strategy_object(parse_document(text), "");
  check_strategy(game, x, "infiltration");
  return x;
}

StrategyProfile load_strategy(const std::filesystem::path& path,
                              const ValidatedGame& game) {
  return parse_strategy(read_file(path), game);
}

Json strategy_to_json(const StrategyProfile& x) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < x.num_pools(); ++i) rows.push_back(x.row(i));
  return Json{{"infiltration", rows}};
}

Json scenario_to_json(const ScenarioFile& s) {
  Json doc;
  doc["total_power"] = s.game.total_power;
  Json pools = Json::array();
  for (std::size_t i = 0; i < s.game.pool_powers.size(); ++i) {
    Json p;
    if (i < s.game.pool_names.size()) p["name"] = s.game.pool_names[i];
    p["power"] = s.game.pool_powers[i];
    p["alpha"] = s.game.alphas[i];
    pools.push_back(p);
  }
  doc["pools"] = pools;
  if (s.strategy) doc["strategy"] = strategy_to_json(*s.strategy);
  if (s.label) doc["label"] = *s.label;
  if (!s.metadata.is_null()) doc["metadata"] = s.metadata;
  return doc;
}

}  // namespace dpbw::cli
