// Copyright 2026 The dpbw Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "dpbw/cli/report.hpp"
#include "dpbw/game.hpp"

namespace dpbw::cli {

// ParseError or ValidationError tied to a field path such as
// "pools[0].alpha". The path is empty for whole-document problems.
class InputError : public Error {
 public:
  InputError(ErrorCode code, std::string path, const std::string& what)
      : Error(code, path.empty() ? what : path + ": " + what),
        path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Scenario document:
//   {"total_power": 18.0,
//    "pools": [{"name": "A", "power": 2.0, "alpha": 0.8}, ...],
//    "strategy": {"infiltration": [[0.0, 1.0], [0.0, 0.0]]},   optional
//    "label": "...", "metadata": {...}}                         optional
struct ScenarioFile {
  GameConfig game;
  std::optional<StrategyProfile> strategy;
  std::optional<std::string> label;
  Json metadata;  // null when absent

  bool operator==(const ScenarioFile& other) const;
};

ScenarioFile parse_scenario(const std::string& text);
ScenarioFile load_scenario(const std::filesystem::path& path);

// Strategy document {"infiltration": [[...], ...]} with the full n x n
// matrix, validated against `game`.
StrategyProfile parse_strategy(const std::string& text,
                               const ValidatedGame& game);
StrategyProfile load_strategy(const std::filesystem::path& path,
                              const ValidatedGame& game);

Json scenario_to_json(const ScenarioFile& s);
Json strategy_to_json(const StrategyProfile& x);

// Runs validate_game and rethrows failures as InputError with a field path.
ValidatedGame validate_scenario_game(const GameConfig& cfg);

}  // namespace dpbw::cli
