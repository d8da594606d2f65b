// Copyright 2026 The dpbw Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dpbw/cli/app.hpp"
#include "dpbw/cli/report.hpp"
#include "dpbw/cli/scenario.hpp"
#include "dpbw/cli/sweep.hpp"
#include "dpbw/instances.hpp"

using namespace dpbw;
using namespace dpbw::cli;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = DPBW_SOURCE_DIR;

const char* kGstar = R"({
  "total_power": 18.0,
  "pools": [
    {"name": "A", "power": 2.0, "alpha": 0.8},
    {"name": "B", "power": 3.0, "alpha": 0.8}
  ]
})";

struct Workspace {
  fs::path dir;
  Workspace() {
    static int counter = 0;
    dir = fs::temp_directory_path() /
          ("dpbw_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "dpbw");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

template <typename F>
InputError input_error(F&& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e;
  }
  FAIL("expected an input error");
  return InputError(ErrorCode::kParseError, "", "");
}

}  // namespace

TEST_CASE("scenario parsing") {
  const ScenarioFile s = parse_scenario(kGstar);
  CHECK(s.game.total_power == 18.0);
  CHECK(s.game.pool_powers == std::vector<double>{2.0, 3.0});
  CHECK(s.game.alphas == std::vector<double>{0.8, 0.8});
  CHECK(s.game.pool_names == std::vector<std::string>{"A", "B"});
  CHECK_FALSE(s.strategy.has_value());
  CHECK(load_scenario(kSource / "scenarios" / "gstar.json").game.total_power == 18.0);
}

TEST_CASE("scenario errors carry the field path") {
  InputError e = input_error([] {
    parse_scenario(R"({"total_power": 18, "pools": [{"power": 2, "alpha": 1.2},
                                                    {"power": 3, "alpha": 0.8}]})");
  });
  CHECK(e.code() == ErrorCode::kValidationError);
  CHECK(e.path() == "pools[0].alpha");

  e = input_error([] {
    parse_scenario(R"({"total_power": 18, "fee": 0.01, "pools": []})");
  });
  CHECK(e.code() == ErrorCode::kParseError);
  CHECK(std::string(e.what()).find("fee") != std::string::npos);

  e = input_error([] {
    parse_scenario(R"({"total_power": 18, "pools": [{"power": 2, "alpha": 0.8, "fee": 1},
                                                    {"power": 3, "alpha": 0.8}]})");
  });
  CHECK(e.path() == "pools[0].fee");

  e = input_error([] { parse_scenario("{not json"); });
  CHECK(e.code() == ErrorCode::kParseError);

  e = input_error([] {
    parse_scenario(R"({"total_power": 18, "pools": [{"power": "2", "alpha": 0.8},
                                                    {"power": 3, "alpha": 0.8}]})");
  });
  CHECK(e.path() == "pools[0].power");

  e = input_error([] { parse_scenario(R"({"pools": []})"); });
  CHECK(e.path() == "total_power");

  e = input_error([] {
    parse_scenario(R"({"total_power": 4, "pools": [{"power": 2, "alpha": 0.8},
                                                   {"power": 3, "alpha": 0.8}]})");
  });
  CHECK(e.path() == "pools");

  e = input_error([] {
    parse_scenario(R"({"total_power": 18, "pools": [{"power": 2, "alpha": 0.8},
                                                    {"power": -3, "alpha": 0.8}]})");
  });
  CHECK(e.path() == "pools[1].power");
}

TEST_CASE("strategy documents") {
  const ValidatedGame g = validate_game(parse_scenario(kGstar).game);
  const StrategyProfile x = parse_strategy(R"({"infiltration": [[0, 1], [0, 0]]})", g);
  CHECK(x(0, 1) == 1.0);
  InputError e = input_error(
      [&] { parse_strategy(R"({"infiltration": [[0, 2.5], [0, 0]]})", g); });
  CHECK(e.code() == ErrorCode::kValidationError);
  CHECK(e.path() == "infiltration");
  e = input_error([&] { parse_strategy(R"({"infiltration": [[0, 1]]})", g); });
  CHECK(e.code() == ErrorCode::kParseError);
  e = input_error(
      [&] { parse_strategy(R"({"infiltration": [[0, 1], [0, 0]], "x": 1})", g); });
  CHECK(e.path() == "x");
}

TEST_CASE("property: scenarios survive a serialization round trip") {
  for (std::uint64_t k = 0; k < 200; ++k) {
    SplitMix64 rng = make_stream(51, k);
    const std::size_t n = 2 + k % 5;
    ScenarioFile s;
    s.game = random_game(rng, n, AlphaRule::kWide);
    if (k % 2) {
      for (std::size_t i = 0; i < n; ++i) s.game.pool_names.push_back("pool-" + std::to_string(i));
    }
    if (k % 3 == 0) s.strategy = random_profile(rng, validate_game(s.game));
    if (k % 4 == 0) s.label = "instance " + std::to_string(k);
    if (k % 5 == 0) s.metadata = Json{{"seed", k}, {"weight", rng.uniform()}};
    const ScenarioFile back = parse_scenario(to_json_text(scenario_to_json(s)));
    CHECK(back == s);
  }
}

TEST_CASE("number formatting and CSV fields") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(18.0) == "18");
  CHECK(format_number(std::nan("")) == "null");
  CHECK(csv_field(Json("a,b")) == "\"a,b\"");
  CHECK(csv_field(Json(std::nan(""))) == "nan");
  CHECK(csv_field(Json()) == "");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("sweep ranges") {
  CHECK(sweep_values(parse_sweep_spec("alpha", "0.5:0.85:0.05")).size() == 8);
  CHECK(sweep_values(parse_sweep_spec("m_2", "1:1:1")).size() == 1);
  auto code = [](const std::string& p, const std::string& r) {
    try {
      parse_sweep_spec(p, r);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kDomainError;
  };
  CHECK(code("alpha", "0.5:0.85:0") == ErrorCode::kInvalidRange);
  CHECK(code("alpha", "0.5:0.85:-0.1") == ErrorCode::kInvalidRange);
  CHECK(code("alpha", "0.9:0.5:0.1") == ErrorCode::kInvalidRange);
  CHECK(code("alpha", "0.5:0.85") == ErrorCode::kInvalidRange);
  CHECK(code("fee", "0.5:0.85:0.1") == ErrorCode::kInvalidRange);
  CHECK(code("alpha_0", "0.5:0.85:0.1") == ErrorCode::kInvalidRange);
}

TEST_CASE("sweep over the common alpha") {
  const GameConfig base = parse_scenario(kGstar).game;
  SweepOptions opts;
  opts.grid_n = 128;
  const auto rows = sweep(base, parse_sweep_spec("alpha", "0.5:1.0:0.05"), opts);
  REQUIRE(rows.size() == 11);
  for (const auto& r : rows) {
    CHECK(r.error.empty());
    if (r.param_value <= 5.0 / 6.0) {
      CHECK(r.n_equilibria == 1);
      CHECK(r.pos == 1.0);
      CHECK(r.poa == 1.0);
    }
  }
  const SweepRow& last = rows.back();
  CHECK(last.param_value == 1.0);
  REQUIRE(last.best.has_value());
  CHECK(last.best->total() > 0.0);
  CHECK(last.poa > 1.0);

  const auto bad = sweep(base, parse_sweep_spec("alpha", "0.9:1.2:0.1"), opts);
  REQUIRE(bad.size() == 4);
  CHECK(bad[0].error.empty());
  CHECK_FALSE(bad[2].error.empty());
  const std::string csv = sweep_csv(bad, 2);
  CHECK(csv.find("alpha must lie in [0, 1]") != std::string::npos);
}

TEST_CASE("sweep CSV matches the golden file") {
  Workspace ws;
  const std::string out = ws.path("sweep.csv");
  const RunResult r = run_cli({"sweep", "--config", (kSource / "scenarios" / "gstar.json").string(),
                               "--param", "alpha", "--range", "0.50:0.80:0.05", "--out", out});
  REQUIRE(r.code == 0);
  CHECK(read_file(out) == read_file(kSource / "tests" / "golden" / "sweep_alpha_gstar.csv"));
  CHECK(sweep_csv_header(2) ==
        std::vector<std::string>{"param_value", "n_equilibria", "x_1_1", "x_1_2", "x_2_1",
                                 "x_2_2", "regret", "welfare", "poa", "pos",
                                 "theorem1_bound_holds", "theorem2_precond_holds", "error"});
}

TEST_CASE("run: exit codes") {
  Workspace ws;
  const std::string gstar = ws.write("gstar.json", kGstar);
  const std::string eyal = (kSource / "scenarios" / "eyal.json").string();
  const std::string bad = ws.write("bad.json", R"({"infiltration": [[0, 2.5], [0, 0]]})");

  RunResult r = run_cli({"verify", "theorem2", "--config", gstar});
  CHECK(r.code == 0);
  CHECK(r.out.find("unique NE (0,0)") != std::string::npos);

  r = run_cli({"equilibria", "--config", eyal, "--out", ws.path("eq.json")});
  CHECK(r.code == 0);
  const Json report = Json::parse(read_file(ws.path("eq.json")));
  const Json& cand = report["results"]["candidates"][0];
  CHECK(cand["certified"].get<bool>());
  CHECK(cand["profile"][0][1].get<double>() > 0.0);
  CHECK(cand["profile"][1][0].get<double>() > 0.0);

  CHECK(run_cli({"rewards", "--config", gstar, "--strategy", bad}).code == 2);
  CHECK(run_cli({"rewards", "--config", ws.path("missing.json")}).code == 2);
  CHECK(run_cli({"bogus"}).code == 2);
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"verify", "lemma9", "--config", gstar}).code == 2);
  CHECK(run_cli({"best-response", "--config", gstar, "--pool", "3"}).code == 2);
  CHECK(run_cli({"sweep", "--config", gstar, "--param", "alpha", "--range", "0.5:0.8:0"}).code == 2);
  CHECK(run_cli({"simulate", "--config", gstar, "--rounds", "1001", "--epochs", "10"}).code == 2);

  const std::string high = ws.write("high.json", R"({"total_power": 18,
      "pools": [{"power": 2, "alpha": 0.99}, {"power": 3, "alpha": 0.8}]})");
  CHECK(run_cli({"verify", "theorem1", "--config", high}).code == 2);
  CHECK(run_cli({"verify", "theorem1", "--config", gstar, "--samples", "500"}).code == 0);

  const std::string wide = ws.write("wide.json", R"({"total_power": 12.5,
      "pools": [{"power": 2, "alpha": 0.8}, {"power": 3, "alpha": 0.8}]})");
  CHECK(run_cli({"verify", "theorem2", "--config", wide}).code == 2);
  r = run_cli({"verify", "theorem2", "--config", wide, "--exploratory", "--grid", "64"});
  CHECK(r.code == 0);
  CHECK(r.out.find("preconditions unmet") != std::string::npos);

  // The classic game is outside the no-attack bound, so the check fails.
  CHECK(run_cli({"verify", "theorem1", "--config", eyal}).code == 2);
  CHECK(run_cli({"verify", "eyal", "--config", gstar}).code == 0);
  CHECK(run_cli({"verify", "corners", "--config", gstar}).code == 0);
  CHECK(run_cli({"verify", "claims", "--config", gstar, "--claim-grid", "200"}).code == 0);
  CHECK(run_cli({"best-response", "--config", eyal, "--pool", "1"}).code == 0);
  CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("run: reports are byte-identical across repeated runs") {
  Workspace ws;
  const std::string gstar = ws.write("gstar.json", kGstar);
  const std::string strategy = ws.write("x.json", R"({"infiltration": [[0, 1], [0, 0]]})");
  const std::vector<std::vector<std::string>> commands{
      {"verify", "theorem2", "--config", gstar, "--grid", "64", "--claim-grid", "100"},
      {"verify", "theorem1", "--config", gstar, "--samples", "300", "--seed", "9"},
      {"sweep", "--config", gstar, "--param", "alpha", "--range", "0.7:1.0:0.1", "--grid", "64"},
      {"sweep", "--config", gstar, "--param", "m", "--range", "16:20:2", "--format", "json"},
      {"simulate", "--config", gstar, "--strategy", strategy, "--rounds", "20000",
       "--epochs", "20", "--burn-in", "2", "--seed", "5"},
      {"rewards", "--config", gstar, "--strategy", strategy, "--format", "csv"}};
  for (const auto& cmd : commands) {
    std::string first;
    for (int rep = 0; rep < 2; ++rep) {
      std::vector<std::string> args = cmd;
      args.push_back("--out");
      args.push_back(ws.path("out" + std::to_string(rep)));
      CHECK(run_cli(args).code == 0);
      const std::string text = read_file(ws.path("out" + std::to_string(rep)));
      CHECK_FALSE(text.empty());
      if (rep == 0) {
        first = text;
      } else {
        CHECK(text == first);
      }
      CHECK_FALSE(fs::exists(ws.path("out" + std::to_string(rep)) + ".tmp"));
    }
  }
}

TEST_CASE("run: JSON report envelope") {
  Workspace ws;
  const std::string gstar = ws.write("gstar.json", kGstar);
  REQUIRE(run_cli({"rewards", "--config", gstar, "--out", ws.path("r.json")}).code == 0);
  const Json j = Json::parse(read_file(ws.path("r.json")));
  CHECK(j["tool"] == "dpbw");
  CHECK(j["version"] == version());
  CHECK(j["command"] == Json{"rewards", "--config", gstar});
  CHECK(j["inputs_digest"].get<std::string>().rfind("sha256:", 0) == 0);
  CHECK(j["seed"] == 1);
  CHECK(j["results"]["pools"][0]["reward"].get<double>() == 2.0 / 18.0);
}
