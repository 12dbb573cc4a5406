// Command-line front end: play single matches, run round-robin tournaments,
// summarize state visits of a trace, and validate emitted traces.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "teamup/io.hpp"
#include "teamup/rng.hpp"

namespace {

namespace fs = std::filesystem;
using namespace teamup;

void PrintMatch(const MatchResult& result) {
  std::printf("stages: %d\n", result.num_stages());
  for (int i = 0; i < result.num_players(); ++i) {
    std::printf("  %-20s mean utility %.4f\n", result.agent_names[i].c_str(),
                result.MeanUtility(i));
  }
}

void PrintTable(const TournamentTable& table) {
  std::printf("%-4s %-22s %-12s %-10s %s\n", "rank", "strategy", "avg_utility", "std_err",
              "matches");
  for (const TournamentRow& row : table.rows) {
    std::printf("%-4d %-22s %-12.4f %-10.4f %d\n", row.rank, row.strategy.c_str(),
                row.avg_utility, row.std_err, row.matches);
  }
}

int Run(int argc, char** argv) {
  CLI::App app{"Lead/follow planning agents for repeated constant-sum games"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::string trace_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> stages;
  std::optional<int> repeats;
  int threads = 1;
  int planner = 0;
  bool traces = false;
  double gamma = 0.05, rho = 0.5, delta = 0.3;
  int from_stage = 1, to_stage = -1;

  CLI::App* match = app.add_subcommand("match", "play one match and emit its trace");
  match->add_option("--config", config_path, "match config (json)")->required();
  match->add_option("--seed", seed, "master seed override");
  match->add_option("--stages", stages, "stage count override");
  match->add_option("--out", out_dir, "output directory");

  CLI::App* tournament = app.add_subcommand("tournament", "round-robin over a roster");
  tournament->add_option("--config", config_path, "tournament config (json)")->required();
  tournament->add_option("--seed", seed, "master seed override");
  tournament->add_option("--stages", stages, "stage count override");
  tournament->add_option("--repeats", repeats, "matches per triplet override");
  tournament->add_option("--threads", threads, "worker threads");
  tournament->add_flag("--traces", traces, "also emit every match trace");
  tournament->add_option("--out", out_dir, "output directory");

  CLI::App* summary = app.add_subcommand("summary", "state-visit breakdown of a trace");
  summary->add_option("--trace", trace_path, "trace file (jsonl)")->required();
  summary->add_option("--planner", planner, "designated planner seat");
  summary->add_option("--config", config_path, "game config (json), default built-in game");
  summary->add_option("--gamma", gamma, "response rate");
  summary->add_option("--rho", rho, "distance exponent");
  summary->add_option("--delta", delta, "tolerance");
  summary->add_option("--from", from_stage, "first stage of the range");
  summary->add_option("--to", to_stage, "last stage of the range (-1: end)");
  summary->add_option("--out", out_dir, "output directory");

  CLI::App* replay = app.add_subcommand("replay", "validate a trace file");
  replay->add_option("--trace", trace_path, "trace file (jsonl)")->required();
  replay->add_option("--config", config_path, "game config (json), default built-in game");

  CLI11_PARSE(app, argc, argv);

  auto load_game = [&]() {
    if (config_path.empty()) return LemonadeGame();
    nlohmann::json j;
    {
      std::ifstream in(config_path);
      if (!in) throw std::runtime_error("cannot open " + config_path);
      in >> j;
    }
    return j.contains("game") ? GameFromJson(j.at("game")) : GameFromJson(j);
  };

  if (match->parsed()) {
    MatchConfig config = LoadMatchConfig(config_path);
    if (seed) config.seed = *seed;
    if (stages) config.stages = *stages;
    MatchResult result = RunMatch(config);
    const fs::path trace_file = fs::path(out_dir) / "trace.jsonl";
    WriteTrace(result, trace_file);
    PrintMatch(result);
    std::printf("trace: %s\n", trace_file.string().c_str());
    return 0;
  }

  if (tournament->parsed()) {
    TournamentConfig config = LoadTournamentConfig(config_path);
    if (seed) config.seed = *seed;
    if (stages) config.stages = *stages;
    if (repeats) config.repeats = *repeats;
    TournamentTable table =
        RunTournament(config.roster, config.game, config.stages, config.repeats, config.seed,
                      threads);
    const fs::path table_file = fs::path(out_dir) / "table.csv";
    WriteTable(table, table_file);
    if (traces) {
      // Re-run match by match; seeds are derived the same way as inside the
      // tournament, so the traces describe exactly the tabulated matches.
      const int n = config.game.num_players();
      std::vector<std::vector<int>> groups;
      std::vector<int> pick(n);
      for (int i = 0; i < n; ++i) pick[i] = i;
      while (true) {
        groups.push_back(pick);
        int p = n - 1;
        while (p >= 0 && pick[p] == static_cast<int>(config.roster.size()) - n + p) --p;
        if (p < 0) break;
        ++pick[p];
        for (int q = p + 1; q < n; ++q) pick[q] = pick[q - 1] + 1;
      }
      for (size_t g = 0; g < groups.size(); ++g) {
        for (int r = 0; r < config.repeats; ++r) {
          MatchConfig mc;
          mc.game = config.game;
          mc.stages = config.stages;
          mc.seed = MixSeed(config.seed, g + 1, r + 1);
          for (int seat : groups[g]) mc.agents.push_back(config.roster[seat]);
          WriteTrace(RunMatch(mc), fs::path(out_dir) / ("match_" + std::to_string(g) + "_" +
                                                        std::to_string(r) + ".jsonl"));
        }
      }
    }
    PrintTable(table);
    std::printf("table: %s\n", table_file.string().c_str());
    return 0;
  }

  if (summary->parsed()) {
    NormalFormGame game = load_game();
    MatchResult result = ReadTrace(trace_path);
    result.teamup_seat = result.teamup_seat >= 0 ? planner : result.teamup_seat;
    StateVisitSummary sv = SummarizeStateVisits(result, game, planner,
                                                AbstractionParams(gamma, rho, delta), from_stage,
                                                to_stage);
    const fs::path summary_file = fs::path(out_dir) / "summary.csv";
    WriteSummary(sv, summary_file);
    std::printf("optimal %.4f  worst %.4f  other %.4f\n", sv.optimal, sv.worst, sv.other);
    std::printf("summary: %s\n", summary_file.string().c_str());
    return 0;
  }

  if (replay->parsed()) {
    NormalFormGame game = load_game();
    const int n = ValidateTrace(game, trace_path);
    std::printf("ok: %d stages replay cleanly\n", n);
    return 0;
  }

  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return Run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
