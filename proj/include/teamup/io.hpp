#ifndef TEAMUP_IO_HPP
#define TEAMUP_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "teamup/arena.hpp"

namespace teamup {

// Game description: the string "lsg", or an object with player count, action
// counts and a dense payoff table (optionally a metric, constant sum and an
// explicit pairwise best-response table), or {"file": path} pointing at one.
NormalFormGame GameFromJson(const nlohmann::json& j);
NormalFormGame LoadGameFile(const std::filesystem::path& path);

AgentSpec AgentSpecFromJson(const nlohmann::json& j);
nlohmann::json ToJson(const AgentSpec& spec);

// {"game": ..., "agents": [...], "stages": N, "seed": N}
MatchConfig MatchConfigFromJson(const nlohmann::json& j);
MatchConfig LoadMatchConfig(const std::filesystem::path& path);

struct TournamentConfig {
  NormalFormGame game = LemonadeGame();
  std::vector<AgentSpec> roster;
  int stages = 100;
  int repeats = 30;
  std::uint64_t seed = 0;
};
// {"game": ..., "roster": [...], "stages": N, "repeats": N, "seed": N}
TournamentConfig TournamentConfigFromJson(const nlohmann::json& j);
TournamentConfig LoadTournamentConfig(const std::filesystem::path& path);

nlohmann::json ToJson(const IndexReport& report);

// One JSON record per stage: stage, actions, utilities, features,
// planner_state, planner_action, replanned (and index_reports when present).
void WriteTrace(const MatchResult& result, const std::filesystem::path& path);
MatchResult ReadTrace(const std::filesystem::path& path);

// CSV with columns rank,strategy,avg_utility,std_err; a leading comment line
// documents the standard-error convention.
void WriteTable(const TournamentTable& table, const std::filesystem::path& path);

// CSV with columns state_class,fraction.
void WriteSummary(const StateVisitSummary& summary, const std::filesystem::path& path);

// Replays a trace against the game: utilities must reproduce the payoffs of
// the recorded actions, stages must be contiguous from 1, and the constant
// sum must hold. Returns the stage count; throws with the offending stage on
// any mismatch.
int ValidateTrace(const NormalFormGame& game, const std::filesystem::path& path);

}  // namespace teamup

#endif  // TEAMUP_IO_HPP
