#ifndef TEAMUP_ARENA_HPP
#define TEAMUP_ARENA_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "teamup/agents.hpp"

namespace teamup {

struct MatchConfig {
  NormalFormGame game = LemonadeGame();
  std::vector<AgentSpec> agents;
  int stages = 100;
  std::uint64_t seed = 0;
  // Per-stage behaviour features of every player, classified with the
  // reference parameterization at decision time.
  bool record_features = true;
  bool record_indices = false;
  AbstractionParams reference_params{};
};

struct StageRecord {
  int stage = 0;  // 1-based
  JointAction actions;
  std::vector<double> utilities;
  std::vector<BehaviorFeature> features;   // empty when not recorded
  std::optional<std::string> planner_state;
  std::optional<std::string> planner_action;
  bool replanned = false;
  std::vector<IndexReport> index_reports;  // empty when not recorded
};

struct MatchResult {
  std::vector<std::string> agent_names;
  std::vector<StageRecord> stage_records;
  int teamup_seat = -1;  // first planner seat, -1 if none

  int num_players() const { return static_cast<int>(agent_names.size()); }
  int num_stages() const { return static_cast<int>(stage_records.size()); }
  // Mean per-stage utility over the inclusive 1-based stage range.
  double MeanUtility(Player i, int stage_lo = 1, int stage_hi = -1) const;
};

// Plays one seeded match: every stage all agents act simultaneously on the
// announced history, the payoff is computed, and the joint action revealed.
// Per-agent randomness comes from streams derived off the master seed, so a
// config determines the result bit for bit.
MatchResult RunMatch(const MatchConfig& config);

struct TournamentRow {
  int rank = 0;
  std::string strategy;
  double avg_utility = 0;
  double std_err = 0;
  int matches = 0;
};

struct TournamentTable {
  std::vector<TournamentRow> rows;
};

// Round-robin: every unordered roster triplet plays `repeats` matches with
// per-match derived seeds. Rows report the mean of per-match mean utilities
// and its standard error, sorted best first. `threads` > 1 distributes
// matches across workers without changing any result.
TournamentTable RunTournament(const std::vector<AgentSpec>& roster, const NormalFormGame& game,
                              int stages, int repeats, std::uint64_t seed, int threads = 1);

struct StateVisitSummary {
  double optimal = 0;
  double worst = 0;
  double other = 0;
};

// Fraction of stages in the inclusive range whose abstract state (for the
// designated planner) falls in each class. Warmup and unclassifiable stages
// count as other. Uses the planner's own state trace when the designated
// seat ran the planner, otherwise reconstructs states from the actions.
StateVisitSummary SummarizeStateVisits(const MatchResult& result, const NormalFormGame& game,
                                       Player planner, const AbstractionParams& params,
                                       int stage_lo = 1, int stage_hi = -1);

}  // namespace teamup

#endif  // TEAMUP_ARENA_HPP
