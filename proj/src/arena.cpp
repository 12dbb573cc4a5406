#include "teamup/arena.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "teamup/rng.hpp"

namespace teamup {

namespace {

std::vector<std::string> UniqueNames(const std::vector<AgentSpec>& specs) {
  std::vector<std::string> kinds, names;
  for (const AgentSpec& s : specs) kinds.push_back(s.KindName());
  for (size_t i = 0; i < kinds.size(); ++i) {
    bool dup = false;
    for (size_t j = 0; j < kinds.size(); ++j) dup |= (j != i && kinds[j] == kinds[i]);
    names.push_back(dup ? kinds[i] + "#" + std::to_string(i) : kinds[i]);
  }
  return names;
}

}  // namespace

double MatchResult::MeanUtility(Player i, int stage_lo, int stage_hi) const {
  if (stage_hi < 0) stage_hi = num_stages();
  if (stage_lo < 1 || stage_hi > num_stages() || stage_lo > stage_hi) {
    throw std::invalid_argument("stage range out of bounds");
  }
  double total = 0;
  for (int s = stage_lo; s <= stage_hi; ++s) total += stage_records[s - 1].utilities.at(i);
  return total / (stage_hi - stage_lo + 1);
}

MatchResult RunMatch(const MatchConfig& config) {
  const int n = config.game.num_players();
  if (static_cast<int>(config.agents.size()) != n) {
    throw std::invalid_argument("match needs exactly " + std::to_string(n) + " agents");
  }
  if (config.stages < 1) throw std::invalid_argument("match needs at least one stage");

  std::vector<std::unique_ptr<Agent>> agents;
  for (Player i = 0; i < n; ++i) {
    agents.push_back(MakeAgent(config.agents[i], config.game, i, MixSeed(config.seed, i + 1)));
  }

  MatchResult result;
  result.agent_names = UniqueNames(config.agents);
  for (Player i = 0; i < n; ++i) {
    if (config.agents[i].kind == AgentSpec::Kind::kTeamUp) {
      result.teamup_seat = i;
      break;
    }
  }
  const Player preferred = result.teamup_seat >= 0 ? result.teamup_seat : 0;

  ActionHistory history(n);
  for (int stage = 1; stage <= config.stages; ++stage) {
    StageRecord rec;
    rec.stage = stage;
    rec.actions.resize(n);
    for (Player i = 0; i < n; ++i) {
      try {
        rec.actions[i] = agents[i]->Act(history);
        config.game.CheckAction(i, rec.actions[i]);
      } catch (const std::exception& e) {
        throw std::runtime_error("agent " + std::to_string(i) + " (" + result.agent_names[i] +
                                 ") failed at stage " + std::to_string(stage) + ": " + e.what());
      }
    }
    // Decision-time classification: features describe behaviour before this
    // stage's actions are revealed.
    if (config.record_features) {
      for (Player i = 0; i < n; ++i) {
        rec.features.push_back(
            Classify(config.game, history, i, config.reference_params, preferred));
      }
    }
    if (config.record_indices && history.length() >= 2) {
      for (Player i = 0; i < n; ++i) {
        rec.index_reports.push_back(
            ComputeIndices(config.game, history, i, config.reference_params));
      }
    }
    rec.utilities = config.game.Payoff(rec.actions);
    history.Append(rec.actions);
    result.stage_records.push_back(std::move(rec));
  }

  if (result.teamup_seat >= 0) {
    const auto* planner = dynamic_cast<const TeamUpAgent*>(agents[result.teamup_seat].get());
    const auto& diag = planner->diagnostics();
    for (int s = 0; s < config.stages; ++s) {
      result.stage_records[s].planner_state = planner->space().StateToString(diag[s].state);
      result.stage_records[s].planner_action =
          planner->space().ActionFromIndex(diag[s].action).ToString();
      result.stage_records[s].replanned = diag[s].replanned;
    }
  }
  return result;
}

TournamentTable RunTournament(const std::vector<AgentSpec>& roster, const NormalFormGame& game,
                              int stages, int repeats, std::uint64_t seed, int threads) {
  const int n = game.num_players();
  if (static_cast<int>(roster.size()) < n) {
    throw std::invalid_argument("roster needs at least " + std::to_string(n) + " entries");
  }
  if (repeats < 1) throw std::invalid_argument("repeats must be positive");

  // Enumerate unordered triplets in lexicographic roster order.
  std::vector<std::vector<int>> groups;
  std::vector<int> pick(n);
  for (int i = 0; i < n; ++i) pick[i] = i;
  while (true) {
    groups.push_back(pick);
    int p = n - 1;
    while (p >= 0 && pick[p] == static_cast<int>(roster.size()) - n + p) --p;
    if (p < 0) break;
    ++pick[p];
    for (int q = p + 1; q < n; ++q) pick[q] = pick[q - 1] + 1;
  }

  struct Job {
    int group;
    int repeat;
  };
  std::vector<Job> jobs;
  for (int g = 0; g < static_cast<int>(groups.size()); ++g) {
    for (int r = 0; r < repeats; ++r) jobs.push_back({g, r});
  }

  // One slot per job keeps merging independent of scheduling order.
  std::vector<std::vector<double>> job_means(jobs.size());
  auto run_job = [&](size_t idx) {
    const Job& job = jobs[idx];
    MatchConfig config;
    config.game = game;
    config.stages = stages;
    config.seed = MixSeed(seed, job.group + 1, job.repeat + 1);
    config.record_features = false;
    for (int seat : groups[job.group]) config.agents.push_back(roster[seat]);
    MatchResult result = RunMatch(config);
    std::vector<double> means(n);
    for (Player i = 0; i < n; ++i) means[i] = result.MeanUtility(i);
    job_means[idx] = std::move(means);
  };

  threads = std::max(1, std::min<int>(threads, jobs.size()));
  if (threads == 1) {
    for (size_t idx = 0; idx < jobs.size(); ++idx) run_job(idx);
  } else {
    std::atomic<size_t> cursor{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (size_t idx = cursor.fetch_add(1); idx < jobs.size(); idx = cursor.fetch_add(1)) {
          run_job(idx);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }

  std::vector<std::vector<double>> entry_means(roster.size());
  for (size_t idx = 0; idx < jobs.size(); ++idx) {
    const std::vector<int>& seats = groups[jobs[idx].group];
    for (int i = 0; i < n; ++i) entry_means[seats[i]].push_back(job_means[idx][i]);
  }

  std::vector<std::string> names = UniqueNames(roster);
  TournamentTable table;
  for (size_t e = 0; e < roster.size(); ++e) {
    const std::vector<double>& means = entry_means[e];
    TournamentRow row;
    row.strategy = names[e];
    row.matches = static_cast<int>(means.size());
    double total = 0;
    for (double m : means) total += m;
    row.avg_utility = total / means.size();
    if (means.size() > 1) {
      double ss = 0;
      for (double m : means) ss += (m - row.avg_utility) * (m - row.avg_utility);
      row.std_err = std::sqrt(ss / (means.size() - 1)) / std::sqrt(means.size());
    }
    table.rows.push_back(std::move(row));
  }
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const TournamentRow& a, const TournamentRow& b) {
                     return a.avg_utility > b.avg_utility;
                   });
  for (size_t r = 0; r < table.rows.size(); ++r) table.rows[r].rank = static_cast<int>(r) + 1;
  return table;
}

StateVisitSummary SummarizeStateVisits(const MatchResult& result, const NormalFormGame& game,
                                       Player planner, const AbstractionParams& params,
                                       int stage_lo, int stage_hi) {
  if (stage_hi < 0) stage_hi = result.num_stages();
  if (stage_lo < 1 || stage_hi > result.num_stages() || stage_lo > stage_hi) {
    throw std::invalid_argument("stage range out of bounds");
  }
  game.CheckPlayer(planner);
  StateSpace space(game.num_players());
  const bool use_trace = planner == result.teamup_seat;

  std::vector<Player> opponents;
  for (Player p = 0; p < game.num_players(); ++p) {
    if (p != planner) opponents.push_back(p);
  }
  auto relative = [&](BehaviorFeature f) {
    if (f.is_follow()) {
      if (f.target == planner) {
        f.target = 0;
      } else {
        const auto it = std::find(opponents.begin(), opponents.end(), f.target);
        f.target = 1 + static_cast<int>(it - opponents.begin());
      }
    }
    return f;
  };

  StateVisitSummary summary;
  int counted = 0;
  ActionHistory history(game.num_players());
  for (int stage = 1; stage <= stage_hi; ++stage) {
    const StageRecord& rec = result.stage_records[stage - 1];
    if (stage >= stage_lo) {
      std::optional<StateClass> cls;
      if (use_trace && rec.planner_state) {
        const int id = space.StateFromString(*rec.planner_state);
        if (id != space.s0()) cls = ClassifyState(space, id);
      } else if (history.length() >= 2) {
        // Reconstruct the state from decision-time features; a designated
        // planner whose own behaviour classifies O has no planner state and
        // counts as other.
        BehaviorFeature own = Classify(game, history, planner, params, planner);
        if (!own.is_other()) {
          AbstractState s;
          s.own = relative(own);
          for (Player j : opponents) {
            s.opponents.push_back(relative(Classify(game, history, j, params, planner)));
          }
          cls = ClassifyState(space, space.Encode(s));
        }
      }
      ++counted;
      if (!cls) {
        summary.other += 1;
      } else if (*cls == StateClass::kOptimal) {
        summary.optimal += 1;
      } else if (*cls == StateClass::kWorst) {
        summary.worst += 1;
      } else {
        summary.other += 1;
      }
    }
    history.Append(rec.actions);
  }
  summary.optimal /= counted;
  summary.worst /= counted;
  summary.other /= counted;
  return summary;
}

}  // namespace teamup
