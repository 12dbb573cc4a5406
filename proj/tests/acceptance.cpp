// Acceptance suite: end-to-end checks of the library's headline behaviour,
// one printed line per criterion. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "teamup/io.hpp"
#include "teamup/rng.hpp"

using namespace teamup;
namespace fs = std::filesystem;

namespace {

struct Checker {
  bool ok = true;
  std::string detail;

  void Require(bool cond, const std::string& message) {
    if (!cond && ok) {
      ok = false;
      detail = message;
    }
  }
};

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<void(Checker&)> run;
};

AgentSpec Spec(AgentSpec::Kind kind, int target = -1) {
  AgentSpec s;
  s.kind = kind;
  s.target = target;
  return s;
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

void PayoffConservation(Checker& check) {
  NormalFormGame lsg = LemonadeGame();
  for (int a = 0; a < 12 && check.ok; ++a) {
    for (int b = 0; b < 12 && check.ok; ++b) {
      for (int c = 0; c < 12; ++c) {
        const std::vector<double> u = lsg.Payoff({a, b, c});
        const std::string at = "(" + std::to_string(a) + "," + std::to_string(b) + "," +
                               std::to_string(c) + ")";
        check.Require(u[0] + u[1] + u[2] == 24.0, "sum != 24 at " + at);
        if (a == b && b == c) {
          check.Require(u == std::vector<double>{8, 8, 8}, "triple co-location rule at " + at);
        } else if (a == b) {
          check.Require(u == std::vector<double>{6, 6, 12}, "pair co-location rule at " + at);
        } else if (a == c) {
          check.Require(u == std::vector<double>{6, 12, 6}, "pair co-location rule at " + at);
        } else if (b == c) {
          check.Require(u == std::vector<double>{12, 6, 6}, "pair co-location rule at " + at);
        } else {
          // All distinct: the utility is the gap around the player.
          for (int i = 0; i < 3 && check.ok; ++i) {
            const int x = i == 0 ? a : i == 1 ? b : c;
            int cw = 12, acw = 12;
            for (int j = 0; j < 3; ++j) {
              if (j == i) continue;
              const int y = j == 0 ? a : j == 1 ? b : c;
              cw = std::min(cw, ((y - x) % 12 + 12) % 12);
              acw = std::min(acw, ((x - y) % 12 + 12) % 12);
            }
            check.Require(u[i] == cw + acw, "arc rule at " + at);
          }
        }
        if (!check.ok) return;
      }
    }
  }
}

void AnalyticCollaboration(Checker& check) {
  for (int trial = 0; trial < 20; ++trial) {
    MatchConfig config;
    config.agents = {Spec(AgentSpec::Kind::kConstantLead),
                     Spec(AgentSpec::Kind::kIdealFollower, 0),
                     Spec(AgentSpec::Kind::kUniformRandom)};
    config.stages = 1000;
    config.seed = 100 + trial;
    config.record_features = false;
    MatchResult result = RunMatch(config);
    const std::string at = " (seed " + std::to_string(config.seed) + ")";
    check.Require(std::abs(result.MeanUtility(0) - 9.0) <= 0.3, "lead mean off 9" + at);
    check.Require(std::abs(result.MeanUtility(1) - 9.0) <= 0.3, "follower mean off 9" + at);
    check.Require(std::abs(result.MeanUtility(2) - 6.0) <= 0.3, "random mean off 6" + at);
    if (!check.ok) return;
  }
}

void LockedPairCeiling(Checker& check) {
  const AgentSpec::Kind thirds[] = {
      AgentSpec::Kind::kUniformRandom, AgentSpec::Kind::kTeamUp, AgentSpec::Kind::kNoisyLead,
      AgentSpec::Kind::kSatisficingCycler, AgentSpec::Kind::kMyopicPartner};
  for (AgentSpec::Kind third : thirds) {
    for (int trial = 0; trial < 4; ++trial) {
      MatchConfig config;
      config.agents = {Spec(AgentSpec::Kind::kConstantLead),
                       Spec(AgentSpec::Kind::kIdealFollower, 0), Spec(third)};
      config.stages = 200;
      config.seed = 500 + trial;
      config.record_features = false;
      MatchResult result = RunMatch(config);
      // The pair sits opposite from stage 2 on; whatever the third player
      // does, its utility is pinned to exactly 6.
      for (int s = 2; s <= config.stages; ++s) {
        check.Require(result.stage_records[s - 1].utilities[2] == 6.0,
                      "third player not pinned at stage " + std::to_string(s) + " vs " +
                          config.agents[2].KindName());
        if (!check.ok) return;
      }
    }
  }
}

void TeamUpCollaboration(Checker& check) {
  double mean_total = 0, optimal_total = 0;
  const int seeds = 50;
  for (int trial = 0; trial < seeds; ++trial) {
    MatchConfig config;
    config.agents = {Spec(AgentSpec::Kind::kTeamUp), Spec(AgentSpec::Kind::kIdealFollower, 0),
                     Spec(AgentSpec::Kind::kUniformRandom)};
    config.stages = 100;
    config.seed = 1000 + trial;
    config.record_features = false;
    MatchResult result = RunMatch(config);
    mean_total += result.MeanUtility(0, 51, 100);
    optimal_total +=
        SummarizeStateVisits(result, config.game, 0, AbstractionParams(), 21, 100).optimal;
  }
  const double mean = mean_total / seeds;
  const double optimal = optimal_total / seeds;
  check.Require(mean >= 8.5, "mean over stages 51-100 is " + std::to_string(mean) + " < 8.5");
  check.Require(optimal >= 0.70,
                "optimal-state fraction over stages 21-100 is " + std::to_string(optimal) +
                    " < 0.70");
}

void TeamUpDoubleFollow(Checker& check) {
  double mean_total = 0;
  const int seeds = 20;
  for (int trial = 0; trial < seeds; ++trial) {
    MatchConfig config;
    config.agents = {Spec(AgentSpec::Kind::kTeamUp), Spec(AgentSpec::Kind::kIdealFollower, 0),
                     Spec(AgentSpec::Kind::kIdealFollower, 0)};
    config.stages = 100;
    config.seed = 2000 + trial;
    config.record_features = false;
    mean_total += RunMatch(config).MeanUtility(0, 51, 100);
  }
  const double mean = mean_total / seeds;
  check.Require(mean >= 11.0, "mean over stages 51-100 is " + std::to_string(mean) + " < 11.0");
}

void TeamUpExcluded(Checker& check) {
  double mean_total = 0;
  const int seeds = 20;
  for (int trial = 0; trial < seeds; ++trial) {
    MatchConfig config;
    config.agents = {Spec(AgentSpec::Kind::kTeamUp), Spec(AgentSpec::Kind::kConstantLead),
                     Spec(AgentSpec::Kind::kIdealFollower, 1)};
    config.stages = 100;
    config.seed = 3000 + trial;
    config.record_features = false;
    mean_total += RunMatch(config).MeanUtility(0, 51, 100);
  }
  const double mean = mean_total / seeds;
  check.Require(mean >= 5.5 && mean <= 6.5,
                "mean over stages 51-100 is " + std::to_string(mean) + ", outside [5.5, 6.5]");
}

// Literal restatements of the index definitions (independent of the library
// path, which iterates newest-first and never materialises the weights).
double NaiveLead(const NormalFormGame& game, const std::vector<ActionId>& h, double gamma,
                 double rho) {
  const int t = static_cast<int>(h.size()) + 1;
  double norm = 0, acc = 0;
  for (int k = 2; k <= t - 1; ++k) norm += std::pow(gamma, t - 1 - k);
  for (int k = 2; k <= t - 1; ++k) {
    acc += std::pow(gamma, t - 1 - k) / norm * std::pow(game.Metric(h[k - 1], h[k - 2]), rho);
  }
  return -acc;
}

double NaiveFollow(const NormalFormGame& game, Player i, Player j,
                   const std::vector<ActionId>& hi, const std::vector<ActionId>& hj,
                   double gamma, double rho) {
  const int t = static_cast<int>(hi.size()) + 1;
  double norm = 0, acc = 0;
  for (int k = 2; k <= t - 1; ++k) norm += std::pow(gamma, t - 1 - k);
  for (int k = 2; k <= t - 1; ++k) {
    double d = 1e18;
    for (ActionId s : game.PairwiseBestResponse(i, j, hj[k - 2])) {
      d = std::min(d, game.Metric(hi[k - 1], s));
    }
    acc += std::pow(gamma, t - 1 - k) / norm * std::pow(d, rho);
  }
  return -acc;
}

void IndexOracle(Checker& check) {
  NormalFormGame lsg = LemonadeGame();
  Rng rng(404);
  for (int trial = 0; trial < 1000; ++trial) {
    const int len = 2 + rng.UniformInt(40);
    std::vector<ActionId> hi(len), hj(len);
    for (int k = 0; k < len; ++k) {
      hi[k] = rng.UniformInt(12);
      hj[k] = rng.UniformInt(12);
    }
    const double gamma = 0.02 + 0.98 * rng.UniformDouble();
    const double rho = 0.25 + 1.5 * rng.UniformDouble();
    AbstractionParams params(gamma, rho, 0.3);
    const double lead_err = std::abs(LeadIndex(lsg, hi, params) - NaiveLead(lsg, hi, gamma, rho));
    const double follow_err = std::abs(FollowIndex(lsg, 0, 1, hi, hj, params) -
                                       NaiveFollow(lsg, 0, 1, hi, hj, gamma, rho));
    check.Require(lead_err <= 1e-12, "lead index off by " + std::to_string(lead_err));
    check.Require(follow_err <= 1e-12, "follow index off by " + std::to_string(follow_err));
    if (!check.ok) return;
  }
  // Perfect types sit exactly at zero.
  for (int trial = 0; trial < 20; ++trial) {
    const int len = 2 + rng.UniformInt(20);
    const ActionId home = rng.UniformInt(12);
    std::vector<ActionId> lead_hist(len, home), follow_hist(len), target_hist(len);
    for (int k = 0; k < len; ++k) target_hist[k] = rng.UniformInt(12);
    follow_hist[0] = rng.UniformInt(12);
    for (int k = 1; k < len; ++k) follow_hist[k] = (target_hist[k - 1] + 6) % 12;
    check.Require(LeadIndex(lsg, lead_hist, AbstractionParams()) == 0.0,
                  "perfect lead index not exactly 0");
    check.Require(
        FollowIndex(lsg, 0, 1, follow_hist, target_hist, AbstractionParams()) == 0.0,
        "perfect follow index not exactly 0");
    if (!check.ok) return;
  }
}

void ViOracle(Checker& check) {
  Rng rng(505);
  const double discount = 0.9;
  for (int trial = 0; trial < 100; ++trial) {
    const int num_states = 2 + rng.UniformInt(47);
    PlanningProblem p;
    p.num_states = num_states;
    p.num_actions = 3;
    p.reward.resize(static_cast<size_t>(num_states) * 3);
    p.transitions.resize(p.reward.size());
    for (auto& r : p.reward) r = rng.UniformInt(25) - 6;
    for (auto& t : p.transitions) {
      const int support = 1 + rng.UniformInt(3);
      double total = 0;
      for (int k = 0; k < support; ++k) {
        t.emplace_back(rng.UniformInt(num_states), 0.2 + rng.UniformDouble());
        total += t.back().second;
      }
      for (auto& [next, prob] : t) prob /= total;
    }
    ValuePolicy vp = ValueIteration(p, discount, 1e-9);
    // Long-horizon evaluation of the extracted policy.
    std::vector<double> v(num_states, 0.0);
    for (int sweep = 0; sweep < 3000; ++sweep) {
      std::vector<double> next(num_states);
      for (int s = 0; s < num_states; ++s) {
        const size_t pair = static_cast<size_t>(s) * 3 + vp.policy[s];
        double q = p.reward[pair];
        for (const auto& [sp, prob] : p.transitions[pair]) q += discount * prob * v[sp];
        next[s] = q;
      }
      v.swap(next);
    }
    for (int s = 0; s < num_states; ++s) {
      const double err = std::abs(vp.value[s] - v[s]);
      check.Require(err <= 1e-5, "VI value off the policy's long-run value by " +
                                     std::to_string(err));
      if (!check.ok) return;
    }
  }
}

void NeOracle(Checker& check) {
  Rng rng(606);
  auto brute = [](const NormalFormGame& game) {
    std::set<JointAction> out;
    JointAction profile(game.num_players(), 0);
    while (true) {
      const std::vector<double> u = game.Payoff(profile);
      bool nash = true;
      for (Player i = 0; i < game.num_players() && nash; ++i) {
        JointAction dev = profile;
        for (ActionId a = 0; a < game.num_actions(i); ++a) {
          dev[i] = a;
          if (game.Payoff(dev)[i] > u[i]) {
            nash = false;
            break;
          }
        }
      }
      if (nash) out.insert(profile);
      int p = game.num_players() - 1;
      while (p >= 0 && ++profile[p] == game.num_actions(p)) profile[p--] = 0;
      if (p < 0) break;
    }
    return out;
  };

  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + rng.UniformInt(2);
    std::vector<int> counts(n);
    long long profiles = 1;
    for (int& c : counts) {
      c = 1 + rng.UniformInt(4);
      profiles *= c;
    }
    std::vector<std::vector<double>> payoffs(profiles, std::vector<double>(n));
    for (auto& row : payoffs) {
      for (double& v : row) v = rng.UniformInt(9) - 4;
    }
    NormalFormGame game = NormalFormGame::FromTable("random", counts, payoffs);
    const std::vector<JointAction> ne = PureNashEquilibria(game);
    const std::set<JointAction> expected = brute(game);
    check.Require(ne.size() == expected.size(),
                  "equilibrium count mismatch on trial " + std::to_string(trial));
    for (const JointAction& q : ne) {
      check.Require(expected.count(q) == 1, "spurious equilibrium on trial " +
                                                std::to_string(trial));
    }
    if (!check.ok) return;
  }

  NormalFormGame lsg = LemonadeGame();
  const std::vector<JointAction> ne = PureNashEquilibria(lsg);
  const std::set<JointAction> expected = brute(lsg);
  check.Require(ne.size() == expected.size(), "lemonade equilibrium count mismatch");
  for (const JointAction& q : ne) {
    check.Require(expected.count(q) == 1, "spurious lemonade equilibrium");
  }
}

void QualitativeRanking(Checker& check) {
  const std::vector<AgentSpec> roster = {
      Spec(AgentSpec::Kind::kTeamUp),          Spec(AgentSpec::Kind::kConstantLead),
      Spec(AgentSpec::Kind::kIdealFollower),   Spec(AgentSpec::Kind::kUniformRandom),
      Spec(AgentSpec::Kind::kNoisyLead),       Spec(AgentSpec::Kind::kSatisficingCycler),
      Spec(AgentSpec::Kind::kMyopicPartner)};
  TournamentTable table = RunTournament(roster, LemonadeGame(), 100, 30, 42, 4);
  check.Require(!table.rows.empty(), "empty table");
  std::string summary;
  for (const TournamentRow& row : table.rows) {
    summary += " " + std::to_string(row.rank) + ":" + row.strategy;
  }
  check.Require(table.rows[0].strategy == "teamup", "ranking:" + summary);
}

void Determinism(Checker& check) {
  const fs::path dir = fs::temp_directory_path() / "teamup_acceptance";
  fs::create_directories(dir / "a");
  fs::create_directories(dir / "b");

  for (const char* sub : {"a", "b"}) {
    MatchConfig config;
    config.agents = {Spec(AgentSpec::Kind::kTeamUp), Spec(AgentSpec::Kind::kIdealFollower, 0),
                     Spec(AgentSpec::Kind::kUniformRandom)};
    config.stages = 100;
    config.seed = 7;
    WriteTrace(RunMatch(config), dir / sub / "trace.jsonl");

    const std::vector<AgentSpec> roster = {Spec(AgentSpec::Kind::kTeamUp),
                                           Spec(AgentSpec::Kind::kConstantLead),
                                           Spec(AgentSpec::Kind::kIdealFollower),
                                           Spec(AgentSpec::Kind::kUniformRandom)};
    WriteTable(RunTournament(roster, LemonadeGame(), 50, 3, 11, 2), dir / sub / "table.csv");
    MatchResult replayed = ReadTrace(dir / sub / "trace.jsonl");
    WriteSummary(SummarizeStateVisits(replayed, LemonadeGame(), 0, AbstractionParams()),
                 dir / sub / "summary.csv");
  }
  for (const char* file : {"trace.jsonl", "table.csv", "summary.csv"}) {
    const std::string a = Slurp(dir / "a" / file);
    check.Require(!a.empty(), std::string(file) + " is empty");
    check.Require(a == Slurp(dir / "b" / file),
                  std::string(file) + " differs between identical runs");
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"payoff_conservation", 1.0, PayoffConservation},
      {"analytic_collaboration", 5.0, AnalyticCollaboration},
      {"locked_pair_ceiling", 10.0, LockedPairCeiling},
      {"teamup_collaboration", 30.0, TeamUpCollaboration},
      {"teamup_double_follow", 30.0, TeamUpDoubleFollow},
      {"teamup_excluded", 30.0, TeamUpExcluded},
      {"index_oracle", 10.0, IndexOracle},
      {"vi_oracle", 30.0, ViOracle},
      {"ne_oracle", 10.0, NeOracle},
      {"qualitative_ranking", 60.0, QualitativeRanking},
      {"determinism", 30.0, Determinism},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    Checker check;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.run(check);
    } catch (const std::exception& e) {
      check.Require(false, std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    check.Require(seconds < criterion.budget_seconds,
                  "took " + std::to_string(seconds) + "s, budget " +
                      std::to_string(criterion.budget_seconds) + "s");
    if (check.ok) {
      std::printf("[PASS] %-24s (%.2fs)\n", criterion.name.c_str(), seconds);
    } else {
      std::printf("[FAIL] %-24s (%.2fs) %s\n", criterion.name.c_str(), seconds,
                  check.detail.c_str());
      ++failures;
    }
  }
  if (failures > 0) {
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
