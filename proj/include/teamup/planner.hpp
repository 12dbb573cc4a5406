#ifndef TEAMUP_PLANNER_HPP
#define TEAMUP_PLANNER_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "teamup/agent.hpp"

namespace teamup {

enum class StateClass { kOptimal, kWorst, kOther };

// Optimal states: some opponent follows the planner while the planner leads,
// or the planner follows an opponent that follows it back. Worst states: two
// opponents collude among themselves, leaving the planner out.
StateClass ClassifyState(const StateSpace& space, int state_id);

// Potentials of the three state classes under a planning discount. Optimal
// states are worth a locked-in stream of the best stage reward, worst states
// the stream of the smallest, and everything else sits epsilon below optimal.
struct ShapingPotentials {
  ShapingPotentials(double r_max, double r_min, double epsilon, double discount);

  double r_max;
  double r_min;
  double epsilon;
  double discount;

  double optimal() const { return r_max / (1.0 - discount); }
  double worst() const { return r_min / (1.0 - discount); }
  double other() const { return (r_max - epsilon) / (1.0 - discount); }

  double Of(StateClass c) const;
};

// Counted experience over (state, action, next state) triplets, including the
// fictitious start state s0 as the last state id.
class PlannerModel {
 public:
  PlannerModel(int num_states_with_s0, int num_actions, int k_known);

  // Records one transition; returns true when the pair's visit count reached
  // a positive multiple of the known-threshold K, i.e. time to replan.
  bool Observe(int state, int action, int next, double reward);

  int Total(int state, int action) const;
  double CumulativeReward(int state, int action) const;
  double MeanReward(int state, int action) const;  // requires a visited pair
  const std::map<int, int>& Counts(int state, int action) const;

  int num_states() const { return num_states_; }
  int num_actions() const { return num_actions_; }
  int k_known() const { return k_known_; }

 private:
  int PairIndex(int state, int action) const;

  int num_states_;
  int num_actions_;
  int k_known_;
  std::vector<std::map<int, int>> counts_;
  std::vector<double> cumulative_;
  std::vector<int> totals_;
};

// A dense-reward, sparse-transition MDP ready for value iteration.
struct PlanningProblem {
  int num_states = 0;
  int num_actions = 0;
  std::vector<double> reward;                                   // [s * A + a]
  std::vector<std::vector<std::pair<int, double>>> transitions;  // (next, prob)
};

// Recomputes the full transition function from current counts: pairs with at
// least K visits use their empirical distribution and mean reward, the rest
// jump to s0 with the potential of their source state as reward. s0 itself
// is absorbing with reward 0, so its value is pinned at 0.
PlanningProblem RebuildTransitions(const PlannerModel& model, const StateSpace& space,
                                   const ShapingPotentials& potentials);

struct ValuePolicy {
  std::vector<double> value;
  std::vector<int> policy;
  int iterations = 0;
};

// Standard value iteration to a sup-norm tolerance; greedy policy extraction
// breaks ties toward the lowest action index (L before F(1) before F(2)).
ValuePolicy ValueIteration(const PlanningProblem& problem, double discount, double tolerance,
                           int max_iterations = 200000);

// Maps a high-level action to a concrete one: L repeats the planner's last
// action, F(k) plays the pairwise best response to opponent k's last action.
ActionId GroundAction(const NormalFormGame& game, Player seat,
                      const std::vector<Player>& opponent_seats, const BehaviorFeature& action,
                      const ActionHistory& history);

struct TeamUpConfig {
  double gamma = 0.05;
  double rho = 0.5;
  double delta = 0.3;
  double epsilon = 4.0;
  double planning_discount = 0.95;
  int k_known = 15;
  double vi_tolerance = 1e-6;
  double r_max = 12.0;
  double r_min = 6.0;
  // When set, stage rewards are augmented online with the potential
  // difference of the observed transition; by default shaping acts through
  // the initial model only.
  bool online_shaping = false;
  int initial_position = -1;  // fixed concrete start; -1 draws from the seed
};

struct PlannerStageRecord {
  int stage = 0;
  int state = 0;   // state at decision time; s0 during warmup
  int action = 0;  // chosen high-level action index
  bool replanned = false;
  std::vector<double> value_snapshot;  // V after a replan, empty otherwise
};

// The planning agent: classifies opponents each stage, counts transitions of
// the abstract state, and replans with value iteration whenever a pair's
// visit count crosses the known-threshold.
class TeamUpAgent final : public Agent {
 public:
  TeamUpAgent(const NormalFormGame& game, Player seat, const TeamUpConfig& config,
              std::uint64_t seed);

  ActionId Act(const ActionHistory& history) override;
  const std::string& name() const override { return name_; }

  const std::vector<PlannerStageRecord>& diagnostics() const { return diagnostics_; }
  const PlannerModel& model() const { return model_; }
  const StateSpace& space() const { return space_; }
  const std::vector<double>& value() const { return value_; }
  const std::vector<int>& policy() const { return policy_; }

 private:
  double PhiOf(int state_id) const;  // 0 at s0
  int EncodeCurrentState(const ActionHistory& history) const;

  NormalFormGame game_;
  Player seat_;
  std::vector<Player> opponent_seats_;
  TeamUpConfig config_;
  AbstractionParams params_;
  StateSpace space_;
  ShapingPotentials potentials_;
  PlannerModel model_;
  std::vector<double> value_;
  std::vector<int> policy_;
  int prev_state_;
  int prev_action_;
  int expected_stage_;
  int initial_position_;
  std::string name_;
  std::vector<PlannerStageRecord> diagnostics_;
};

}  // namespace teamup

#endif  // TEAMUP_PLANNER_HPP
