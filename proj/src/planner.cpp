#include "teamup/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "teamup/rng.hpp"

namespace teamup {

StateClass ClassifyState(const StateSpace& space, int state_id) {
  if (state_id == space.s0()) {
    throw std::invalid_argument("the fictitious start state has no class");
  }
  AbstractState s = space.Decode(state_id);
  const int n = space.num_players();

  // Optimal: the planner leads and someone follows it, or the planner and the
  // opponent it follows follow each other.
  if (s.own.is_lead()) {
    for (const BehaviorFeature& f : s.opponents) {
      if (f.Follows(0)) return StateClass::kOptimal;
    }
  } else if (s.opponents[s.own.target - 1].Follows(0)) {
    return StateClass::kOptimal;
  }

  // Worst: opponents k and l collude without the planner (l leads or follows
  // back while k follows l).
  for (int k = 1; k < n; ++k) {
    if (!s.opponents[k - 1].is_follow()) continue;
    const Player l = s.opponents[k - 1].target;
    if (l == 0) continue;
    const BehaviorFeature& fl = s.opponents[l - 1];
    if (fl.is_lead() || fl.Follows(k)) return StateClass::kWorst;
  }
  return StateClass::kOther;
}

ShapingPotentials::ShapingPotentials(double r_max_in, double r_min_in, double epsilon_in,
                                     double discount_in)
    : r_max(r_max_in), r_min(r_min_in), epsilon(epsilon_in), discount(discount_in) {
  if (!(discount > 0.0 && discount < 1.0)) {
    throw std::invalid_argument("planning discount must be in (0, 1)");
  }
  if (!(r_max > r_min)) throw std::invalid_argument("r_max must exceed r_min");
  if (!(epsilon > 0.0 && epsilon < r_max - r_min)) {
    throw std::invalid_argument("epsilon must be in (0, r_max - r_min)");
  }
}

double ShapingPotentials::Of(StateClass c) const {
  switch (c) {
    case StateClass::kOptimal:
      return optimal();
    case StateClass::kWorst:
      return worst();
    case StateClass::kOther:
      return other();
  }
  throw std::logic_error("unreachable");
}

PlannerModel::PlannerModel(int num_states_with_s0, int num_actions, int k_known)
    : num_states_(num_states_with_s0),
      num_actions_(num_actions),
      k_known_(k_known),
      counts_(static_cast<size_t>(num_states_) * num_actions_),
      cumulative_(counts_.size(), 0.0),
      totals_(counts_.size(), 0) {
  if (k_known_ < 1) throw std::invalid_argument("known-threshold K must be positive");
}

int PlannerModel::PairIndex(int state, int action) const {
  if (state < 0 || state >= num_states_) throw std::invalid_argument("state out of range");
  if (action < 0 || action >= num_actions_) throw std::invalid_argument("action out of range");
  return state * num_actions_ + action;
}

bool PlannerModel::Observe(int state, int action, int next, double reward) {
  if (next < 0 || next >= num_states_) throw std::invalid_argument("next state out of range");
  const int pair = PairIndex(state, action);
  ++counts_[pair][next];
  cumulative_[pair] += reward;
  ++totals_[pair];
  return totals_[pair] % k_known_ == 0;
}

int PlannerModel::Total(int state, int action) const { return totals_[PairIndex(state, action)]; }

double PlannerModel::CumulativeReward(int state, int action) const {
  return cumulative_[PairIndex(state, action)];
}

double PlannerModel::MeanReward(int state, int action) const {
  const int pair = PairIndex(state, action);
  if (totals_[pair] == 0) throw std::logic_error("mean reward of an unvisited pair");
  return cumulative_[pair] / totals_[pair];
}

const std::map<int, int>& PlannerModel::Counts(int state, int action) const {
  return counts_[PairIndex(state, action)];
}

PlanningProblem RebuildTransitions(const PlannerModel& model, const StateSpace& space,
                                   const ShapingPotentials& potentials) {
  PlanningProblem problem;
  problem.num_states = model.num_states();
  problem.num_actions = model.num_actions();
  problem.reward.resize(static_cast<size_t>(problem.num_states) * problem.num_actions);
  problem.transitions.resize(problem.reward.size());

  const int s0 = space.s0();
  for (int s = 0; s < problem.num_states; ++s) {
    for (int a = 0; a < problem.num_actions; ++a) {
      const size_t pair = static_cast<size_t>(s) * problem.num_actions + a;
      if (s != s0 && model.Total(s, a) >= model.k_known()) {
        problem.reward[pair] = model.MeanReward(s, a);
        const double total = model.Total(s, a);
        for (const auto& [next, count] : model.Counts(s, a)) {
          problem.transitions[pair].emplace_back(next, count / total);
        }
      } else {
        // Unknown pair (and s0 itself): jump to the absorbing start state.
        // s0 carries reward 0, so its value stays pinned at 0 and an unknown
        // pair is worth exactly the potential of its source state.
        problem.reward[pair] = s == s0 ? 0.0 : potentials.Of(ClassifyState(space, s));
        problem.transitions[pair].emplace_back(s0, 1.0);
      }
    }
  }
  return problem;
}

ValuePolicy ValueIteration(const PlanningProblem& problem, double discount, double tolerance,
                           int max_iterations) {
  if (!(discount > 0.0 && discount < 1.0)) {
    throw std::invalid_argument("planning discount must be in (0, 1)");
  }
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");

  ValuePolicy out;
  out.value.assign(problem.num_states, 0.0);
  std::vector<double> next(problem.num_states, 0.0);
  double residual = 0;
  for (int it = 0; it < max_iterations; ++it) {
    residual = 0;
    for (int s = 0; s < problem.num_states; ++s) {
      double best = -std::numeric_limits<double>::infinity();
      for (int a = 0; a < problem.num_actions; ++a) {
        const size_t pair = static_cast<size_t>(s) * problem.num_actions + a;
        double q = problem.reward[pair];
        for (const auto& [sp, p] : problem.transitions[pair]) q += discount * p * out.value[sp];
        best = std::max(best, q);
      }
      next[s] = best;
      residual = std::max(residual, std::abs(best - out.value[s]));
    }
    out.value.swap(next);
    ++out.iterations;
    if (residual <= tolerance) break;
  }
  if (residual > tolerance) {
    throw std::runtime_error("value iteration did not converge: residual " +
                             std::to_string(residual) + " after " +
                             std::to_string(out.iterations) + " sweeps");
  }

  out.policy.assign(problem.num_states, 0);
  for (int s = 0; s < problem.num_states; ++s) {
    double best = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < problem.num_actions; ++a) {
      const size_t pair = static_cast<size_t>(s) * problem.num_actions + a;
      double q = problem.reward[pair];
      for (const auto& [sp, p] : problem.transitions[pair]) q += discount * p * out.value[sp];
      if (q > best) {
        best = q;
        out.policy[s] = a;
      }
    }
  }
  return out;
}

ActionId GroundAction(const NormalFormGame& game, Player seat,
                      const std::vector<Player>& opponent_seats, const BehaviorFeature& action,
                      const ActionHistory& history) {
  if (history.length() < 1) throw std::invalid_argument("grounding needs a completed stage");
  if (action.is_lead()) return history.Of(seat).back();
  if (!action.is_follow()) throw std::invalid_argument("cannot ground feature O");
  const Player j = opponent_seats.at(action.target - 1);
  return game.PairwiseBestResponse(seat, j, history.Of(j).back()).front();
}

TeamUpAgent::TeamUpAgent(const NormalFormGame& game, Player seat, const TeamUpConfig& config,
                         std::uint64_t seed)
    : game_(game),
      seat_(seat),
      config_(config),
      params_(config.gamma, config.rho, config.delta),
      space_(game.num_players()),
      potentials_(config.r_max, config.r_min, config.epsilon, config.planning_discount),
      model_(space_.num_states() + 1, space_.num_actions(), config.k_known),
      prev_state_(space_.s0()),
      prev_action_(0),
      expected_stage_(1),
      name_("teamup") {
  game_.CheckPlayer(seat_);
  for (Player p = 0; p < game_.num_players(); ++p) {
    if (p != seat_) opponent_seats_.push_back(p);
  }
  if (config_.initial_position >= 0) {
    game_.CheckAction(seat_, config_.initial_position);
    initial_position_ = config_.initial_position;
  } else {
    initial_position_ = Rng(seed).UniformInt(game_.num_actions(seat_));
  }
  // Initial model: every pair unknown, every state worth its potential, so
  // the first policy leads everywhere by tie-break.
  ValuePolicy vp = ValueIteration(RebuildTransitions(model_, space_, potentials_),
                                  config_.planning_discount, config_.vi_tolerance);
  value_ = std::move(vp.value);
  policy_ = std::move(vp.policy);
}

double TeamUpAgent::PhiOf(int state_id) const {
  return state_id == space_.s0() ? 0.0 : potentials_.Of(ClassifyState(space_, state_id));
}

int TeamUpAgent::EncodeCurrentState(const ActionHistory& history) const {
  AbstractState s;
  s.own = space_.ActionFromIndex(prev_action_);
  for (size_t k = 0; k < opponent_seats_.size(); ++k) {
    const Player j = opponent_seats_[k];
    BehaviorFeature f = Classify(game_, history, j, params_, seat_);
    if (f.is_follow()) {
      // Renumber the followed seat planner-relative: the planner becomes 0.
      if (f.target == seat_) {
        f.target = 0;
      } else {
        const auto it = std::find(opponent_seats_.begin(), opponent_seats_.end(), f.target);
        f.target = 1 + static_cast<int>(it - opponent_seats_.begin());
      }
    }
    s.opponents.push_back(f);
  }
  return space_.Encode(s);
}

ActionId TeamUpAgent::Act(const ActionHistory& history) {
  const int stage = history.length() + 1;
  if (stage != expected_stage_) {
    throw std::logic_error("planner stepped out of order: expected stage " +
                           std::to_string(expected_stage_) + ", got " + std::to_string(stage));
  }
  ++expected_stage_;

  if (stage <= 2) {
    // Warmup: behaviour features are undefined, lead from the start position.
    diagnostics_.push_back({stage, space_.s0(), 0, false, {}});
    return stage == 1 ? initial_position_ : history.Of(seat_).back();
  }

  const int state = EncodeCurrentState(history);
  double reward = game_.Payoff(history.StageActions(history.length()))[seat_];
  if (config_.online_shaping) {
    reward += config_.planning_discount * PhiOf(state) - PhiOf(prev_state_);
  }
  const bool replan = model_.Observe(prev_state_, prev_action_, state, reward);
  if (replan) {
    ValuePolicy vp = ValueIteration(RebuildTransitions(model_, space_, potentials_),
                                    config_.planning_discount, config_.vi_tolerance);
    value_ = std::move(vp.value);
    policy_ = std::move(vp.policy);
  }
  const int action = policy_[state];
  prev_state_ = state;
  prev_action_ = action;
  diagnostics_.push_back(
      {stage, state, action, replan, replan ? value_ : std::vector<double>{}});
  return GroundAction(game_, seat_, opponent_seats_, space_.ActionFromIndex(action), history);
}

}  // namespace teamup
