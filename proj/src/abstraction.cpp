#include "teamup/abstraction.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace teamup {

AbstractionParams::AbstractionParams(double gamma_in, double rho_in, double delta_in)
    : gamma(gamma_in), rho(rho_in), delta(delta_in) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must be in (0, 1]");
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
  if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must be in [0, 1]");
}

std::string BehaviorFeature::ToString() const {
  switch (kind) {
    case Kind::kLead:
      return "L";
    case Kind::kOther:
      return "O";
    case Kind::kFollow:
      return "F" + std::to_string(target);
  }
  return "?";
}

BehaviorFeature BehaviorFeature::FromString(const std::string& s) {
  if (s == "L") return Lead();
  if (s == "O") return Other();
  if (s.size() >= 2 && s[0] == 'F') return Follow(std::stoi(s.substr(1)));
  throw std::invalid_argument("unrecognised behaviour feature '" + s + "'");
}

ActionHistory::ActionHistory(int num_players) : per_player_(num_players) {
  if (num_players < 1) throw std::invalid_argument("history needs at least one player");
}

void ActionHistory::Append(const JointAction& actions) {
  if (static_cast<int>(actions.size()) != num_players()) {
    throw std::invalid_argument("joint action size does not match player count");
  }
  for (int i = 0; i < num_players(); ++i) per_player_[i].push_back(actions[i]);
}

int ActionHistory::length() const { return static_cast<int>(per_player_[0].size()); }

const std::vector<ActionId>& ActionHistory::Of(Player i) const {
  if (i < 0 || i >= num_players()) throw std::invalid_argument("player index out of range");
  return per_player_[i];
}

JointAction ActionHistory::StageActions(int k) const {
  if (k < 1 || k > length()) throw std::invalid_argument("stage index out of range");
  JointAction a(num_players());
  for (int i = 0; i < num_players(); ++i) a[i] = per_player_[i][k - 1];
  return a;
}

FeatureFloor ComputeFeatureFloor(const NormalFormGame& game, Player i,
                                 const AbstractionParams& params) {
  game.CheckPlayer(i);
  double dmax = 0;
  for (ActionId x = 0; x < game.num_actions(i); ++x) {
    for (ActionId y = 0; y < game.num_actions(i); ++y) {
      dmax = std::max(dmax, game.Metric(x, y));
    }
  }
  // The stage weights normalise to 1, so the worst reachable index is the
  // scaled diameter of the action set.
  double f_min = -std::pow(dmax, params.rho);
  return {f_min, f_min * params.delta};
}

namespace {

void CheckIndexHistory(size_t len) {
  if (len < 2) {
    throw std::invalid_argument("indices need at least two completed stages (t >= 3)");
  }
}

// Discounted average of per-stage deviations, newest stage weighted 1.
double WeightedDeviation(const std::vector<double>& deviations, double gamma, double rho,
                         double* gamma_norm = nullptr) {
  double acc = 0, norm = 0, w = 1;
  for (auto it = deviations.rbegin(); it != deviations.rend(); ++it) {
    acc += w * std::pow(*it, rho);
    norm += w;
    w *= gamma;
  }
  if (gamma_norm != nullptr) *gamma_norm = norm;
  return -acc / norm;
}

}  // namespace

double LeadIndex(const NormalFormGame& game, const std::vector<ActionId>& history_i,
                 const AbstractionParams& params) {
  CheckIndexHistory(history_i.size());
  std::vector<double> deviations(history_i.size() - 1);
  for (size_t k = 1; k < history_i.size(); ++k) {
    deviations[k - 1] = game.Metric(history_i[k], history_i[k - 1]);
  }
  return WeightedDeviation(deviations, params.gamma, params.rho);
}

double FollowIndex(const NormalFormGame& game, Player i, Player j,
                   const std::vector<ActionId>& history_i,
                   const std::vector<ActionId>& history_j, const AbstractionParams& params) {
  if (i == j) throw std::invalid_argument("follow index needs two distinct players");
  if (history_i.size() != history_j.size()) {
    throw std::invalid_argument("histories must cover the same stages");
  }
  CheckIndexHistory(history_i.size());
  std::vector<double> deviations(history_i.size() - 1);
  for (size_t k = 1; k < history_i.size(); ++k) {
    deviations[k - 1] =
        DistanceToSet(game, history_i[k], game.PairwiseBestResponse(i, j, history_j[k - 1]));
  }
  return WeightedDeviation(deviations, params.gamma, params.rho);
}

IndexReport ComputeIndices(const NormalFormGame& game, const ActionHistory& history, Player i,
                           const AbstractionParams& params) {
  game.CheckPlayer(i);
  CheckIndexHistory(history.Of(i).size());
  IndexReport report;
  report.player = i;
  report.lead = LeadIndex(game, history.Of(i), params);
  report.follow.assign(history.num_players(), std::numeric_limits<double>::quiet_NaN());
  for (Player j = 0; j < history.num_players(); ++j) {
    if (j == i) continue;
    report.follow[j] = FollowIndex(game, i, j, history.Of(i), history.Of(j), params);
  }
  double w = 1, norm = 0;
  for (int k = 0; k < history.length() - 1; ++k) {
    norm += w;
    w *= params.gamma;
  }
  report.gamma_norm = norm;
  FeatureFloor floor = ComputeFeatureFloor(game, i, params);
  report.f_min = floor.f_min;
  report.bound = floor.bound;
  return report;
}

BehaviorFeature Classify(const NormalFormGame& game, const ActionHistory& history, Player i,
                         const AbstractionParams& params, Player preferred_target) {
  game.CheckPlayer(i);
  game.CheckPlayer(preferred_target);
  if (history.length() < 2) return BehaviorFeature::Other();

  IndexReport report = ComputeIndices(game, history, i, params);
  Player best_target = -1;
  double best_follow = 0;
  auto consider = [&](Player j) {
    if (j == i) return;
    double f = report.follow[j];
    if (best_target < 0 || f > best_follow) {
      best_follow = f;
      best_target = j;
    }
  };
  consider(preferred_target);
  for (Player j = 0; j < history.num_players(); ++j) {
    if (j != preferred_target) consider(j);
  }

  if (best_target >= 0 && best_follow >= report.bound && best_follow >= report.lead) {
    return BehaviorFeature::Follow(best_target);
  }
  if (report.lead >= report.bound) return BehaviorFeature::Lead();
  return BehaviorFeature::Other();
}

std::string AbstractState::ToString() const {
  std::string out = "(" + own.ToString();
  for (const BehaviorFeature& f : opponents) out += "," + f.ToString();
  return out + ")";
}

StateSpace::StateSpace(int num_players) : n_(num_players) {
  if (n_ < 2) throw std::invalid_argument("state space needs at least two players");
  slot_values_.resize(n_ - 1);
  for (int k = 1; k < n_; ++k) {
    auto& values = slot_values_[k - 1];
    values.push_back(BehaviorFeature::Lead());
    values.push_back(BehaviorFeature::Other());
    for (Player j = 0; j < n_; ++j) {
      if (j != k) values.push_back(BehaviorFeature::Follow(j));
    }
  }
  num_states_ = n_;  // own slot: L, F(1), ..., F(n-1)
  for (const auto& values : slot_values_) num_states_ *= static_cast<int>(values.size());
}

int StateSpace::Encode(const AbstractState& s) const {
  if (static_cast<int>(s.opponents.size()) != n_ - 1) {
    throw std::invalid_argument("state needs one feature per opponent");
  }
  int id = ActionIndex(s.own);
  for (int k = 1; k < n_; ++k) {
    const auto& values = slot_values_[k - 1];
    int slot = -1;
    for (size_t v = 0; v < values.size(); ++v) {
      if (values[v] == s.opponents[k - 1]) {
        slot = static_cast<int>(v);
        break;
      }
    }
    if (slot < 0) {
      throw std::invalid_argument("opponent " + std::to_string(k) + " cannot carry feature " +
                                  s.opponents[k - 1].ToString());
    }
    id = id * static_cast<int>(values.size()) + slot;
  }
  return id;
}

AbstractState StateSpace::Decode(int id) const {
  if (id < 0 || id >= num_states_) throw std::invalid_argument("state id out of range");
  AbstractState s;
  s.opponents.resize(n_ - 1);
  for (int k = n_ - 1; k >= 1; --k) {
    const auto& values = slot_values_[k - 1];
    s.opponents[k - 1] = values[id % values.size()];
    id /= static_cast<int>(values.size());
  }
  s.own = ActionFromIndex(id);
  return s;
}

BehaviorFeature StateSpace::ActionFromIndex(int a) const {
  if (a < 0 || a >= n_) throw std::invalid_argument("action index out of range");
  return a == 0 ? BehaviorFeature::Lead() : BehaviorFeature::Follow(a);
}

int StateSpace::ActionIndex(const BehaviorFeature& a) const {
  if (a.is_lead()) return 0;
  if (a.is_follow() && a.target >= 1 && a.target < n_) return a.target;
  throw std::invalid_argument("the planner's own slot must be L or F(1..n-1), got " +
                              a.ToString());
}

std::string StateSpace::StateToString(int id) const {
  if (id == s0()) return "s0";
  return Decode(id).ToString();
}

int StateSpace::StateFromString(const std::string& text) const {
  if (text == "s0") return s0();
  if (text.size() < 2 || text.front() != '(' || text.back() != ')') {
    throw std::invalid_argument("malformed state '" + text + "'");
  }
  AbstractState s;
  std::string body = text.substr(1, text.size() - 2);
  size_t pos = 0;
  std::vector<std::string> parts;
  while (pos <= body.size()) {
    size_t comma = body.find(',', pos);
    if (comma == std::string::npos) {
      parts.push_back(body.substr(pos));
      break;
    }
    parts.push_back(body.substr(pos, comma - pos));
    pos = comma + 1;
  }
  if (static_cast<int>(parts.size()) != n_) {
    throw std::invalid_argument("state '" + text + "' needs " + std::to_string(n_) + " slots");
  }
  s.own = BehaviorFeature::FromString(parts[0]);
  for (int k = 1; k < n_; ++k) s.opponents.push_back(BehaviorFeature::FromString(parts[k]));
  return Encode(s);
}

}  // namespace teamup
