#ifndef TEAMUP_ABSTRACTION_HPP
#define TEAMUP_ABSTRACTION_HPP

#include <string>
#include <vector>

#include "teamup/game.hpp"

namespace teamup {

// Lead/follow index parameters. gamma is the response rate weighting recent
// transitions, rho the distance exponent, delta the tolerance that scales the
// classification threshold B = f_min * delta.
struct AbstractionParams {
  AbstractionParams() : AbstractionParams(0.05, 0.5, 0.3) {}
  AbstractionParams(double gamma, double rho, double delta);

  double gamma;
  double rho;
  double delta;
};

// High-level classification of a player's recent behaviour: stationary (L),
// chasing player `target` (F), or neither (O).
struct BehaviorFeature {
  enum class Kind { kLead, kFollow, kOther };

  Kind kind = Kind::kOther;
  Player target = -1;  // meaningful only when kind == kFollow

  static BehaviorFeature Lead() { return {Kind::kLead, -1}; }
  static BehaviorFeature Follow(Player j) { return {Kind::kFollow, j}; }
  static BehaviorFeature Other() { return {Kind::kOther, -1}; }

  bool is_lead() const { return kind == Kind::kLead; }
  bool is_follow() const { return kind == Kind::kFollow; }
  bool is_other() const { return kind == Kind::kOther; }
  bool Follows(Player j) const { return kind == Kind::kFollow && target == j; }

  bool operator==(const BehaviorFeature& o) const {
    return kind == o.kind && (kind != Kind::kFollow || target == o.target);
  }
  bool operator!=(const BehaviorFeature& o) const { return !(*this == o); }

  std::string ToString() const;                       // "L", "F2", "O"
  static BehaviorFeature FromString(const std::string& s);
};

// Concrete action sequences of all players over the completed stages. At
// decision time for stage t the history holds stages 1..t-1.
class ActionHistory {
 public:
  explicit ActionHistory(int num_players);

  void Append(const JointAction& actions);

  int num_players() const { return static_cast<int>(per_player_.size()); }
  int length() const;                           // completed stages, t - 1
  int stage() const { return length() + 1; }    // current stage t, 1-based
  const std::vector<ActionId>& Of(Player i) const;
  JointAction StageActions(int k) const;        // k in [1, length()]

 private:
  std::vector<std::vector<ActionId>> per_player_;
};

// Intrinsic lower bound of the indices for one player's action set, and the
// derived classification threshold B = f_min * delta.
struct FeatureFloor {
  double f_min;
  double bound;
};
FeatureFloor ComputeFeatureFloor(const NormalFormGame& game, Player i,
                                 const AbstractionParams& params);

// Discounted, normalized, negated distance of i's play from the perfect-lead
// type: 0 means i never moved. Needs at least two completed stages (t >= 3).
double LeadIndex(const NormalFormGame& game, const std::vector<ActionId>& history_i,
                 const AbstractionParams& params);

// Same, against the perfect-follow-of-j type: distance of i's action at each
// stage from the best-response set to j's previous action.
double FollowIndex(const NormalFormGame& game, Player i, Player j,
                   const std::vector<ActionId>& history_i,
                   const std::vector<ActionId>& history_j, const AbstractionParams& params);

// All indices of one player at the current stage, for diagnostics and traces.
struct IndexReport {
  Player player = -1;
  double lead = 0;
  std::vector<double> follow;  // by seat; NaN at the player's own seat
  double gamma_norm = 0;       // normaliser of the stage weights
  double f_min = 0;
  double bound = 0;
};
IndexReport ComputeIndices(const NormalFormGame& game, const ActionHistory& history, Player i,
                           const AbstractionParams& params);

// Feature decision flow. Returns O while fewer than two stages are recorded.
// Ties among follow targets prefer `preferred_target` (the classifying
// planner's seat), then the lowest seat; a best follow index tying the lead
// index routes to F.
BehaviorFeature Classify(const NormalFormGame& game, const ActionHistory& history, Player i,
                         const AbstractionParams& params, Player preferred_target);

// Planner-relative abstract state: `own` is the planner's last high-level
// action (L or F(k) with k in 1..n-1 indexing opponents), `opponents` the
// feature of each opponent with targets renumbered so 0 is the planner.
struct AbstractState {
  BehaviorFeature own;
  std::vector<BehaviorFeature> opponents;

  std::string ToString() const;  // "(L,F0,O)"
};

// Enumerates the planner's abstract states and high-level actions for an
// n-player game. For n = 3 there are 48 states plus the fictitious start
// state s0 (id num_states()).
class StateSpace {
 public:
  explicit StateSpace(int num_players);

  int num_players() const { return n_; }
  int num_actions() const { return n_; }  // L, F(1), ..., F(n-1)
  int num_states() const { return num_states_; }
  int s0() const { return num_states_; }

  // Validates the state invariants (own slot never O or self-follow, no
  // opponent following itself) and returns the dense id.
  int Encode(const AbstractState& s) const;
  AbstractState Decode(int id) const;

  BehaviorFeature ActionFromIndex(int a) const;  // 0 -> L, k -> F(k)
  int ActionIndex(const BehaviorFeature& a) const;

  std::string StateToString(int id) const;  // Decode + ToString; id s0 -> "s0"
  int StateFromString(const std::string& s) const;

 private:
  int n_;
  std::vector<std::vector<BehaviorFeature>> slot_values_;  // per opponent slot
  int num_states_;
};

}  // namespace teamup

#endif  // TEAMUP_ABSTRACTION_HPP
