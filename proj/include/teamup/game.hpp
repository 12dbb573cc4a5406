#ifndef TEAMUP_GAME_HPP
#define TEAMUP_GAME_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace teamup {

using Player = int;
using ActionId = int;
using JointAction = std::vector<ActionId>;

// Shortest distance between two points on a cycle of m positions.
inline int RingDistance(ActionId x, ActionId y, int m) {
  int d = x > y ? x - y : y - x;
  return d < m - d ? d : m - d;
}

enum class MetricKind { kDiscrete, kRing };

// An n-player simultaneous-move stage game. Payoffs, the action metric and
// the single-opponent best response are oracles supplied at construction, so
// instances are immutable and freely shareable across threads.
//
// The pairwise best response BR_i(a_j) answers "what should i play against
// j's action alone". It is game-supplied because for n > 2 the notion is
// underdetermined by the payoff table; see FromTable for the default used by
// dense-table games.
class NormalFormGame {
 public:
  using PayoffFn = std::function<std::vector<double>(const JointAction&)>;
  using MetricFn = std::function<double(ActionId, ActionId)>;
  using PairwiseBrFn = std::function<std::vector<ActionId>(Player, Player, ActionId)>;

  NormalFormGame(std::string name, std::vector<int> action_counts, PayoffFn payoff,
                 MetricFn metric, PairwiseBrFn pairwise_br,
                 std::optional<double> constant_sum = std::nullopt);

  // Builds a game from a dense payoff table. `payoffs[flat]` holds one reward
  // per player at the joint action with row-major flat index (the last
  // player's action varies fastest). The default metric is discrete 0/1.
  // When no pairwise BR table is given, BR_i(a_j) is the set of i's actions
  // maximising i's expected reward with the remaining opponents uniform; for
  // two players this is the exact best response.
  static NormalFormGame FromTable(
      std::string name, std::vector<int> action_counts,
      std::vector<std::vector<double>> payoffs, MetricKind metric = MetricKind::kDiscrete,
      std::optional<double> constant_sum = std::nullopt,
      std::optional<std::vector<std::vector<std::vector<std::vector<ActionId>>>>> pairwise_br =
          std::nullopt);

  int num_players() const { return static_cast<int>(action_counts_.size()); }
  int num_actions(Player i) const;
  const std::vector<int>& action_counts() const { return action_counts_; }
  const std::string& name() const { return name_; }
  std::optional<double> constant_sum() const { return constant_sum_; }

  // Per-player utilities for a full joint action.
  std::vector<double> Payoff(const JointAction& actions) const;

  double Metric(ActionId x, ActionId y) const { return metric_(x, y); }

  // BR_i against opponent j's action alone; always a nonempty sorted set.
  std::vector<ActionId> PairwiseBestResponse(Player i, Player j, ActionId a_j) const;

  void CheckPlayer(Player i) const;
  void CheckAction(Player i, ActionId a) const;

 private:
  std::string name_;
  std::vector<int> action_counts_;
  PayoffFn payoff_;
  MetricFn metric_;
  PairwiseBrFn pairwise_br_;
  std::optional<double> constant_sum_;
};

// The twelve-position constant-sum location game: three players pick spots on
// a ring, utilities are the arc lengths to the nearest neighbours and always
// sum to 24. Metric is the ring distance; the pairwise best response to an
// opponent is the directly opposite spot.
NormalFormGame LemonadeGame();

inline constexpr int kLemonadeSpots = 12;
inline constexpr double kLemonadeTotal = 24.0;

// Set of i's actions maximising i's reward given every other player's action
// (in seat order). Never empty.
std::vector<ActionId> BestResponseSet(const NormalFormGame& game, Player i,
                                      const std::vector<ActionId>& others);

// Subset of BestResponseSet that additionally maximises player j's reward.
std::vector<ActionId> ConsideredBestResponse(const NormalFormGame& game, Player i, Player j,
                                             const std::vector<ActionId>& others);

// Subset of ConsideredBestResponse after which a_j is itself a best response
// for j. May be empty: no reciprocal best response exists at this profile.
// `rest` holds the actions of all players other than i and j, in seat order.
std::vector<ActionId> ReciprocalBestResponse(const NormalFormGame& game, Player i, Player j,
                                             const std::vector<ActionId>& rest, ActionId a_j);

// Exhaustive pure Nash enumeration. Refuses games whose joint-action count
// exceeds `enumeration_cap`.
std::vector<JointAction> PureNashEquilibria(const NormalFormGame& game,
                                            long long enumeration_cap = 1'000'000);

// min over s in `set` of Metric(a, s). `set` must be nonempty.
double DistanceToSet(const NormalFormGame& game, ActionId a, const std::vector<ActionId>& set);

}  // namespace teamup

#endif  // TEAMUP_GAME_HPP
