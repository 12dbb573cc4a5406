#include "teamup/game.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <utility>

namespace teamup {

namespace {

JointAction InsertAt(const std::vector<ActionId>& others, Player i, ActionId a) {
  JointAction joint(others.size() + 1);
  for (int p = 0, k = 0; p < static_cast<int>(joint.size()); ++p) {
    joint[p] = (p == i) ? a : others[k++];
  }
  return joint;
}

}  // namespace

NormalFormGame::NormalFormGame(std::string name, std::vector<int> action_counts, PayoffFn payoff,
                               MetricFn metric, PairwiseBrFn pairwise_br,
                               std::optional<double> constant_sum)
    : name_(std::move(name)),
      action_counts_(std::move(action_counts)),
      payoff_(std::move(payoff)),
      metric_(std::move(metric)),
      pairwise_br_(std::move(pairwise_br)),
      constant_sum_(constant_sum) {
  if (action_counts_.empty()) throw std::invalid_argument("game needs at least one player");
  for (int m : action_counts_) {
    if (m < 1) throw std::invalid_argument("every player needs at least one action");
  }
}

int NormalFormGame::num_actions(Player i) const {
  CheckPlayer(i);
  return action_counts_[i];
}

void NormalFormGame::CheckPlayer(Player i) const {
  if (i < 0 || i >= num_players()) {
    throw std::invalid_argument("player index " + std::to_string(i) + " out of range for " +
                                std::to_string(num_players()) + "-player game");
  }
}

void NormalFormGame::CheckAction(Player i, ActionId a) const {
  CheckPlayer(i);
  if (a < 0 || a >= action_counts_[i]) {
    throw std::invalid_argument("action " + std::to_string(a) + " out of range for player " +
                                std::to_string(i));
  }
}

std::vector<double> NormalFormGame::Payoff(const JointAction& actions) const {
  if (static_cast<int>(actions.size()) != num_players()) {
    throw std::invalid_argument("joint action has " + std::to_string(actions.size()) +
                                " entries, game has " + std::to_string(num_players()) +
                                " players");
  }
  for (Player i = 0; i < num_players(); ++i) CheckAction(i, actions[i]);
  return payoff_(actions);
}

std::vector<ActionId> NormalFormGame::PairwiseBestResponse(Player i, Player j, ActionId a_j) const {
  CheckPlayer(i);
  CheckAction(j, a_j);
  if (i == j) throw std::invalid_argument("pairwise best response needs two distinct players");
  std::vector<ActionId> br = pairwise_br_(i, j, a_j);
  if (br.empty()) throw std::logic_error("pairwise best response oracle returned an empty set");
  return br;
}

NormalFormGame NormalFormGame::FromTable(
    std::string name, std::vector<int> action_counts, std::vector<std::vector<double>> payoffs,
    MetricKind metric, std::optional<double> constant_sum,
    std::optional<std::vector<std::vector<std::vector<std::vector<ActionId>>>>> pairwise_br) {
  const int n = static_cast<int>(action_counts.size());
  long long profiles = 1;
  for (int m : action_counts) {
    if (m < 1) throw std::invalid_argument("every player needs at least one action");
    profiles *= m;
    if (profiles > 1'000'000) throw std::invalid_argument("payoff table too large");
  }
  if (static_cast<long long>(payoffs.size()) != profiles) {
    throw std::invalid_argument("payoff table has " + std::to_string(payoffs.size()) +
                                " rows, expected " + std::to_string(profiles));
  }
  for (const auto& row : payoffs) {
    if (static_cast<int>(row.size()) != n) {
      throw std::invalid_argument("payoff rows must hold one value per player");
    }
  }
  if (constant_sum) {
    for (const auto& row : payoffs) {
      double s = 0;
      for (double v : row) s += v;
      if (std::abs(s - *constant_sum) > 1e-9) {
        throw std::invalid_argument("payoffs do not sum to the declared constant");
      }
    }
  }

  auto counts = std::make_shared<std::vector<int>>(action_counts);
  auto table = std::make_shared<std::vector<std::vector<double>>>(std::move(payoffs));
  auto flat_index = [counts](const JointAction& a) {
    long long idx = 0;
    for (size_t p = 0; p < counts->size(); ++p) idx = idx * (*counts)[p] + a[p];
    return idx;
  };
  PayoffFn payoff = [table, flat_index](const JointAction& a) { return (*table)[flat_index(a)]; };

  MetricFn metric_fn;
  if (metric == MetricKind::kRing) {
    const int m = action_counts[0];
    for (int c : action_counts) {
      if (c != m) throw std::invalid_argument("ring metric needs equal action counts");
    }
    metric_fn = [m](ActionId x, ActionId y) {
      return static_cast<double>(RingDistance(x, y, m));
    };
  } else {
    metric_fn = [](ActionId x, ActionId y) { return x == y ? 0.0 : 1.0; };
  }

  // Pairwise best response: explicit table if given, otherwise the maximiser
  // of i's expected reward against uniform remaining opponents.
  PairwiseBrFn br_fn;
  if (pairwise_br) {
    auto br_table = std::make_shared<std::vector<std::vector<std::vector<std::vector<ActionId>>>>>(
        std::move(*pairwise_br));
    br_fn = [br_table](Player i, Player j, ActionId a_j) { return (*br_table)[i][j][a_j]; };
  } else {
    br_fn = [counts, table, flat_index](Player i, Player j, ActionId a_j) {
      const int n = static_cast<int>(counts->size());
      std::vector<ActionId> best;
      double best_value = 0;
      for (ActionId a_i = 0; a_i < (*counts)[i]; ++a_i) {
        // Average i's reward over all joint completions of the other players.
        double total = 0;
        long long completions = 0;
        JointAction joint(n, 0);
        joint[i] = a_i;
        joint[j] = a_j;
        std::vector<Player> free;
        for (Player p = 0; p < n; ++p) {
          if (p != i && p != j) free.push_back(p);
        }
        bool done = false;
        while (!done) {
          total += (*table)[flat_index(joint)][i];
          ++completions;
          done = true;
          for (Player p : free) {
            if (++joint[p] < (*counts)[p]) {
              done = false;
              break;
            }
            joint[p] = 0;
          }
        }
        double value = total / static_cast<double>(completions);
        if (best.empty() || value > best_value) {
          best_value = value;
          best = {a_i};
        } else if (value == best_value) {
          best.push_back(a_i);
        }
      }
      return best;
    };
  }

  return NormalFormGame(std::move(name), std::move(action_counts), std::move(payoff),
                        std::move(metric_fn), std::move(br_fn), constant_sum);
}

NormalFormGame LemonadeGame() {
  auto payoff = [](const JointAction& pos) -> std::vector<double> {
    const int a = pos[0], b = pos[1], c = pos[2];
    if (a == b && b == c) return {8.0, 8.0, 8.0};
    if (a == b) return {6.0, 6.0, 12.0};
    if (a == c) return {6.0, 12.0, 6.0};
    if (b == c) return {12.0, 6.0, 6.0};
    // All distinct: arc to the nearest player clockwise plus the arc to the
    // nearest player anticlockwise.
    std::vector<double> u(3);
    for (int i = 0; i < 3; ++i) {
      int cw = kLemonadeSpots, acw = kLemonadeSpots;
      for (int j = 0; j < 3; ++j) {
        if (j == i) continue;
        cw = std::min(cw, ((pos[j] - pos[i]) % kLemonadeSpots + kLemonadeSpots) % kLemonadeSpots);
        acw = std::min(acw, ((pos[i] - pos[j]) % kLemonadeSpots + kLemonadeSpots) % kLemonadeSpots);
      }
      u[i] = cw + acw;
    }
    return u;
  };
  auto metric = [](ActionId x, ActionId y) {
    return static_cast<double>(RingDistance(x, y, kLemonadeSpots));
  };
  auto br = [](Player, Player, ActionId a_j) {
    return std::vector<ActionId>{(a_j + kLemonadeSpots / 2) % kLemonadeSpots};
  };
  return NormalFormGame("lsg", std::vector<int>(3, kLemonadeSpots), payoff, metric, br,
                        kLemonadeTotal);
}

std::vector<ActionId> BestResponseSet(const NormalFormGame& game, Player i,
                                      const std::vector<ActionId>& others) {
  game.CheckPlayer(i);
  if (static_cast<int>(others.size()) != game.num_players() - 1) {
    throw std::invalid_argument("expected one action per opponent");
  }
  JointAction joint = InsertAt(others, i, 0);
  for (Player p = 0; p < game.num_players(); ++p) {
    if (p != i) game.CheckAction(p, joint[p]);
  }
  std::vector<ActionId> best;
  double best_value = 0;
  for (ActionId a = 0; a < game.num_actions(i); ++a) {
    joint[i] = a;
    double r = game.Payoff(joint)[i];
    if (best.empty() || r > best_value) {
      best_value = r;
      best = {a};
    } else if (r == best_value) {
      best.push_back(a);
    }
  }
  return best;
}

std::vector<ActionId> ConsideredBestResponse(const NormalFormGame& game, Player i, Player j,
                                             const std::vector<ActionId>& others) {
  game.CheckPlayer(j);
  if (i == j) throw std::invalid_argument("considered best response needs j != i");
  std::vector<ActionId> br = BestResponseSet(game, i, others);
  JointAction joint = InsertAt(others, i, 0);
  std::vector<ActionId> best;
  double best_value = 0;
  for (ActionId a : br) {
    joint[i] = a;
    double rj = game.Payoff(joint)[j];
    if (best.empty() || rj > best_value) {
      best_value = rj;
      best = {a};
    } else if (rj == best_value) {
      best.push_back(a);
    }
  }
  return best;
}

std::vector<ActionId> ReciprocalBestResponse(const NormalFormGame& game, Player i, Player j,
                                             const std::vector<ActionId>& rest, ActionId a_j) {
  game.CheckPlayer(i);
  game.CheckPlayer(j);
  if (i == j) throw std::invalid_argument("reciprocal best response needs j != i");
  if (static_cast<int>(rest.size()) != game.num_players() - 2) {
    throw std::invalid_argument("expected one action per player other than i and j");
  }
  // Opponents of i, in seat order, with j's slot holding a_j.
  std::vector<ActionId> others_of_i;
  for (Player p = 0, k = 0; p < game.num_players(); ++p) {
    if (p == i) continue;
    others_of_i.push_back(p == j ? a_j : rest[k]);
    if (p != j) ++k;
  }
  std::vector<ActionId> considered = ConsideredBestResponse(game, i, j, others_of_i);

  std::vector<ActionId> reciprocal;
  for (ActionId a_i : considered) {
    std::vector<ActionId> others_of_j;
    for (Player p = 0, k = 0; p < game.num_players(); ++p) {
      if (p == j) continue;
      others_of_j.push_back(p == i ? a_i : rest[k]);
      if (p != i) ++k;
    }
    std::vector<ActionId> br_j = BestResponseSet(game, j, others_of_j);
    if (std::find(br_j.begin(), br_j.end(), a_j) != br_j.end()) reciprocal.push_back(a_i);
  }
  return reciprocal;
}

std::vector<JointAction> PureNashEquilibria(const NormalFormGame& game,
                                            long long enumeration_cap) {
  long long profiles = 1;
  for (Player i = 0; i < game.num_players(); ++i) {
    profiles *= game.num_actions(i);
    if (profiles > enumeration_cap) {
      throw std::runtime_error("pure Nash enumeration needs " + std::to_string(profiles) +
                               "+ profiles, cap is " + std::to_string(enumeration_cap));
    }
  }
  std::vector<JointAction> equilibria;
  JointAction profile(game.num_players(), 0);
  while (true) {
    std::vector<double> u = game.Payoff(profile);
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
    if (nash) equilibria.push_back(profile);
    int p = game.num_players() - 1;
    while (p >= 0 && ++profile[p] == game.num_actions(p)) profile[p--] = 0;
    if (p < 0) break;
  }
  return equilibria;
}

double DistanceToSet(const NormalFormGame& game, ActionId a, const std::vector<ActionId>& set) {
  if (set.empty()) throw std::invalid_argument("distance to an empty action set is undefined");
  double best = game.Metric(a, set[0]);
  for (size_t k = 1; k < set.size(); ++k) best = std::min(best, game.Metric(a, set[k]));
  return best;
}

}  // namespace teamup
