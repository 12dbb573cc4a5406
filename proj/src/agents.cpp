#include "teamup/agents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "teamup/rng.hpp"

namespace teamup {

namespace {

class ZooAgent : public Agent {
 public:
  ZooAgent(std::string name, const NormalFormGame& game, Player seat, std::uint64_t seed,
           int fixed_position)
      : name_(std::move(name)), game_(game), seat_(seat), rng_(seed) {
    game_.CheckPlayer(seat_);
    if (fixed_position >= 0) {
      game_.CheckAction(seat_, fixed_position);
      initial_position_ = fixed_position;
    } else {
      initial_position_ = rng_.UniformInt(game_.num_actions(seat_));
    }
  }

  const std::string& name() const override { return name_; }

 protected:
  double LastReward(const ActionHistory& history) const {
    return game_.Payoff(history.StageActions(history.length()))[seat_];
  }

  ActionId FollowSeat(const ActionHistory& history, Player j) const {
    return game_.PairwiseBestResponse(seat_, j, history.Of(j).back()).front();
  }

  std::string name_;
  NormalFormGame game_;
  Player seat_;
  Rng rng_;
  int initial_position_;
};

class ConstantLeadAgent final : public ZooAgent {
 public:
  using ZooAgent::ZooAgent;
  ActionId Act(const ActionHistory&) override { return initial_position_; }
};

class IdealFollowerAgent final : public ZooAgent {
 public:
  IdealFollowerAgent(const NormalFormGame& game, Player seat, std::uint64_t seed,
                     int fixed_position, Player target)
      : ZooAgent("ideal_follower", game, seat, seed, fixed_position), target_(target) {
    game_.CheckPlayer(target_);
    if (target_ == seat_) throw std::invalid_argument("a follower cannot target itself");
  }

  ActionId Act(const ActionHistory& history) override {
    if (history.length() == 0) return initial_position_;
    return FollowSeat(history, target_);
  }

 private:
  Player target_;
};

class UniformRandomAgent final : public ZooAgent {
 public:
  using ZooAgent::ZooAgent;
  ActionId Act(const ActionHistory&) override {
    return rng_.UniformInt(game_.num_actions(seat_));
  }
};

// Sits on a home position; occasionally wobbles one step off it for a stage.
class NoisyLeadAgent final : public ZooAgent {
 public:
  NoisyLeadAgent(const NormalFormGame& game, Player seat, std::uint64_t seed, int fixed_position,
                 double noise)
      : ZooAgent("noisy_lead", game, seat, seed, fixed_position), noise_(noise) {
    if (!(noise_ >= 0.0 && noise_ <= 1.0)) {
      throw std::invalid_argument("noise probability must be in [0, 1]");
    }
  }

  ActionId Act(const ActionHistory&) override {
    const int m = game_.num_actions(seat_);
    if (!rng_.Bernoulli(noise_)) return initial_position_;
    const int step = rng_.Bernoulli(0.5) ? 1 : m - 1;
    return (initial_position_ + step) % m;
  }

 private:
  double noise_;
};

// Cycles lead -> follow(first opponent) -> follow(second opponent) -> ...,
// advancing whenever the previous stage paid below the acceptable level.
class SatisficingCyclerAgent final : public ZooAgent {
 public:
  SatisficingCyclerAgent(const NormalFormGame& game, Player seat, std::uint64_t seed,
                         int fixed_position, double threshold)
      : ZooAgent("satisficing_cycler", game, seat, seed, fixed_position), threshold_(threshold) {
    for (Player p = 0; p < game_.num_players(); ++p) {
      if (p != seat_) opponents_.push_back(p);
    }
  }

  ActionId Act(const ActionHistory& history) override {
    if (history.length() == 0) return initial_position_;
    if (LastReward(history) < threshold_) {
      mode_ = (mode_ + 1) % (1 + static_cast<int>(opponents_.size()));
    }
    if (mode_ == 0) return history.Of(seat_).back();
    return FollowSeat(history, opponents_[mode_ - 1]);
  }

 private:
  double threshold_;
  std::vector<Player> opponents_;
  int mode_ = 0;  // 0 leads, k follows opponents_[k-1]
};

// Best-responds to whichever opponent currently looks most like an ideal
// type, but sticks with the status quo while its own reward is good enough.
class MyopicPartnerAgent final : public ZooAgent {
 public:
  MyopicPartnerAgent(const NormalFormGame& game, Player seat, std::uint64_t seed,
                     int fixed_position, double threshold)
      : ZooAgent("myopic_partner", game, seat, seed, fixed_position), threshold_(threshold) {
    for (Player p = 0; p < game_.num_players(); ++p) {
      if (p != seat_) opponents_.push_back(p);
    }
  }

  ActionId Act(const ActionHistory& history) override {
    if (history.length() == 0) return initial_position_;
    if (history.length() < 2 || LastReward(history) >= threshold_) {
      return history.Of(seat_).back();
    }
    Player best = opponents_.front();
    double best_index = -std::numeric_limits<double>::infinity();
    for (Player j : opponents_) {
      IndexReport report = ComputeIndices(game_, history, j, params_);
      double index = report.lead;
      for (Player k = 0; k < game_.num_players(); ++k) {
        if (k != j) index = std::max(index, report.follow[k]);
      }
      if (index > best_index) {
        best_index = index;
        best = j;
      }
    }
    return FollowSeat(history, best);
  }

 private:
  double threshold_;
  std::vector<Player> opponents_;
  AbstractionParams params_;  // reference parameterization
};

}  // namespace

std::string AgentSpec::KindName() const {
  switch (kind) {
    case Kind::kTeamUp:
      return "teamup";
    case Kind::kConstantLead:
      return "constant_lead";
    case Kind::kIdealFollower:
      return "ideal_follower";
    case Kind::kUniformRandom:
      return "uniform_random";
    case Kind::kNoisyLead:
      return "noisy_lead";
    case Kind::kSatisficingCycler:
      return "satisficing_cycler";
    case Kind::kMyopicPartner:
      return "myopic_partner";
  }
  return "?";
}

AgentSpec::Kind AgentSpec::KindFromName(const std::string& name) {
  if (name == "teamup") return Kind::kTeamUp;
  if (name == "constant_lead") return Kind::kConstantLead;
  if (name == "ideal_follower") return Kind::kIdealFollower;
  if (name == "uniform_random") return Kind::kUniformRandom;
  if (name == "noisy_lead") return Kind::kNoisyLead;
  if (name == "satisficing_cycler") return Kind::kSatisficingCycler;
  if (name == "myopic_partner") return Kind::kMyopicPartner;
  throw std::invalid_argument("unknown agent kind '" + name + "'");
}

std::unique_ptr<Agent> MakeAgent(const AgentSpec& spec, const NormalFormGame& game, Player seat,
                                 std::uint64_t seed) {
  if (spec.seed) seed = *spec.seed;
  const double cap = game.constant_sum().value_or(std::numeric_limits<double>::infinity());
  auto threshold_or = [&](double fallback) {
    const double t = spec.threshold >= 0 ? spec.threshold : fallback;
    if (!(t > 0.0 && t < cap)) {
      throw std::invalid_argument("satisficing threshold must be inside (0, total payoff)");
    }
    return t;
  };

  switch (spec.kind) {
    case AgentSpec::Kind::kTeamUp: {
      TeamUpConfig config = spec.teamup;
      if (spec.position >= 0) config.initial_position = spec.position;
      return std::make_unique<TeamUpAgent>(game, seat, config, seed);
    }
    case AgentSpec::Kind::kConstantLead:
      return std::make_unique<ConstantLeadAgent>("constant_lead", game, seat, seed,
                                                 spec.position);
    case AgentSpec::Kind::kIdealFollower: {
      // Default target: the lowest other seat.
      Player target = spec.target >= 0 ? spec.target : (seat == 0 ? 1 : 0);
      return std::make_unique<IdealFollowerAgent>(game, seat, seed, spec.position, target);
    }
    case AgentSpec::Kind::kUniformRandom:
      return std::make_unique<UniformRandomAgent>("uniform_random", game, seat, seed,
                                                  spec.position);
    case AgentSpec::Kind::kNoisyLead:
      return std::make_unique<NoisyLeadAgent>(game, seat, seed, spec.position, spec.noise);
    case AgentSpec::Kind::kSatisficingCycler:
      return std::make_unique<SatisficingCyclerAgent>(game, seat, seed, spec.position,
                                                      threshold_or(7.0));
    case AgentSpec::Kind::kMyopicPartner:
      return std::make_unique<MyopicPartnerAgent>(game, seat, seed, spec.position,
                                                  threshold_or(8.0));
  }
  throw std::logic_error("unreachable");
}

}  // namespace teamup
