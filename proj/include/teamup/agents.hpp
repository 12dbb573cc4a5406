#ifndef TEAMUP_AGENTS_HPP
#define TEAMUP_AGENTS_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "teamup/planner.hpp"

namespace teamup {

// Declarative description of a match participant. The zoo agents are
// behavioural stand-ins for common styles of play: stationary leads, perfect
// followers, random noise, and simple adaptive partners.
struct AgentSpec {
  enum class Kind {
    kTeamUp,
    kConstantLead,
    kIdealFollower,
    kUniformRandom,
    kNoisyLead,
    kSatisficingCycler,
    kMyopicPartner,
  };

  Kind kind = Kind::kUniformRandom;
  // ideal_follower: seat of the followed player; -1 means the next seat.
  int target = -1;
  // noisy_lead: per-stage probability of stepping off the home position.
  double noise = 0.1;
  // satisficing_cycler / myopic_partner: reward level that counts as "good
  // enough"; -1 picks the per-kind default (7 for the cycler, 8 for the
  // myopic partner).
  double threshold = -1.0;
  // Fixed initial position; -1 draws it from the agent's seed.
  int position = -1;
  // Explicit RNG seed; unset derives one from the match seed and seat.
  std::optional<std::uint64_t> seed;
  // Planner parameters, used when kind == kTeamUp.
  TeamUpConfig teamup;

  std::string KindName() const;
  static Kind KindFromName(const std::string& name);
};

// Instantiates the agent described by `spec` for one match.
std::unique_ptr<Agent> MakeAgent(const AgentSpec& spec, const NormalFormGame& game, Player seat,
                                 std::uint64_t seed);

}  // namespace teamup

#endif  // TEAMUP_AGENTS_HPP
