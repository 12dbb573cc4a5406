#ifndef TEAMUP_AGENT_HPP
#define TEAMUP_AGENT_HPP

#include <string>

#include "teamup/abstraction.hpp"

namespace teamup {

// A player in a repeated game. Act is called once per stage, in stage order;
// `history` holds the announced joint actions of all completed stages, so
// every agent decides simultaneously on the same information. Agents own a
// single match and carry no shared mutable state, so separate instances may
// run on separate threads.
class Agent {
 public:
  virtual ~Agent() = default;

  virtual ActionId Act(const ActionHistory& history) = 0;

  virtual const std::string& name() const = 0;
};

}  // namespace teamup

#endif  // TEAMUP_AGENT_HPP
