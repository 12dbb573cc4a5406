#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "teamup/agents.hpp"
#include "teamup/rng.hpp"

using namespace teamup;

namespace {

AgentSpec Spec(AgentSpec::Kind kind) {
  AgentSpec s;
  s.kind = kind;
  return s;
}

// Drives one agent at `seat` against scripted opponents; returns its actions.
template <typename Script>
std::vector<ActionId> Drive(Agent& agent, Player seat, int stages, Script&& opponents) {
  NormalFormGame lsg = LemonadeGame();
  ActionHistory history(3);
  std::vector<ActionId> actions;
  for (int stage = 1; stage <= stages; ++stage) {
    JointAction joint = opponents(stage, history);
    joint[seat] = agent.Act(history);
    actions.push_back(joint[seat]);
    history.Append(joint);
  }
  return actions;
}

}  // namespace

TEST_CASE("constant lead never moves and has lead index exactly zero") {
  NormalFormGame lsg = LemonadeGame();
  AgentSpec spec = Spec(AgentSpec::Kind::kConstantLead);
  spec.position = 4;
  auto agent = MakeAgent(spec, lsg, 0, 1);
  Rng noise(3);
  ActionHistory history(3);
  for (int stage = 1; stage <= 30; ++stage) {
    const ActionId a = agent->Act(history);
    CHECK(a == 4);
    history.Append({a, noise.UniformInt(12), noise.UniformInt(12)});
    if (history.length() >= 2) {
      CHECK(LeadIndex(lsg, history.Of(0), AbstractionParams()) == 0.0);
    }
  }
}

TEST_CASE("ideal follower plays opposite its target from stage two") {
  NormalFormGame lsg = LemonadeGame();
  AgentSpec spec = Spec(AgentSpec::Kind::kIdealFollower);
  spec.target = 0;
  auto agent = MakeAgent(spec, lsg, 1, 5);
  Rng noise(9);
  ActionHistory history(3);
  for (int stage = 1; stage <= 30; ++stage) {
    const ActionId a = agent->Act(history);
    if (stage >= 2) CHECK(a == (history.Of(0).back() + 6) % 12);
    history.Append({noise.UniformInt(12), a, noise.UniformInt(12)});
    if (history.length() >= 2) {
      CHECK(FollowIndex(lsg, 1, 0, history.Of(1), history.Of(0), AbstractionParams()) == 0.0);
    }
  }
  CHECK(MakeAgent(spec, lsg, 1, 5)->name() == "ideal_follower");

  SUBCASE("stated example: target last at 9 means play 3") {
    auto follower = MakeAgent(spec, lsg, 1, 5);
    ActionHistory h(3);
    follower->Act(h);
    h.Append({9, 0, 0});
    CHECK(follower->Act(h) == 3);
  }
  SUBCASE("self-targeting is rejected") {
    spec.target = 1;
    CHECK_THROWS_AS(MakeAgent(spec, lsg, 1, 5), std::invalid_argument);
  }
}

TEST_CASE("every zoo agent is deterministic given seed and observations") {
  NormalFormGame lsg = LemonadeGame();
  for (AgentSpec::Kind kind :
       {AgentSpec::Kind::kConstantLead, AgentSpec::Kind::kIdealFollower,
        AgentSpec::Kind::kUniformRandom, AgentSpec::Kind::kNoisyLead,
        AgentSpec::Kind::kSatisficingCycler, AgentSpec::Kind::kMyopicPartner}) {
    AgentSpec spec = Spec(kind);
    if (kind == AgentSpec::Kind::kIdealFollower) spec.target = 0;
    auto run = [&] {
      auto agent = MakeAgent(spec, lsg, 1, 77);
      Rng noise(123);
      return Drive(*agent, 1, 40, [&](int, const ActionHistory&) {
        return JointAction{noise.UniformInt(12), 0, noise.UniformInt(12)};
      });
    };
    CHECK(run() == run());
  }
}

TEST_CASE("uniform random actions pass a chi-squared uniformity check") {
  NormalFormGame lsg = LemonadeGame();
  auto agent = MakeAgent(Spec(AgentSpec::Kind::kUniformRandom), lsg, 0, 2024);
  ActionHistory history(3);
  std::array<int, 12> bins{};
  const int draws = 10000;
  for (int k = 0; k < draws; ++k) {
    const ActionId a = agent->Act(history);
    ++bins[a];
    history.Append({a, 0, 0});
  }
  const double expected = draws / 12.0;
  double chi2 = 0;
  for (int count : bins) chi2 += (count - expected) * (count - expected) / expected;
  // 99th percentile of chi-squared with 11 degrees of freedom.
  CHECK(chi2 < 24.725);
}

TEST_CASE("noisy lead stays near home") {
  NormalFormGame lsg = LemonadeGame();
  AgentSpec spec = Spec(AgentSpec::Kind::kNoisyLead);
  spec.position = 6;
  spec.noise = 0.3;
  auto agent = MakeAgent(spec, lsg, 0, 9);
  ActionHistory history(3);
  int off_home = 0;
  for (int k = 0; k < 2000; ++k) {
    const ActionId a = agent->Act(history);
    CHECK(RingDistance(a, 6, 12) <= 1);
    off_home += a != 6;
    history.Append({a, 0, 0});
  }
  // Roughly the configured rate, and both directions occur.
  CHECK(off_home > 2000 * 0.2);
  CHECK(off_home < 2000 * 0.4);

  spec.noise = 0.0;
  auto quiet = MakeAgent(spec, lsg, 0, 9);
  ActionHistory h2(3);
  for (int k = 0; k < 20; ++k) {
    CHECK(quiet->Act(h2) == 6);
    h2.Append({6, 0, 0});
  }
  spec.noise = 1.5;
  CHECK_THROWS_AS(MakeAgent(spec, lsg, 0, 9), std::invalid_argument);
}

TEST_CASE("satisficing cycler advances mode exactly when underpaid") {
  NormalFormGame lsg = LemonadeGame();
  AgentSpec spec = Spec(AgentSpec::Kind::kSatisficingCycler);
  spec.position = 0;

  SUBCASE("starved cycler switches every stage") {
    // Opponents pin the cycler to utility 6 every stage: below the default
    // threshold of 7, so lead -> follow(1) -> follow(2) -> lead -> ...
    auto agent = MakeAgent(spec, lsg, 2, 11);
    ActionHistory history(3);
    JointAction pair{3, 9};
    std::vector<ActionId> actions;
    for (int stage = 1; stage <= 7; ++stage) {
      const ActionId a = agent->Act(history);
      actions.push_back(a);
      history.Append({pair[0], pair[1], a});
    }
    // Stage 2: reward was 6 < 7, move to follow(0): opposite of 3 is 9.
    CHECK(actions[1] == 9);
    // Stage 3: follow(1): opposite of 9 is 3.
    CHECK(actions[2] == 3);
    // Stage 4: back to lead: repeat its own previous action.
    CHECK(actions[3] == 3);
    // Stage 5: follow(0) again.
    CHECK(actions[4] == 9);
  }
  SUBCASE("satisfied cycler keeps its mode") {
    // Opponents co-locate, handing the cycler 12 every stage.
    auto agent = MakeAgent(spec, lsg, 2, 11);
    ActionHistory history(3);
    for (int stage = 1; stage <= 10; ++stage) {
      const ActionId a = agent->Act(history);
      CHECK(a == 0);  // leads at its fixed position forever
      history.Append({5, 5, a});
    }
  }
  SUBCASE("threshold bounds are enforced") {
    spec.threshold = 24.0;
    CHECK_THROWS_AS(MakeAgent(spec, lsg, 0, 1), std::invalid_argument);
    spec.threshold = 0.0;
    CHECK_THROWS_AS(MakeAgent(spec, lsg, 0, 1), std::invalid_argument);
  }
}

TEST_CASE("myopic partner chases the cleaner lead when hungry") {
  NormalFormGame lsg = LemonadeGame();
  AgentSpec spec = Spec(AgentSpec::Kind::kMyopicPartner);
  spec.position = 1;
  auto agent = MakeAgent(spec, lsg, 2, 13);
  ActionHistory history(3);

  // Player 0 sits still; player 1 mostly sits but jiggles, spoiling its lead
  // index. Squeezed near 6 utility, the hungry partner best-responds to the
  // cleaner lead; once locked opposite it, sticking coincides with following.
  const std::vector<ActionId> jiggly{0, 0, 1, 0, 2, 0, 1, 0, 3, 0};
  for (int stage = 1; stage <= 10; ++stage) {
    const ActionId a = agent->Act(history);
    if (stage >= 3) CHECK(a == (history.Of(0).back() + 6) % 12);
    history.Append({6, jiggly[stage - 1], a});
  }
}

TEST_CASE("myopic partner sticks while satisfied") {
  NormalFormGame lsg = LemonadeGame();
  AgentSpec spec = Spec(AgentSpec::Kind::kMyopicPartner);
  spec.position = 0;
  auto agent = MakeAgent(spec, lsg, 2, 13);
  ActionHistory history(3);
  // Opponents stacked on one spot give the partner 12 > 8 every stage.
  for (int stage = 1; stage <= 8; ++stage) {
    const ActionId a = agent->Act(history);
    CHECK(a == 0);
    history.Append({5, 5, a});
  }
}

TEST_CASE("agent spec kinds round-trip through names") {
  for (AgentSpec::Kind kind :
       {AgentSpec::Kind::kTeamUp, AgentSpec::Kind::kConstantLead,
        AgentSpec::Kind::kIdealFollower, AgentSpec::Kind::kUniformRandom,
        AgentSpec::Kind::kNoisyLead, AgentSpec::Kind::kSatisficingCycler,
        AgentSpec::Kind::kMyopicPartner}) {
    CHECK(AgentSpec::KindFromName(Spec(kind).KindName()) == kind);
  }
  CHECK_THROWS_AS(AgentSpec::KindFromName("nonsense"), std::invalid_argument);
}
