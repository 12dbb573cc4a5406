// Python bindings for the core operations: games and best responses,
// lead/follow indices and classification, the planner, the opponent zoo, and
// the match/tournament harness.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "teamup/io.hpp"

namespace py = pybind11;

namespace teamup {
namespace {

AgentSpec SpecFromKwargs(const std::string& kind, int target, double noise, double threshold,
                         int position, std::optional<std::uint64_t> seed,
                         const TeamUpConfig& teamup) {
  AgentSpec spec;
  spec.kind = AgentSpec::KindFromName(kind);
  spec.target = target;
  spec.noise = noise;
  spec.threshold = threshold;
  spec.position = position;
  spec.seed = seed;
  spec.teamup = teamup;
  return spec;
}

py::dict SummaryToDict(const StateVisitSummary& s) {
  py::dict d;
  d["optimal"] = s.optimal;
  d["worst"] = s.worst;
  d["other"] = s.other;
  return d;
}

}  // namespace

PYBIND11_MODULE(_teamup, m) {
  m.doc() = "Lead/follow planning agents for repeated constant-sum games";

  py::class_<NormalFormGame>(m, "NormalFormGame")
      .def_property_readonly("num_players", &NormalFormGame::num_players)
      .def_property_readonly("name", &NormalFormGame::name)
      .def_property_readonly("constant_sum",
                             [](const NormalFormGame& g) { return g.constant_sum(); })
      .def("num_actions", &NormalFormGame::num_actions, py::arg("player"))
      .def("payoff", &NormalFormGame::Payoff, py::arg("actions"))
      .def("metric", &NormalFormGame::Metric, py::arg("x"), py::arg("y"))
      .def("pairwise_best_response", &NormalFormGame::PairwiseBestResponse, py::arg("i"),
           py::arg("j"), py::arg("action_j"));

  m.def("lemonade_game", &LemonadeGame);
  m.def(
      "game_from_table",
      [](std::string name, std::vector<int> action_counts,
         std::vector<std::vector<double>> payoffs, const std::string& metric,
         std::optional<double> constant_sum) {
        return NormalFormGame::FromTable(
            std::move(name), std::move(action_counts), std::move(payoffs),
            metric == "ring" ? MetricKind::kRing : MetricKind::kDiscrete, constant_sum);
      },
      py::arg("name"), py::arg("action_counts"), py::arg("payoffs"),
      py::arg("metric") = "discrete", py::arg("constant_sum") = std::nullopt);

  m.def("best_response_set", &BestResponseSet, py::arg("game"), py::arg("player"),
        py::arg("others"));
  m.def("considered_best_response", &ConsideredBestResponse, py::arg("game"), py::arg("i"),
        py::arg("j"), py::arg("others"));
  m.def("reciprocal_best_response", &ReciprocalBestResponse, py::arg("game"), py::arg("i"),
        py::arg("j"), py::arg("rest"), py::arg("action_j"));
  m.def("pure_nash_equilibria", &PureNashEquilibria, py::arg("game"),
        py::arg("enumeration_cap") = 1'000'000);
  m.def("distance_to_set", &DistanceToSet, py::arg("game"), py::arg("action"), py::arg("set"));

  py::class_<AbstractionParams>(m, "AbstractionParams")
      .def(py::init<>())
      .def(py::init<double, double, double>(), py::arg("gamma"), py::arg("rho"),
           py::arg("delta"))
      .def_readonly("gamma", &AbstractionParams::gamma)
      .def_readonly("rho", &AbstractionParams::rho)
      .def_readonly("delta", &AbstractionParams::delta);

  py::class_<BehaviorFeature>(m, "BehaviorFeature")
      .def_static("lead", &BehaviorFeature::Lead)
      .def_static("follow", &BehaviorFeature::Follow, py::arg("target"))
      .def_static("other", &BehaviorFeature::Other)
      .def_property_readonly("is_lead", &BehaviorFeature::is_lead)
      .def_property_readonly("is_follow", &BehaviorFeature::is_follow)
      .def_property_readonly("is_other", &BehaviorFeature::is_other)
      .def_readonly("target", &BehaviorFeature::target)
      .def("__eq__", [](const BehaviorFeature& a, const BehaviorFeature& b) { return a == b; })
      .def("__str__", &BehaviorFeature::ToString)
      .def("__repr__", &BehaviorFeature::ToString);

  py::class_<ActionHistory>(m, "ActionHistory")
      .def(py::init<int>(), py::arg("num_players"))
      .def("append", &ActionHistory::Append, py::arg("actions"))
      .def_property_readonly("length", &ActionHistory::length)
      .def_property_readonly("stage", &ActionHistory::stage)
      .def("of", &ActionHistory::Of, py::arg("player"));

  py::class_<FeatureFloor>(m, "FeatureFloor")
      .def_readonly("f_min", &FeatureFloor::f_min)
      .def_readonly("bound", &FeatureFloor::bound);
  m.def("feature_floor", &ComputeFeatureFloor, py::arg("game"), py::arg("player"),
        py::arg("params"));

  m.def("lead_index", &LeadIndex, py::arg("game"), py::arg("history"), py::arg("params"));
  m.def("follow_index", &FollowIndex, py::arg("game"), py::arg("i"), py::arg("j"),
        py::arg("history_i"), py::arg("history_j"), py::arg("params"));

  py::class_<IndexReport>(m, "IndexReport")
      .def_readonly("player", &IndexReport::player)
      .def_readonly("lead", &IndexReport::lead)
      .def_readonly("follow", &IndexReport::follow)
      .def_readonly("gamma_norm", &IndexReport::gamma_norm)
      .def_readonly("f_min", &IndexReport::f_min)
      .def_readonly("bound", &IndexReport::bound);
  m.def("compute_indices", &ComputeIndices, py::arg("game"), py::arg("history"),
        py::arg("player"), py::arg("params"));
  m.def("classify", &Classify, py::arg("game"), py::arg("history"), py::arg("player"),
        py::arg("params"), py::arg("preferred_target"));

  py::class_<TeamUpConfig>(m, "TeamUpConfig")
      .def(py::init<>())
      .def_readwrite("gamma", &TeamUpConfig::gamma)
      .def_readwrite("rho", &TeamUpConfig::rho)
      .def_readwrite("delta", &TeamUpConfig::delta)
      .def_readwrite("epsilon", &TeamUpConfig::epsilon)
      .def_readwrite("planning_discount", &TeamUpConfig::planning_discount)
      .def_readwrite("k_known", &TeamUpConfig::k_known)
      .def_readwrite("vi_tolerance", &TeamUpConfig::vi_tolerance)
      .def_readwrite("r_max", &TeamUpConfig::r_max)
      .def_readwrite("r_min", &TeamUpConfig::r_min)
      .def_readwrite("online_shaping", &TeamUpConfig::online_shaping)
      .def_readwrite("initial_position", &TeamUpConfig::initial_position);

  py::class_<AgentSpec>(m, "AgentSpec")
      .def(py::init(&SpecFromKwargs), py::arg("kind"), py::arg("target") = -1,
           py::arg("noise") = 0.1, py::arg("threshold") = -1.0, py::arg("position") = -1,
           py::arg("seed") = std::nullopt, py::arg("teamup") = TeamUpConfig{})
      .def_property_readonly("kind", &AgentSpec::KindName)
      .def_readonly("target", &AgentSpec::target)
      .def_readonly("position", &AgentSpec::position);

  py::class_<StageRecord>(m, "StageRecord")
      .def_readonly("stage", &StageRecord::stage)
      .def_readonly("actions", &StageRecord::actions)
      .def_readonly("utilities", &StageRecord::utilities)
      .def_readonly("features", &StageRecord::features)
      .def_readonly("planner_state", &StageRecord::planner_state)
      .def_readonly("planner_action", &StageRecord::planner_action)
      .def_readonly("replanned", &StageRecord::replanned);

  py::class_<MatchResult>(m, "MatchResult")
      .def_readonly("agent_names", &MatchResult::agent_names)
      .def_readonly("stage_records", &MatchResult::stage_records)
      .def_readonly("teamup_seat", &MatchResult::teamup_seat)
      .def_property_readonly("num_stages", &MatchResult::num_stages)
      .def("mean_utility", &MatchResult::MeanUtility, py::arg("player"),
           py::arg("stage_lo") = 1, py::arg("stage_hi") = -1);

  m.def(
      "run_match",
      [](const NormalFormGame& game, const std::vector<AgentSpec>& agents, int stages,
         std::uint64_t seed, bool record_features) {
        MatchConfig config;
        config.game = game;
        config.agents = agents;
        config.stages = stages;
        config.seed = seed;
        config.record_features = record_features;
        return RunMatch(config);
      },
      py::arg("game"), py::arg("agents"), py::arg("stages") = 100, py::arg("seed") = 0,
      py::arg("record_features") = true);

  py::class_<TournamentRow>(m, "TournamentRow")
      .def_readonly("rank", &TournamentRow::rank)
      .def_readonly("strategy", &TournamentRow::strategy)
      .def_readonly("avg_utility", &TournamentRow::avg_utility)
      .def_readonly("std_err", &TournamentRow::std_err)
      .def_readonly("matches", &TournamentRow::matches);
  py::class_<TournamentTable>(m, "TournamentTable")
      .def_readonly("rows", &TournamentTable::rows);
  m.def("run_tournament", &RunTournament, py::arg("roster"), py::arg("game"),
        py::arg("stages") = 100, py::arg("repeats") = 30, py::arg("seed") = 0,
        py::arg("threads") = 1);

  m.def(
      "state_visit_summary",
      [](const MatchResult& result, const NormalFormGame& game, Player planner,
         const AbstractionParams& params, int stage_lo, int stage_hi) {
        return SummaryToDict(
            SummarizeStateVisits(result, game, planner, params, stage_lo, stage_hi));
      },
      py::arg("result"), py::arg("game"), py::arg("planner") = 0,
      py::arg("params") = AbstractionParams{}, py::arg("stage_lo") = 1,
      py::arg("stage_hi") = -1);

  m.def("write_trace", &WriteTrace, py::arg("result"), py::arg("path"));
  m.def("read_trace", &ReadTrace, py::arg("path"));
  m.def("write_table", &WriteTable, py::arg("table"), py::arg("path"));
  m.def("validate_trace", &ValidateTrace, py::arg("game"), py::arg("path"));
}

}  // namespace teamup
