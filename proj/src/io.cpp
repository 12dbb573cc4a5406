#include "teamup/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace teamup {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  json j;
  in >> j;
  return j;
}

std::ofstream OpenOut(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

NormalFormGame GameFromJson(const json& j) {
  if (j.is_null()) return LemonadeGame();
  if (j.is_string()) {
    if (j.get<std::string>() == "lsg") return LemonadeGame();
    throw std::invalid_argument("unknown game '" + j.get<std::string>() + "'");
  }
  if (j.contains("file")) return LoadGameFile(j.at("file").get<std::string>());

  std::vector<int> counts = j.at("actions").get<std::vector<int>>();
  if (j.contains("players") && j.at("players").get<int>() != static_cast<int>(counts.size())) {
    throw std::invalid_argument("player count does not match the action-count list");
  }
  auto payoffs = j.at("payoffs").get<std::vector<std::vector<double>>>();
  MetricKind metric = MetricKind::kDiscrete;
  if (j.contains("metric")) {
    const std::string m = j.at("metric").get<std::string>();
    if (m == "ring") {
      metric = MetricKind::kRing;
    } else if (m != "discrete") {
      throw std::invalid_argument("unknown metric '" + m + "'");
    }
  }
  std::optional<double> constant_sum;
  if (j.contains("constant_sum") && !j.at("constant_sum").is_null()) {
    constant_sum = j.at("constant_sum").get<double>();
  }
  std::optional<std::vector<std::vector<std::vector<std::vector<ActionId>>>>> br;
  if (j.contains("pairwise_br")) {
    br = j.at("pairwise_br")
             .get<std::vector<std::vector<std::vector<std::vector<ActionId>>>>>();
  }
  return NormalFormGame::FromTable(j.value("name", "custom"), std::move(counts),
                                   std::move(payoffs), metric, constant_sum, std::move(br));
}

NormalFormGame LoadGameFile(const std::filesystem::path& path) {
  return GameFromJson(ReadJsonFile(path));
}

AgentSpec AgentSpecFromJson(const json& j) {
  AgentSpec spec;
  if (j.is_string()) {
    spec.kind = AgentSpec::KindFromName(j.get<std::string>());
    return spec;
  }
  spec.kind = AgentSpec::KindFromName(j.at("kind").get<std::string>());
  spec.target = j.value("target", -1);
  spec.noise = j.value("noise", 0.1);
  spec.threshold = j.value("threshold", -1.0);
  spec.position = j.value("position", -1);
  if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("teamup")) {
    const json& t = j.at("teamup");
    spec.teamup.gamma = t.value("gamma", spec.teamup.gamma);
    spec.teamup.rho = t.value("rho", spec.teamup.rho);
    spec.teamup.delta = t.value("delta", spec.teamup.delta);
    spec.teamup.epsilon = t.value("epsilon", spec.teamup.epsilon);
    spec.teamup.planning_discount = t.value("planning_discount", spec.teamup.planning_discount);
    spec.teamup.k_known = t.value("k_known", spec.teamup.k_known);
    spec.teamup.vi_tolerance = t.value("vi_tolerance", spec.teamup.vi_tolerance);
    spec.teamup.r_max = t.value("r_max", spec.teamup.r_max);
    spec.teamup.r_min = t.value("r_min", spec.teamup.r_min);
    spec.teamup.online_shaping = t.value("online_shaping", spec.teamup.online_shaping);
    spec.teamup.initial_position = t.value("initial_position", spec.teamup.initial_position);
  }
  return spec;
}

json ToJson(const AgentSpec& spec) {
  json j;
  j["kind"] = spec.KindName();
  if (spec.target >= 0) j["target"] = spec.target;
  if (spec.kind == AgentSpec::Kind::kNoisyLead) j["noise"] = spec.noise;
  if (spec.threshold >= 0) j["threshold"] = spec.threshold;
  if (spec.position >= 0) j["position"] = spec.position;
  if (spec.seed) j["seed"] = *spec.seed;
  if (spec.kind == AgentSpec::Kind::kTeamUp) {
    j["teamup"] = {{"gamma", spec.teamup.gamma},
                   {"rho", spec.teamup.rho},
                   {"delta", spec.teamup.delta},
                   {"epsilon", spec.teamup.epsilon},
                   {"planning_discount", spec.teamup.planning_discount},
                   {"k_known", spec.teamup.k_known},
                   {"vi_tolerance", spec.teamup.vi_tolerance},
                   {"r_max", spec.teamup.r_max},
                   {"r_min", spec.teamup.r_min},
                   {"online_shaping", spec.teamup.online_shaping},
                   {"initial_position", spec.teamup.initial_position}};
  }
  return j;
}

MatchConfig MatchConfigFromJson(const json& j) {
  MatchConfig config;
  if (j.contains("game")) config.game = GameFromJson(j.at("game"));
  for (const json& a : j.at("agents")) config.agents.push_back(AgentSpecFromJson(a));
  config.stages = j.value("stages", config.stages);
  config.seed = j.value("seed", config.seed);
  config.record_features = j.value("record_features", config.record_features);
  config.record_indices = j.value("record_indices", config.record_indices);
  return config;
}

MatchConfig LoadMatchConfig(const std::filesystem::path& path) {
  return MatchConfigFromJson(ReadJsonFile(path));
}

TournamentConfig TournamentConfigFromJson(const json& j) {
  TournamentConfig config;
  if (j.contains("game")) config.game = GameFromJson(j.at("game"));
  for (const json& a : j.at("roster")) config.roster.push_back(AgentSpecFromJson(a));
  config.stages = j.value("stages", config.stages);
  config.repeats = j.value("repeats", config.repeats);
  config.seed = j.value("seed", config.seed);
  return config;
}

TournamentConfig LoadTournamentConfig(const std::filesystem::path& path) {
  return TournamentConfigFromJson(ReadJsonFile(path));
}

json ToJson(const IndexReport& report) {
  json follow = json::array();
  for (double f : report.follow) {
    if (std::isnan(f)) {
      follow.push_back(nullptr);
    } else {
      follow.push_back(f);
    }
  }
  return json{{"player", report.player}, {"lead", report.lead},
              {"follow", follow},        {"gamma_norm", report.gamma_norm},
              {"f_min", report.f_min},   {"bound", report.bound}};
}

void WriteTrace(const MatchResult& result, const std::filesystem::path& path) {
  std::ofstream out = OpenOut(path);
  for (const StageRecord& rec : result.stage_records) {
    ordered_json line;
    line["stage"] = rec.stage;
    line["actions"] = rec.actions;
    line["utilities"] = rec.utilities;
    json features = json::array();
    for (const BehaviorFeature& f : rec.features) features.push_back(f.ToString());
    line["features"] = features;
    line["planner_state"] = rec.planner_state ? json(*rec.planner_state) : json(nullptr);
    line["planner_action"] = rec.planner_action ? json(*rec.planner_action) : json(nullptr);
    line["replanned"] = rec.replanned;
    if (!rec.index_reports.empty()) {
      json reports = json::array();
      for (const IndexReport& r : rec.index_reports) reports.push_back(ToJson(r));
      line["index_reports"] = reports;
    }
    out << line.dump() << "\n";
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

MatchResult ReadTrace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  MatchResult result;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    StageRecord rec;
    rec.stage = j.at("stage").get<int>();
    rec.actions = j.at("actions").get<JointAction>();
    rec.utilities = j.at("utilities").get<std::vector<double>>();
    for (const json& f : j.at("features")) {
      rec.features.push_back(BehaviorFeature::FromString(f.get<std::string>()));
    }
    if (!j.at("planner_state").is_null()) {
      rec.planner_state = j.at("planner_state").get<std::string>();
    }
    if (!j.at("planner_action").is_null()) {
      rec.planner_action = j.at("planner_action").get<std::string>();
    }
    rec.replanned = j.at("replanned").get<bool>();
    result.stage_records.push_back(std::move(rec));
  }
  if (result.stage_records.empty()) {
    throw std::runtime_error("trace " + path.string() + " holds no stage records");
  }
  const int n = static_cast<int>(result.stage_records.front().actions.size());
  for (int i = 0; i < n; ++i) result.agent_names.push_back("player" + std::to_string(i));
  if (result.stage_records.front().planner_state) {
    // The designated planner seat is not recorded per line; the trace-level
    // consumers that need it (summary) treat seat 0 as the planner unless
    // told otherwise, so mark it only when planner data is present.
    result.teamup_seat = 0;
  }
  return result;
}

void WriteTable(const TournamentTable& table, const std::filesystem::path& path) {
  std::ofstream out = OpenOut(path);
  out << "# std_err = sample standard deviation of per-match mean utilities / sqrt(matches)\n";
  out << "rank,strategy,avg_utility,std_err\n";
  char buf[64];
  for (const TournamentRow& row : table.rows) {
    std::snprintf(buf, sizeof(buf), "%.6f,%.6f", row.avg_utility, row.std_err);
    out << row.rank << "," << row.strategy << "," << buf << "\n";
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void WriteSummary(const StateVisitSummary& summary, const std::filesystem::path& path) {
  std::ofstream out = OpenOut(path);
  out << "state_class,fraction\n";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", summary.optimal);
  out << "optimal," << buf << "\n";
  std::snprintf(buf, sizeof(buf), "%.6f", summary.worst);
  out << "worst," << buf << "\n";
  std::snprintf(buf, sizeof(buf), "%.6f", summary.other);
  out << "other," << buf << "\n";
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

int ValidateTrace(const NormalFormGame& game, const std::filesystem::path& path) {
  MatchResult result = ReadTrace(path);
  for (int s = 0; s < result.num_stages(); ++s) {
    const StageRecord& rec = result.stage_records[s];
    if (rec.stage != s + 1) {
      throw std::runtime_error(path.string() + ": stage numbering breaks at record " +
                               std::to_string(s + 1));
    }
    const std::vector<double> expected = game.Payoff(rec.actions);
    if (expected.size() != rec.utilities.size()) {
      throw std::runtime_error(path.string() + ": stage " + std::to_string(rec.stage) +
                               " has the wrong player count");
    }
    for (size_t i = 0; i < expected.size(); ++i) {
      if (expected[i] != rec.utilities[i]) {
        throw std::runtime_error(path.string() + ": stage " + std::to_string(rec.stage) +
                                 " utilities do not replay from the actions");
      }
    }
    if (game.constant_sum()) {
      double total = 0;
      for (double u : rec.utilities) total += u;
      if (std::abs(total - *game.constant_sum()) > 1e-9) {
        throw std::runtime_error(path.string() + ": stage " + std::to_string(rec.stage) +
                                 " breaks the constant sum");
      }
    }
  }
  return result.num_stages();
}

}  // namespace teamup
