"""Lead/follow planning agents for repeated constant-sum games."""

from ._teamup import (
    AbstractionParams,
    ActionHistory,
    AgentSpec,
    BehaviorFeature,
    FeatureFloor,
    IndexReport,
    MatchResult,
    NormalFormGame,
    StageRecord,
    TeamUpConfig,
    TournamentRow,
    TournamentTable,
    best_response_set,
    classify,
    compute_indices,
    considered_best_response,
    distance_to_set,
    feature_floor,
    follow_index,
    game_from_table,
    lead_index,
    lemonade_game,
    pure_nash_equilibria,
    read_trace,
    reciprocal_best_response,
    run_match,
    run_tournament,
    state_visit_summary,
    validate_trace,
    write_table,
    write_trace,
)

__all__ = [
    "AbstractionParams",
    "ActionHistory",
    "AgentSpec",
    "BehaviorFeature",
    "FeatureFloor",
    "IndexReport",
    "MatchResult",
    "NormalFormGame",
    "StageRecord",
    "TeamUpConfig",
    "TournamentRow",
    "TournamentTable",
    "best_response_set",
    "classify",
    "compute_indices",
    "considered_best_response",
    "distance_to_set",
    "feature_floor",
    "follow_index",
    "game_from_table",
    "lead_index",
    "lemonade_game",
    "pure_nash_equilibria",
    "read_trace",
    "reciprocal_best_response",
    "run_match",
    "run_tournament",
    "state_visit_summary",
    "validate_trace",
    "write_table",
    "write_trace",
]
