"""Deterministic treasure hunt on port-numbered rooted trees: simulator,
search strategies, adversarial families, brute-force oracles and metrics."""

from .engine import Observation, Strategy, Trace, cost_until_level, run
from .strategies import (
    Algorithm1,
    DfsToLevel,
    Doubling,
    Incremental,
    OptimalKnown,
    ScheduleStep,
    ScheduleTrace,
    SpineWalk,
    blind_schedule,
    make_strategy,
    optimal_known,
)
from .tree import (
    BlindMap,
    Knowledge,
    KnowledgeKind,
    LevelProfile,
    PortTree,
    blind_code,
    knowledge_for,
    level_counts,
    relabel_count,
    relabelings_exhaustive,
    relabelings_sampled,
    tree_from_json,
    tree_to_json,
    validate,
)

__all__ = [
    "Algorithm1", "BlindMap", "DfsToLevel", "Doubling", "Incremental",
    "Knowledge", "KnowledgeKind", "LevelProfile", "Observation",
    "OptimalKnown", "PortTree", "ScheduleStep", "ScheduleTrace", "SpineWalk",
    "Strategy", "Trace", "blind_code", "blind_schedule", "cost_until_level",
    "knowledge_for", "level_counts", "make_strategy", "optimal_known",
    "relabel_count", "relabelings_exhaustive", "relabelings_sampled", "run",
    "tree_from_json", "tree_to_json", "validate",
]
