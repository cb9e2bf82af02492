"""Deviation-planning harness for small cooperative games.

Thin wrapper over the C++ core: build an :class:`ExperimentConfig`, then call
:func:`run_experiment`, :func:`compare` or :func:`expected_episode_value`.
"""

from ._core import (
    CompareResult,
    DeviationEvent,
    EpisodeRecord,
    ExperimentConfig,
    FinesseSituation,
    PlannerConfig,
    RunResult,
    SedError,
    SummaryReport,
    apply_json,
    compare,
    default_config,
    episode_json,
    expected_episode_value,
    finesse_completes,
    mine_finesse,
    run_experiment,
)

__all__ = [
    "CompareResult",
    "DeviationEvent",
    "EpisodeRecord",
    "ExperimentConfig",
    "FinesseSituation",
    "PlannerConfig",
    "RunResult",
    "SedError",
    "SummaryReport",
    "apply_json",
    "compare",
    "config",
    "default_config",
    "episode_json",
    "expected_episode_value",
    "finesse_completes",
    "mine_finesse",
    "run_experiment",
]

__version__ = "0.1.0"


def config(**kwargs):
    """Build an :class:`ExperimentConfig`, applying keyword overrides.

    Planner fields are reached with a ``planner_`` prefix, e.g.
    ``config(env="mini-hanabi", mode="expected", planner_M=400)``.
    """
    cfg = ExperimentConfig()
    for key, value in kwargs.items():
        if key.startswith("planner_"):
            target, name = cfg.planner, key[len("planner_"):]
        else:
            target, name = cfg, key
        if not hasattr(target, name):
            raise AttributeError(f"unknown config field: {key}")
        setattr(target, name, value)
    return cfg
