"""Workbench tools: evaluation, evolution, attractor analysis, exhaustive search."""

from .attractor_atlas import AttractorAtlas, classify_functions, find_orbits
from .evaluator import EvalReport, Environment, enumerate_all_environments, evaluate
from .evolution import GaConfig, RunLog, run_evolution
from .exhaustive_search import ExhaustReport, exhaustive_search

__all__ = [
    'AttractorAtlas', 'classify_functions', 'find_orbits',
    'EvalReport', 'Environment', 'enumerate_all_environments', 'evaluate',
    'GaConfig', 'RunLog', 'run_evolution',
    'ExhaustReport', 'exhaustive_search',
]
