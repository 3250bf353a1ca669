"""Finite structural causal models and fifteen definitions of actual causation."""

from .causation import DefinitionId, Effect, Verdict, find_all_causes, is_cause, is_part_of_cause
from .dsl import parse, serialize
from .scm import CausalModel, Equation, Variable, holds, intervene, solve

__version__ = "0.1.0"

__all__ = [
    "CausalModel", "DefinitionId", "Effect", "Equation", "Variable", "Verdict", "find_all_causes",
    "holds", "intervene", "is_cause", "is_part_of_cause", "parse", "serialize", "solve",
]
