"""Brute-force verification of the claims about the definitions on bounded model families."""

from .checks import (
    BOUNDARY,
    COUNTEREXAMPLES,
    DEFAULT_FAMILIES,
    SUFFICIENCY_FAMILY,
    Claim,
    StoredCounterexample,
    TheoremReport,
    Violation,
    check_equivalences,
    check_evidence,
    check_implications,
    check_structural_props,
    check_sufficiency_props,
    counterexample_hits,
    dependence_exceptions,
    minimize_counterexample,
)
from .family import EXHAUSTIVE, SAMPLE, Instance, ModelFamily, enumerate_instances, enumerate_models, family_size
from .runner import FamilyRun, analyze, run_family

__all__ = [
    "BOUNDARY", "COUNTEREXAMPLES", "Claim", "DEFAULT_FAMILIES", "EXHAUSTIVE", "FamilyRun", "Instance",
    "ModelFamily", "SAMPLE", "SUFFICIENCY_FAMILY", "StoredCounterexample", "TheoremReport", "Violation", "analyze",
    "check_equivalences", "check_evidence", "check_implications", "check_structural_props",
    "check_sufficiency_props", "counterexample_hits", "dependence_exceptions", "enumerate_instances", "enumerate_models", "family_size",
    "minimize_counterexample", "run_family",
]
