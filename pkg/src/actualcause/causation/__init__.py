from .core import (
    AC2Witness,
    Analyzer,
    Effect,
    Session,
    Verdict,
    ac1,
    ac2_general,
    ac2_modified_hp,
    ac2_original_hp,
    ac2_updated_hp,
    ac2c_strong,
    dependence_holds,
    find_all_causes,
    is_cause,
    is_part_of_cause,
)
from .definitions import GENERAL_DEFINITIONS, HP_DEFINITIONS, DefinitionId, Necessity
from .evidence import EvidenceCheck, verify_evidence

__all__ = [
    "AC2Witness", "Analyzer", "DefinitionId", "Effect", "EvidenceCheck", "GENERAL_DEFINITIONS",
    "HP_DEFINITIONS", "Necessity", "Session", "Verdict", "ac1", "ac2_general", "ac2_modified_hp",
    "ac2_original_hp", "ac2_updated_hp", "ac2c_strong", "dependence_holds", "find_all_causes",
    "is_cause", "is_part_of_cause", "verify_evidence",
]
