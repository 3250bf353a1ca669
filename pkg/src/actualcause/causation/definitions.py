"""Identifiers for the fifteen definitions of actual causation."""

from __future__ import annotations

from enum import Enum

from ..sufficiency_kinds import SufficiencyKind


class Necessity(Enum):
    CONTRASTIVE = "contrastive"
    MINIMAL = "minimal"


class DefinitionId(Enum):
    DEF1 = "Def1"
    DEF2 = "Def2"
    DEF3 = "Def3"
    DEF4 = "Def4"
    DEF5 = "Def5"
    DEF6 = "Def6"
    DEF7 = "Def7"
    DEF8 = "Def8"
    DEF9 = "Def9"
    DEF10 = "Def10"
    DEF11 = "Def11"
    DEF12 = "Def12"
    ORIGINAL_HP = "OriginalHP"
    UPDATED_HP = "UpdatedHP"
    MODIFIED_HP = "ModifiedHP"
    STRONG_HP = "StrongHP"

    @classmethod
    def parse(cls, text: str) -> "DefinitionId":
        key = text.strip().replace(" ", "").replace("_", "").lower()
        for member in cls:
            if member.value.lower() == key:
                return member
        if key in ("ac2c", "strong", "strongcausation"):
            return cls.STRONG_HP
        raise ValueError(f"unknown definition {text!r}")

    @property
    def is_hp(self) -> bool:
        return self in (DefinitionId.ORIGINAL_HP, DefinitionId.UPDATED_HP,
                        DefinitionId.MODIFIED_HP, DefinitionId.STRONG_HP)

    @property
    def number(self) -> int | None:
        return None if self.is_hp else int(self.value[3:])

    @property
    def kind(self) -> SufficiencyKind | None:
        """Sufficiency notion plugged into the general definition (None for HP)."""
        if self.is_hp:
            return None
        return _KINDS[(self.number - 1) % 6]

    @property
    def necessity(self) -> Necessity | None:
        if self.is_hp:
            return None
        return Necessity.CONTRASTIVE if self.number < 7 else Necessity.MINIMAL

    def __str__(self) -> str:
        return self.value


_KINDS = (
    SufficiencyKind.ACTUAL_WEAK,
    SufficiencyKind.ACTUAL_STRONG,
    SufficiencyKind.ACTUAL_DIRECT,
    SufficiencyKind.WEAK,
    SufficiencyKind.STRONG,
    SufficiencyKind.DIRECT,
)

GENERAL_DEFINITIONS = tuple(d for d in DefinitionId if not d.is_hp)
HP_DEFINITIONS = tuple(d for d in DefinitionId if d.is_hp)
