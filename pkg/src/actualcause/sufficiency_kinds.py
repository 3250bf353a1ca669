from __future__ import annotations

from enum import Enum


class SufficiencyKind(Enum):
    DIRECT = "direct"
    STRONG = "strong"
    WEAK = "weak"
    ACTUAL_DIRECT = "actual-direct"
    ACTUAL_STRONG = "actual-strong"
    ACTUAL_WEAK = "actual-weak"

    @property
    def actual(self) -> bool:
        return self.value.startswith("actual-")

    @property
    def base(self) -> str:
        """``direct``, ``strong`` or ``weak``."""
        return self.value.split("-")[-1]

    @classmethod
    def parse(cls, text: str) -> "SufficiencyKind":
        key = text.strip().lower().replace("_", "-").replace(" ", "-")
        for member in cls:
            if member.value == key:
                return member
        raise ValueError(f"unknown sufficiency kind {text!r}")
