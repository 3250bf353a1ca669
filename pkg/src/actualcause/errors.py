"""Exception hierarchy shared by the model core, the DSL and the deciders."""

from __future__ import annotations


class CausalModelError(Exception):
    """Base class for every error raised by this package."""


class UnknownVariable(CausalModelError, KeyError):
    def __init__(self, name: str, detail: str = ""):
        self.name = name
        msg = f"unknown variable {name!r}"
        super().__init__(f"{msg}: {detail}" if detail else msg)

    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return self.args[0]


class ValueOutOfRange(CausalModelError, ValueError):
    def __init__(self, name: str, value, detail: str = ""):
        self.name = name
        self.value = value
        msg = f"value {value!r} is not in the range of {name!r}"
        super().__init__(f"{msg}: {detail}" if detail else msg)


class CyclicModel(CausalModelError):
    """The parent relation has a cycle; ``cycle`` lists it in dependency order."""

    def __init__(self, cycle: list[str]):
        self.cycle = list(cycle)
        super().__init__("model is not strongly recursive; cycle: " + " -> ".join(self.cycle + self.cycle[:1]))


class DuplicateName(CausalModelError, ValueError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"duplicate name {name!r}")


class NotNormalized(CausalModelError):
    """Exogenous variables occur outside root equations of the form V = U."""


class MalformedFormula(CausalModelError, ValueError):
    pass


class OverlappingSets(CausalModelError, ValueError):
    pass


class SetConstraintViolation(CausalModelError, ValueError):
    pass


class EmptyDisjunction(CausalModelError, ValueError):
    pass


class FamilyTooLarge(CausalModelError):
    pass
