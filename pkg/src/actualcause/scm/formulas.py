"""Causal formulas: boolean combinations of atoms, optionally under one intervention prefix."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

from ..errors import MalformedFormula
from .model import CausalModel, World, intervene, solve


@dataclass(frozen=True)
class Atom:
    variable: str
    value: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", str(self.value))


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    args: tuple["Formula", ...]

    def __init__(self, *args: "Formula"):
        object.__setattr__(self, "args", tuple(args))


@dataclass(frozen=True)
class Or:
    args: tuple["Formula", ...]

    def __init__(self, *args: "Formula"):
        object.__setattr__(self, "args", tuple(args))


@dataclass(frozen=True)
class Intervened:
    """``[setting] body``; the body may not contain another intervention."""

    setting: tuple[tuple[str, str], ...]
    body: "Formula"

    def __init__(self, setting: Mapping[str, object], body: "Formula"):
        object.__setattr__(self, "setting", tuple((k, str(v)) for k, v in setting.items()))
        object.__setattr__(self, "body", body)


Formula = Union[Atom, Not, And, Or, Intervened]


def _truth(model: CausalModel, world: World, f: Formula) -> bool:
    if isinstance(f, Atom):
        if not model.is_endogenous(f.variable):
            raise MalformedFormula(f"atom over exogenous variable {f.variable!r}")
        model.encode(f.variable, f.value)
        return world[f.variable] == f.value
    if isinstance(f, Not):
        return not _truth(model, world, f.arg)
    if isinstance(f, And):
        return all(_truth(model, world, a) for a in f.args)
    if isinstance(f, Or):
        return any(_truth(model, world, a) for a in f.args)
    if isinstance(f, Intervened):
        raise MalformedFormula("interventions may only appear as the outermost prefix")
    raise MalformedFormula(f"not a causal formula: {f!r}")


def holds(model: CausalModel, u: Mapping[str, object], f: Formula) -> bool:
    """Whether ``(model, u)`` satisfies ``f``."""
    if isinstance(f, Intervened):
        names = [k for k, _ in f.setting]
        if len(set(names)) != len(names):
            raise MalformedFormula("intervention assigns a variable twice")
        model = intervene(model, dict(f.setting))
        f = f.body
    return _truth(model, solve(model, u), f)
