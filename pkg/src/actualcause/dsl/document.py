"""Parsed ``.scm`` documents."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import CausalModelError
from ..scm import expr as ex
from ..scm.model import CausalModel, Equation, Variable
from ..span import SourceSpan


class DslSyntaxError(CausalModelError):
    def __init__(self, message: str, span: SourceSpan | None = None):
        self.span = span
        where = f"{span}: " if span is not None else ""
        super().__init__(where + message)


class CrossVariableDisjunction(DslSyntaxError):
    """An effect disjoins atoms over different variables; only same-variable disjunctions are supported."""


@dataclass(frozen=True)
class Declaration:
    name: str
    exogenous: bool
    values: tuple[str, ...]
    span: SourceSpan | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class EquationDecl:
    target: str
    body: ex.Expr
    span: SourceSpan | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class ContextDecl:
    name: str
    assignment: tuple[tuple[str, str], ...]
    span: SourceSpan | None = field(default=None, compare=False, repr=False)

    def as_dict(self) -> dict[str, str]:
        return dict(self.assignment)


@dataclass(frozen=True)
class QueryDecl:
    name: str
    definition: str
    cause: tuple[tuple[str, str], ...]
    effect_variable: str
    effect_values: tuple[str, ...]
    context: str | None = None
    span: SourceSpan | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class ModelDocument:
    declarations: tuple[Declaration, ...] = ()
    equations: tuple[EquationDecl, ...] = ()
    contexts: tuple[ContextDecl, ...] = ()
    queries: tuple[QueryDecl, ...] = ()

    def build_model(self) -> CausalModel:
        variables = [Variable(d.name, d.values, d.exogenous) for d in self.declarations]
        return CausalModel(variables, [Equation.of(e.target, e.body) for e in self.equations])

    @property
    def model(self) -> CausalModel:
        cached = self.__dict__.get("_model")
        if cached is None:
            cached = self.build_model()
            object.__setattr__(self, "_model", cached)
        return cached

    def context(self, name: str | None = None) -> dict[str, str]:
        """The named context; with no name, the only (or first) context."""
        if name is None:
            if not self.contexts:
                if not self.model.exogenous:
                    return {}
                raise KeyError("document declares no context")
            return self.contexts[0].as_dict()
        for c in self.contexts:
            if c.name == name:
                return c.as_dict()
        raise KeyError(f"no context named {name!r}")

    def query(self, name: str) -> QueryDecl:
        for q in self.queries:
            if q.name == name:
                return q
        raise KeyError(f"no query named {name!r}")
