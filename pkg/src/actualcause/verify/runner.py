"""Evaluating every definition on every query of a family.

A query is a context, an effect variable ``Y`` at its actual value, and a
nonempty candidate ``X`` of other endogenous variables at their actual
values.  Effects range over non-root variables only: a root cannot change
under interventions on other variables, so no definition can find a cause
for it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from ..causation import Analyzer, DefinitionId, Effect
from ..causation.core import Session
from ..scm.model import CausalModel, parents, root_variables
from .family import Instance, ModelFamily, enumerate_instances

ALL = tuple(DefinitionId)


@dataclass
class QueryResult:
    y: str
    cause: tuple[str, ...]
    holds: frozenset[DefinitionId]


@dataclass
class ContextResult:
    context: dict
    actual: dict[str, str]
    queries: dict[tuple[str, tuple[str, ...]], frozenset[DefinitionId]] = field(default_factory=dict)
    dependence: dict[tuple[str, str], bool] = field(default_factory=dict)
    restricted: dict[tuple[str, tuple[str, ...]], frozenset[DefinitionId]] = field(default_factory=dict)

    def causes(self, d: DefinitionId, y: str) -> list[tuple[str, ...]]:
        return [X for (yy, X), hs in self.queries.items() if yy == y and d in hs]

    def is_cause(self, d: DefinitionId, y: str, X: tuple[str, ...]) -> bool:
        return d in self.queries.get((y, X), frozenset())

    def part_of(self, d: DefinitionId, y: str, x: str) -> bool:
        return any(x in X and d in hs for (yy, X), hs in self.queries.items() if yy == y)


@dataclass
class InstanceResult:
    model: CausalModel
    label: str
    effects: tuple[str, ...]
    parents: dict[str, frozenset[str]]
    only_parent: dict[str, frozenset[str]]
    contexts: list[ContextResult]


# Strong-kind definitions, whose networks the root restriction affects.
RESTRICTABLE = (DefinitionId.DEF2, DefinitionId.DEF5, DefinitionId.DEF8, DefinitionId.DEF11)


def _only_parents(model: CausalModel, y: str) -> frozenset[str]:
    """Parents of ``y`` that are not also ancestors of y through a longer path."""
    ps = parents(model, y)
    out = set()
    for p in ps:
        longer = any(p in _ancestors_incl(model, q) for q in ps if q != p)
        if not longer:
            out.add(p)
    return frozenset(out)


def _ancestors_incl(model: CausalModel, name: str) -> set[str]:
    seen, todo = set(), [name]
    while todo:
        v = todo.pop()
        for p in parents(model, v):
            if p not in seen:
                seen.add(p)
                todo.append(p)
    return seen


def analyze(model: CausalModel, contexts: Iterable[Mapping], *, label: str = "",
            definitions: Iterable[DefinitionId] = ALL, max_cause_size: int | None = None,
            root_restriction_check: bool = True, effects: Iterable[str] | None = None,
            substitute: Mapping[DefinitionId, DefinitionId] | None = None) -> InstanceResult:
    """All verdicts on one model.

    ``substitute`` evaluates another definition in place of a listed one; it
    exists to exercise the checks with a deliberately wrong definition.
    """
    definitions = tuple(definitions)
    substitute = dict(substitute or {})
    analyzer = Analyzer(model)
    restricted = analyzer.with_options(root_restriction=True) if root_restriction_check else None
    m = analyzer.model
    roots = root_variables(m)
    endo = list(m.endogenous)
    if effects is None:
        effects = tuple(v for v in endo if v not in roots)
    effects = tuple(effects)
    result = InstanceResult(
        m, label, effects,
        {v: frozenset(parents(m, v)) for v in endo},
        {v: _only_parents(m, v) for v in endo},
        [])
    for u in contexts:
        s = analyzer.session(u)
        cr = ContextResult(dict(u), s.actual_world())
        for y in effects:
            yi = s.tab.pos[y]
            acc = frozenset([s.actual[yi]])
            pool = [s.tab.pos[v] for v in endo if v != y]
            top = len(pool) if max_cause_size is None else min(max_cause_size, len(pool))
            for k in range(1, top + 1):
                for X in itertools.combinations(pool, k):
                    names = tuple(s.tab.names[i] for i in X)
                    holds = frozenset(d for d in definitions
                                      if s.cause_holds(X, yi, acc, substitute.get(d, d)))
                    cr.queries[(y, names)] = holds
                    if restricted is not None:
                        rs = restricted.session(u)
                        cr.restricted[(y, names)] = frozenset(
                            d for d in RESTRICTABLE if rs.cause_holds(X, yi, acc, d))
            for x in pool:
                cr.dependence[(y, s.tab.names[x])] = _depends(s, x, yi, acc)
        result.contexts.append(cr)
    return result


def _depends(s: Session, x: int, y: int, acc) -> bool:
    sol = s.tab.solutions(s.c)
    return any(sol[s.tab.icode({x: v})][y] not in acc for v in range(s.tab.radix[x]) if v != s.actual[x])


@dataclass
class FamilyRun:
    family: ModelFamily
    results: list[InstanceResult]
    substitute: dict = field(default_factory=dict)

    @property
    def queries(self) -> int:
        return sum(len(c.queries) for r in self.results for c in r.contexts)


_CACHE: dict[tuple, FamilyRun] = {}


def run_family(family: ModelFamily, *, max_cause_size: int | None = None,
               substitute: Mapping[DefinitionId, DefinitionId] | None = None,
               use_cache: bool = True) -> FamilyRun:
    """Analyze every instance of ``family``; results are cached per argument set."""
    key = (family, max_cause_size, tuple(sorted((a.value, b.value) for a, b in (substitute or {}).items())))
    if use_cache and key in _CACHE:
        return _CACHE[key]
    results = [analyze(inst.model, inst.contexts, label=inst.label, max_cause_size=max_cause_size,
                       effects=inst.effects, substitute=substitute)
               for inst in enumerate_instances(family)]
    run = FamilyRun(family, results, dict(substitute or {}))
    if use_cache:
        _CACHE[key] = run
    return run


def analyze_instance(inst: Instance, **options) -> InstanceResult:
    return analyze(inst.model, inst.contexts, label=inst.label, effects=inst.effects, **options)


__all__ = ["ContextResult", "FamilyRun", "InstanceResult", "analyze", "analyze_instance", "run_family"]
