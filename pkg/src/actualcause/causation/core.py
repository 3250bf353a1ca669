"""Deciding actual causation.

An ``Analyzer`` wraps one model (normalized to root form unless ``strict``)
together with its solution tables; ``Analyzer.session(u)`` fixes a context.
Sessions memoize AC2 results per (definition, candidate, effect), which is
what makes AC3 and part-of-cause searches affordable.

Internally variables are indices into the endogenous variables of the
normalized model and values are range indices; everything returned to
callers uses names and labels.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from ..errors import EmptyDisjunction, NotNormalized, OverlappingSets, UnknownVariable
from ..scm.engine import Tabulation
from ..scm.model import CausalModel, is_normalized, normalize_exogenous, root_variables, solve
from ..sufficiency import NetworkWitness
from ..sufficiency_kinds import SufficiencyKind
from .definitions import DefinitionId, Necessity

LITERAL = "literal"
ACTUAL_RESTRICTION = "actual-restriction"


@dataclass(frozen=True)
class Effect:
    """``variable`` takes one of ``accepted`` (a same-variable disjunction when several)."""

    variable: str
    accepted: tuple[str, ...]

    def __post_init__(self) -> None:
        values = tuple(dict.fromkeys(str(v) for v in self.accepted))
        if not values:
            raise EmptyDisjunction(f"effect on {self.variable} accepts no value")
        object.__setattr__(self, "accepted", values)

    @classmethod
    def atom(cls, variable: str, value) -> "Effect":
        return cls(variable, (str(value),))

    def __str__(self) -> str:
        return " | ".join(f"{self.variable}={v}" for v in self.accepted)


@dataclass(frozen=True)
class AC2Witness:
    """Evidence that AC2 holds.

    ``witness`` is W = w (the actual values except for Original/Updated/Strong
    HP, which may choose others), ``network`` the N used for sufficiency,
    ``contrast`` the alternative values x' (absent under minimal necessity)
    and ``partition`` the Z side of the HP partition.
    """

    witness: dict[str, str]
    network: NetworkWitness | None = None
    contrast: dict[str, str] | None = None
    partition: tuple[str, ...] | None = None


@dataclass
class Verdict:
    definition: DefinitionId
    cause: dict[str, str]
    effect: Effect
    is_cause: bool
    reason: str
    witness: dict[str, str] = field(default_factory=dict)
    network: NetworkWitness | None = None
    contrast: dict[str, str] | None = None
    partition: tuple[str, ...] | None = None
    minimality_counterexample: dict[str, str] | None = None
    part_of: dict[str, str] | None = None
    alternate: dict[str, bool] | None = None

    def to_dict(self) -> dict:
        return {
            "definition": self.definition.value,
            "cause": dict(self.cause),
            "effect": str(self.effect),
            "is_cause": self.is_cause,
            "reason": self.reason,
            "witness": dict(self.witness),
            "network": self.network.as_dict() if self.network else None,
            "contrast": dict(self.contrast) if self.contrast is not None else None,
            "partition": list(self.partition) if self.partition is not None else None,
            "minimality_counterexample": self.minimality_counterexample,
            "part_of": self.part_of,
            "alternate": self.alternate,
        }


def _subsets(items: Sequence[int], min_size: int = 0, max_size: int | None = None):
    return _subsets_of(tuple(items), min_size, max_size)


@functools.lru_cache(maxsize=65536)
def _subsets_of(items: tuple[int, ...], min_size: int, max_size: int | None) -> tuple[tuple[int, ...], ...]:
    top = len(items) if max_size is None else min(max_size, len(items))
    return tuple(c for k in range(min_size, top + 1) for c in itertools.combinations(items, k))


class Analyzer:
    """Causation queries over one model.

    ``strict`` rejects models that are not in root form instead of
    normalizing them.  ``root_restriction`` keeps root variables out of the
    extra members of strong-sufficiency networks.  ``reading`` selects how
    contrastive necessity treats non-actual values on the network (see
    ``Session.ac2``).
    """

    def __init__(self, model: CausalModel, *, strict: bool = False, root_restriction: bool = False,
                 reading: str = LITERAL):
        if strict and not is_normalized(model):
            raise NotNormalized("strict mode requires exogenous variables in root form only")
        self.original = model
        self.model = normalize_exogenous(model)
        self.tab = Tabulation(self.model)
        self.root_restriction = root_restriction
        self.reading = reading
        self.roots = frozenset(self.tab.pos[v] for v in root_variables(self.model))
        self._sessions: dict[tuple, "Session"] = {}

    def with_options(self, *, root_restriction: bool | None = None, reading: str | None = None) -> "Analyzer":
        """Another analyzer over the same normalized model and tables."""
        other = Analyzer.__new__(Analyzer)
        other.__dict__.update(self.__dict__)
        if root_restriction is not None:
            other.root_restriction = root_restriction
        if reading is not None:
            other.reading = reading
        other._sessions = {}
        return other

    def context_index(self, u: Mapping[str, object]) -> int:
        labels = {}
        for name in self.model.exogenous:
            if name not in u:
                raise UnknownVariable(name, "context does not assign it")
            labels[name] = self.model.decode(name, self.model.encode(name, u[name]))
        extra = [k for k in u if k not in labels]
        if extra:
            raise UnknownVariable(extra[0], "not an exogenous variable")
        return self.tab.contexts.index(labels)

    def session(self, u: Mapping[str, object] | None = None) -> "Session":
        u = u or {}
        c = self.context_index(u)
        s = self._sessions.get(c)
        if s is None:
            s = Session(self, c)
            self._sessions[c] = s
        return s


class Session:
    def __init__(self, analyzer: Analyzer, c: int):
        self.analyzer = analyzer
        self.tab = analyzer.tab
        self.model = analyzer.model
        self.c = c
        self.context = dict(self.tab.contexts[c])
        self.actual = self.tab.solutions(c)[0]
        self._ac2: dict[tuple, AC2Witness | None] = {}
        self._contrast_cache: dict[tuple, list] = {}
        self._alt: dict[tuple, bool] = {}

    # -- conversions -------------------------------------------------------

    def _var(self, name: str) -> int:
        if name not in self.tab.pos:
            self.model.variable(name)
            raise UnknownVariable(name, "not an endogenous variable")
        return self.tab.pos[name]

    def _setting(self, setting: Mapping[str, object]) -> dict[int, int]:
        return {self._var(k): self.model.encode(k, v) for k, v in setting.items()}

    def _effect(self, effect: Effect) -> tuple[int, frozenset[int]]:
        y = self._var(effect.variable)
        return y, frozenset(self.model.encode(effect.variable, v) for v in effect.accepted)

    def _names(self, setting: Mapping[int, int]) -> dict[str, str]:
        return {self.tab.names[i]: self.model.decode(self.tab.names[i], v) for i, v in sorted(setting.items())}

    def _actual(self, idx: Iterable[int]) -> dict[int, int]:
        return {i: self.actual[i] for i in idx}

    def actual_world(self) -> dict[str, str]:
        return self._names(dict(enumerate(self.actual)))

    # -- AC1 ---------------------------------------------------------------

    def ac1(self, cause: Mapping[str, object], effect: Effect) -> bool:
        x = self._setting(cause)
        y, acc = self._effect(effect)
        return all(self.actual[i] == v for i, v in x.items()) and self.actual[y] in acc

    # -- AC2 ---------------------------------------------------------------

    def ac2(self, definition: DefinitionId, X: Sequence[int], y: int, acc: frozenset[int],
            reading: str | None = None) -> AC2Witness | None:
        """AC2 for the candidate ``X`` at its actual values."""
        reading = reading or self.analyzer.reading
        key = (definition, tuple(X), y, acc, reading)
        if key in self._ac2:
            return self._ac2[key]
        if definition.is_hp:
            result = self._ac2_hp(definition, tuple(X), y, acc)
        else:
            result = self._ac2_general(definition.kind, definition.necessity, tuple(X), y, acc, reading)
        self._ac2[key] = result
        return result

    def _contrasts(self, X: Sequence[int]) -> list[dict[int, int]]:
        X = tuple(X)
        out = self._contrast_cache.get(X)
        if out is None:
            actual = tuple(self.actual[i] for i in X)
            out = [dict(zip(X, combo)) for combo in itertools.product(*(range(self.tab.radix[i]) for i in X))
                   if combo != actual]
            self._contrast_cache[X] = out
        return out

    def _ac2_general(self, kind: SufficiencyKind, necessity: Necessity, X: tuple[int, ...], y: int,
                     acc: frozenset[int], reading: str) -> AC2Witness | None:
        tab = self.tab
        a = self.actual
        n = tab.n
        actual_kind = kind.actual
        contrastive = necessity is Necessity.CONTRASTIVE
        xs = self._actual(X)
        contrasts = self._contrasts(X) if contrastive else [None]
        others = [i for i in range(n) if i not in X and i != y]

        if kind.base == "weak":
            sol = tab.solutions(self.c) if actual_kind else tab.weak_all()
            for W in _subsets(others):
                ws = self._actual(W)
                if sol[tab.icode({**xs, **ws})][y] != a[y]:
                    continue
                for xp in contrasts:
                    held = {**xp, **ws} if contrastive else ws
                    val = sol[tab.icode(held)][y]
                    if val not in acc:  # -1 (context-dependent) is never sufficient
                        return self._witness(ws, (y,), xp)
            return None

        F = tab.forcing(self.c if actual_kind else None)
        R_y = tab.R[y]
        r_y = tab.radix[y]
        restrict = self.analyzer.root_restriction
        for W in _subsets(others):
            ws = self._actual(W)
            held_b = {**xs, **ws}
            if kind.base == "direct":
                networks = [(y,)]
            else:
                pool = [i for i in others if i not in W and not (restrict and i in self.analyzer.roots)]
                networks = [tuple(sorted((y,) + extra)) for extra in _subsets(pool)]
            for N in networks:
                if F[tab.fcode(held_b, N)] == -1:
                    continue
                rest = [i for i in N if i != y]
                subnets = [tuple(sorted((y,) + s)) for s in _subsets(rest)]
                for xp in contrasts:
                    held = {**xp, **ws} if contrastive else ws
                    ok = True
                    for S in subnets:
                        p = F[tab.fcode(held, S)]
                        if p == -1:
                            continue
                        if reading == LITERAL:
                            if (p // R_y) % r_y in acc:
                                ok = False
                                break
                        else:
                            base = p - ((p // R_y) % r_y) * R_y
                            star = sum(a[i] * tab.R[i] for i in S if i != y)
                            if base == star and (p // R_y) % r_y in acc:
                                ok = False
                                break
                    if ok:
                        return self._witness(ws, N, xp)
        return None

    def _witness(self, ws: dict[int, int], N: Sequence[int], xp: dict[int, int] | None,
                 partition: Sequence[int] | None = None) -> AC2Witness:
        network = None
        if N is not None:
            names = tuple(self.tab.names[i] for i in N)
            network = NetworkWitness(names, tuple(self.model.decode(self.tab.names[i], self.actual[i]) for i in N))
        return AC2Witness(
            self._names(ws), network, self._names(xp) if xp is not None else None,
            tuple(self.tab.names[i] for i in partition) if partition is not None else None)

    def _ac2_hp(self, definition: DefinitionId, X: tuple[int, ...], y: int,
                acc: frozenset[int]) -> AC2Witness | None:
        tab = self.tab
        sol = tab.solutions(self.c)
        a = self.actual
        xs = self._actual(X)
        contrasts = self._contrasts(X)
        others = [i for i in range(tab.n) if i not in X and i != y]
        modified = definition is DefinitionId.MODIFIED_HP
        for W in _subsets(others):
            zrest = [i for i in others if i not in W]  # Z minus X, without Y
            choices = [self._actual(W)] if modified else list(tab.settings(W))
            for w in choices:
                xp = next((xp for xp in contrasts if sol[tab.icode({**xp, **w})][y] not in acc), None)
                if xp is None:
                    continue
                if modified:
                    return self._witness(w, None, xp)
                if not self._hp_b(definition, xs, w, zrest, y, acc, sol):
                    continue
                if definition is DefinitionId.STRONG_HP:
                    if any(sol[tab.icode({**xs, **w2})][y] not in acc for w2 in tab.settings(W)):
                        continue
                z = tuple(sorted(set(X) | set(zrest) | {y}))
                return self._witness(w, None, xp, z)
        return None

    def _hp_b(self, definition, xs, w, zrest, y, acc, sol) -> bool:
        tab = self.tab
        a = self.actual
        sub_w = [dict(s) for k in range(len(w) + 1) for s in itertools.combinations(w.items(), k)]
        if definition is DefinitionId.ORIGINAL_HP:
            sub_w = [w]
        for part in sub_w:
            for Yp in _subsets(zrest):
                held = {**xs, **part, **self._actual(Yp)}
                if sol[tab.icode(held)][y] not in acc:
                    return False
        return True

    # -- AC3 and verdicts ----------------------------------------------------

    def _candidate(self, cause: Mapping[str, object], effect: Effect):
        x = self._setting(cause)
        if not x:
            raise ValueError("a cause needs at least one conjunct")
        y, acc = self._effect(effect)
        if y in x:
            raise OverlappingSets(f"{effect.variable} is both cause and effect")
        return x, y, acc

    def is_cause(self, cause: Mapping[str, object], effect: Effect, definition: DefinitionId,
                 verbose: bool = False) -> Verdict:
        x, y, acc = self._candidate(cause, effect)
        X = tuple(sorted(x))
        names = self._names(x)
        if not (all(self.actual[i] == v for i, v in x.items()) and self.actual[y] in acc):
            return Verdict(definition, names, effect, False, "AC1 fails")
        return self._verdict(X, y, acc, effect, definition, verbose)

    def _verdict(self, X, y, acc, effect, definition, verbose=False) -> Verdict:
        names = self._names(self._actual(X))
        w = self.ac2(definition, X, y, acc)
        alternate = None
        if verbose and definition.necessity is Necessity.CONTRASTIVE and not definition.is_hp:
            alt = self.ac2(definition, X, y, acc, reading=ACTUAL_RESTRICTION)
            alt_cause = alt is not None and self._minimal(X, y, acc, definition, ACTUAL_RESTRICTION) is None
            alternate = {ACTUAL_RESTRICTION: alt_cause}
        if w is None:
            return Verdict(definition, names, effect, False, "AC2 fails", alternate=alternate)
        smaller = self._minimal(X, y, acc, definition)
        verdict = Verdict(definition, names, effect, smaller is None,
                          "cause" if smaller is None else "AC3 fails",
                          witness=w.witness, network=w.network, contrast=w.contrast, partition=w.partition,
                          alternate=alternate)
        if smaller is not None:
            verdict.minimality_counterexample = self._names(self._actual(smaller))
        return verdict

    def _minimal(self, X, y, acc, definition, reading=None):
        """First nonempty strict subset of X satisfying AC2, if any."""
        for sub in _subsets(X, 1, len(X) - 1):
            if self.ac2(definition, sub, y, acc, reading) is not None:
                return sub
        return None

    def cause_holds(self, X: Sequence[int], y: int, acc: frozenset[int], definition: DefinitionId) -> bool:
        """Index-level AC2 and AC3 for an actual-valued candidate (AC1 assumed)."""
        if self.ac2(definition, X, y, acc) is None:
            return False
        return self._minimal(X, y, acc, definition) is None

    def is_part_of_cause(self, conjunct: Mapping[str, object], effect: Effect,
                         definition: DefinitionId, max_size: int | None = None) -> Verdict:
        x, y, acc = self._candidate(conjunct, effect)
        if len(x) != 1:
            raise ValueError("part-of-cause queries take a single conjunct")
        (i, v), = x.items()
        names = self._names(x)
        if self.actual[i] != v or self.actual[y] not in acc:
            return Verdict(definition, names, effect, False, "AC1 fails")
        pool = [j for j in range(self.tab.n) if j != i and j != y]
        top = len(pool) if max_size is None else max_size - 1
        for extra in _subsets(pool, 0, top):
            X = tuple(sorted((i,) + extra))
            if self.cause_holds(X, y, acc, definition):
                v = self._verdict(X, y, acc, effect, definition)
                v.part_of = v.cause
                v.cause = names
                return v
        return Verdict(definition, names, effect, False, "no cause contains it")

    def find_all_causes(self, effect: Effect, definition: DefinitionId, max_size: int = 1) -> list[Verdict]:
        if max_size < 1:
            raise ValueError("max_size must be at least 1")
        y, acc = self._effect(effect)
        if self.actual[y] not in acc:
            return []
        pool = [j for j in range(self.tab.n) if j != y]
        found = []
        for X in _subsets(pool, 1, max_size):
            if self.cause_holds(X, y, acc, definition):
                found.append(self._verdict(X, y, acc, effect, definition))
        return found

    def dependence_holds(self, conjunct: Mapping[str, object], effect: Effect) -> bool:
        x, y, acc = self._candidate(conjunct, effect)
        if len(x) != 1:
            raise ValueError("dependence is defined for a single conjunct")
        (i, v), = x.items()
        sol = self.tab.solutions(self.c)
        return any(sol[self.tab.icode({i: xp})][y] not in acc
                   for xp in range(self.tab.radix[i]) if xp != v)


# -- functional API ------------------------------------------------------------


def _session(model: CausalModel, ctx, **options) -> Session:
    return Analyzer(model, **options).session(ctx)


def ac1(model: CausalModel, ctx, cause: Mapping[str, object], effect: Effect) -> bool:
    world = solve(normalize_exogenous(model), ctx)
    return all(world[k] == str(v) for k, v in cause.items()) and world[effect.variable] in effect.accepted


def ac2_general(model: CausalModel, ctx, cause: Mapping[str, object], effect: Effect,
                kind: SufficiencyKind, necessity: Necessity, **options) -> AC2Witness | None:
    """AC2 of the general definition with the given sufficiency notion and necessity."""
    s = _session(model, ctx, **options)
    x, y, acc = s._candidate(cause, effect)
    if not s.ac1(cause, effect):
        return None
    definition = next(d for d in DefinitionId if d.kind is kind and d.necessity is necessity)
    return s.ac2(definition, tuple(sorted(x)), y, acc)


def _ac2_for(definition: DefinitionId):
    def run(model: CausalModel, ctx, cause: Mapping[str, object], effect: Effect) -> AC2Witness | None:
        s = _session(model, ctx)
        x, y, acc = s._candidate(cause, effect)
        if not s.ac1(cause, effect):
            return None
        return s.ac2(definition, tuple(sorted(x)), y, acc)

    run.__name__ = "ac2_" + definition.name.lower()
    run.__doc__ = f"AC2 of {definition.value} for an actual-valued candidate; None when it fails."
    return run


ac2_original_hp = _ac2_for(DefinitionId.ORIGINAL_HP)
ac2_updated_hp = _ac2_for(DefinitionId.UPDATED_HP)
ac2_modified_hp = _ac2_for(DefinitionId.MODIFIED_HP)
ac2c_strong = _ac2_for(DefinitionId.STRONG_HP)


def is_cause(model: CausalModel, ctx, cause: Mapping[str, object], effect: Effect,
             definition: DefinitionId, **options) -> Verdict:
    verbose = options.pop("verbose", False)
    return _session(model, ctx, **options).is_cause(cause, effect, definition, verbose)


def is_part_of_cause(model: CausalModel, ctx, conjunct: Mapping[str, object], effect: Effect,
                     definition: DefinitionId, **options) -> Verdict:
    return _session(model, ctx, **options).is_part_of_cause(conjunct, effect, definition)


def find_all_causes(model: CausalModel, ctx, effect: Effect, definition: DefinitionId,
                    max_size: int = 1, **options) -> list[Verdict]:
    return _session(model, ctx, **options).find_all_causes(effect, definition, max_size)


def dependence_holds(model: CausalModel, ctx, conjunct: Mapping[str, object], effect: Effect) -> bool:
    return _session(model, ctx).dependence_holds(conjunct, effect)
