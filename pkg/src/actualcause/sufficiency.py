"""Causal sufficiency: direct, strong and weak, each in an actual and a general variant.

Every decider here works straight from ``intervene`` and ``solve``, sweeping
interventions and contexts explicitly.  The causation module answers the
same questions from precomputed tables; keeping this path separate lets the
two be checked against each other.

A setting is a mapping from endogenous variable names to labels.  Passing a
context selects the actual variant of a notion; ``None`` quantifies over all
contexts of the model as given (callers wanting root-form semantics should
normalize first).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import EmptyDisjunction, OverlappingSets, SetConstraintViolation, UnknownVariable
from .scm.model import CausalModel, intervene, root_variables, solve
from .sufficiency_kinds import SufficiencyKind

PartialSetting = Mapping[str, object]

__all__ = [
    "NetworkWitness", "PartialSetting", "SufficiencyKind", "directly_sufficient", "forced_values",
    "general_sufficient", "is_sufficient", "strongly_sufficient", "strongly_sufficient_along_chain",
    "sufficient_along", "sufficient_for_disjunction", "weakly_sufficient",
]


@dataclass(frozen=True)
class NetworkWitness:
    """A network ``N`` with the values ``n`` it is forced to."""

    variables: tuple[str, ...]
    values: tuple[str, ...]

    def as_dict(self) -> dict[str, str]:
        return dict(zip(self.variables, self.values))

    def __str__(self) -> str:
        return "{" + ", ".join(f"{k}={v}" for k, v in zip(self.variables, self.values)) + "}"


def _normalize_setting(model: CausalModel, setting: PartialSetting) -> dict[str, str]:
    out = {}
    for name, label in setting.items():
        if not model.is_endogenous(name):
            raise UnknownVariable(name, "settings range over endogenous variables")
        out[name] = model.decode(name, model.encode(name, label))
    return out


def _contexts(model: CausalModel, ctx: PartialSetting | None) -> list[dict]:
    return list(model.contexts()) if ctx is None else [dict(ctx)]


def forced_values(model: CausalModel, held: PartialSetting, targets: Sequence[str],
                  varied: Iterable[str], ctx: PartialSetting | None = None) -> dict[str, str] | None:
    """Values of ``targets`` common to every setting of ``varied`` and every context.

    ``held`` is intervened on throughout; variables in neither ``held`` nor
    ``varied`` follow their equations.  The first probe supplies the
    candidate values; any later disagreement means nothing is forced.
    """
    held = _normalize_setting(model, held)
    varied = [v for v in varied if v not in held]
    candidate = None
    for combo in itertools.product(*(model.values(v) for v in varied)):
        sub = intervene(model, {**held, **dict(zip(varied, combo))})
        for u in _contexts(model, ctx):
            world = solve(sub, u)
            got = tuple(world[t] for t in targets)
            if candidate is None:
                candidate = got
            elif got != candidate:
                return None
    return dict(zip(targets, candidate))


def _check_disjoint(model: CausalModel, Xx: PartialSetting, Yy: PartialSetting) -> tuple[dict, dict]:
    x = _normalize_setting(model, Xx)
    y = _normalize_setting(model, Yy)
    if not y:
        raise SetConstraintViolation("the target setting is empty")
    overlap = set(x) & set(y)
    if overlap:
        raise OverlappingSets(f"cause and target share {sorted(overlap)}")
    return x, y


def _rest(model: CausalModel, *used: Iterable[str]) -> list[str]:
    taken = set().union(*map(set, used))
    return [v for v in model.endogenous if v not in taken]


def directly_sufficient(model: CausalModel, Xx: PartialSetting, Yy: PartialSetting,
                        ctx: PartialSetting | None = None) -> bool:
    """For every setting of the remaining variables (and every context, unless
    ``ctx`` is given), intervening with ``Xx`` yields ``Yy``."""
    x, y = _check_disjoint(model, Xx, Yy)
    forced = forced_values(model, x, list(y), _rest(model, x, y), ctx)
    return forced == y


def weakly_sufficient(model: CausalModel, Xx: PartialSetting, Yy: PartialSetting,
                      ctx: PartialSetting | None = None) -> bool:
    x, y = _check_disjoint(model, Xx, Yy)
    return forced_values(model, x, list(y), (), ctx) == y


def strongly_sufficient(model: CausalModel, Xx: PartialSetting, Yy: PartialSetting,
                        ctx: PartialSetting | None = None, *,
                        restrict_to_non_roots: bool = False) -> NetworkWitness | None:
    """Smallest (then lexicographically first) network N ⊇ Y that ``Xx`` directly forces.

    With ``restrict_to_non_roots`` the extra network members are drawn from
    non-root variables only; this needs a normalized model.
    """
    x, y = _check_disjoint(model, Xx, Yy)
    pool = _rest(model, x, y)
    if restrict_to_non_roots:
        roots = root_variables(model)
        pool = [v for v in pool if v not in roots]
    order = {v: i for i, v in enumerate(model.endogenous)}
    for size in range(len(pool) + 1):
        for extra in itertools.combinations(pool, size):
            network = sorted(list(y) + list(extra), key=order.__getitem__)
            forced = forced_values(model, x, network, _rest(model, x, network), ctx)
            if forced is not None and all(forced[k] == v for k, v in y.items()):
                return NetworkWitness(tuple(network), tuple(forced[k] for k in network))
    return None


def _direct_overlapping(model: CausalModel, held: dict, target: dict, ctx) -> bool:
    forced = forced_values(model, held, list(target), _rest(model, held, target), ctx)
    return forced == target


def strongly_sufficient_along_chain(model: CausalModel, Xx: PartialSetting, Yy: PartialSetting,
                                    chain: Sequence[PartialSetting],
                                    ctx: PartialSetting | None = None) -> bool:
    """``Xx`` directly forces the first link, each link the next, and the last ``Yy``.

    Links may overlap with each other and with the target.
    """
    x, y = _check_disjoint(model, Xx, Yy)
    links = [x] + [_normalize_setting(model, s) for s in chain] + [y]
    return all(_direct_overlapping(model, a, b, ctx) for a, b in zip(links, links[1:]))


def general_sufficient(model: CausalModel, Xx: PartialSetting, Yy: PartialSetting,
                       network: PartialSetting, C: Iterable[str],
                       ctx: PartialSetting | None = None) -> bool:
    """Sufficiency along ``network`` (N = n) independent of ``C``.

    For all settings of C (and all contexts unless ``ctx`` is given),
    intervening with ``Xx`` and C yields N = n; the other variables follow
    their equations.
    """
    x, y = _check_disjoint(model, Xx, Yy)
    n = _normalize_setting(model, network)
    C = list(dict.fromkeys(C))
    for v in C:
        model.variable(v)
        if v in x or v in y:
            raise SetConstraintViolation(f"{v} is in the cause or the target")
        if not model.is_endogenous(v):
            raise SetConstraintViolation(f"{v} is exogenous")
    if set(n) & (set(x) | set(C)):
        raise SetConstraintViolation("the network must avoid the cause and C")
    if any(k not in n or n[k] != v for k, v in y.items()):
        raise SetConstraintViolation("the network must contain the target with its values")
    return forced_values(model, x, list(n), C, ctx) == n


def is_sufficient(model: CausalModel, Xx: PartialSetting, Yy: PartialSetting,
                  kind: SufficiencyKind, ctx: PartialSetting | None = None) -> bool:
    if kind.actual and ctx is None:
        raise ValueError(f"{kind.value} sufficiency needs a context")
    c = ctx if kind.actual else None
    if kind.base == "direct":
        return directly_sufficient(model, Xx, Yy, c)
    if kind.base == "weak":
        return weakly_sufficient(model, Xx, Yy, c)
    return strongly_sufficient(model, Xx, Yy, c) is not None


def sufficient_for_disjunction(model: CausalModel, Xx: PartialSetting, effect_var: str,
                               accepted: Iterable[object], kind: SufficiencyKind,
                               ctx: PartialSetting | None = None) -> bool:
    """Sufficient for ``effect_var = v`` for some accepted value v."""
    accepted = list(accepted)
    if not accepted:
        raise EmptyDisjunction(f"no accepted values for {effect_var}")
    return any(is_sufficient(model, Xx, {effect_var: v}, kind, ctx) for v in accepted)


def sufficient_along(model: CausalModel, held: PartialSetting, target: PartialSetting,
                     kind: SufficiencyKind, ctx: PartialSetting | None = None) -> bool:
    """Whether ``held`` is sufficient for ``target`` with the target set as network.

    Direct and strong kinds vary everything outside ``held`` and the target;
    weak kinds vary nothing.  Actual kinds use ``ctx`` only.
    """
    if kind.actual and ctx is None:
        raise ValueError(f"{kind.value} sufficiency needs a context")
    h = _normalize_setting(model, held)
    t = _normalize_setting(model, target)
    c = ctx if kind.actual else None
    varied = () if kind.base == "weak" else _rest(model, h, t)
    return forced_values(model, h, list(t), varied, c) == t
