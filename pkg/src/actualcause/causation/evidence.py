"""Re-checking a positive verdict's evidence without the solution tables.

The checks go through ``actualcause.sufficiency`` (general definitions) and
``holds`` (HP definitions), both of which evaluate interventions one at a
time with ``solve``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..scm.formulas import Atom, Intervened, Not, Or, holds
from ..scm.model import CausalModel, normalize_exogenous, solve
from ..sufficiency import forced_values
from .core import Verdict
from .definitions import DefinitionId, Necessity


@dataclass
class EvidenceCheck:
    ok: bool
    failures: list[str] = field(default_factory=list)


def _subsets(items):
    items = list(items)
    for k in range(len(items) + 1):
        yield from itertools.combinations(items, k)


def verify_evidence(model: CausalModel, ctx, verdict: Verdict) -> EvidenceCheck:
    """Independently confirm AC1 and the recorded AC2 evidence of a positive verdict."""
    if not verdict.is_cause:
        return EvidenceCheck(False, ["verdict is negative; nothing to verify"])
    model = normalize_exogenous(model)
    failures: list[str] = []
    world = solve(model, ctx)
    cause = verdict.part_of or verdict.cause
    effect = verdict.effect
    if any(world[k] != v for k, v in cause.items()):
        failures.append("AC1: cause values are not actual")
    if world[effect.variable] not in effect.accepted:
        failures.append("AC1: effect does not hold")
    if verdict.definition.is_hp:
        failures += _check_hp(model, ctx, world, cause, verdict)
    else:
        failures += _check_general(model, ctx, world, cause, verdict)
    return EvidenceCheck(not failures, failures)


def _check_general(model, ctx, world, cause, verdict) -> list[str]:
    d = verdict.definition
    kind = d.kind
    effect = verdict.effect
    y = effect.variable
    w = verdict.witness
    failures = []
    if any(world[k] != v for k, v in w.items()):
        failures.append("witness values are not actual")
    if verdict.network is None or y not in verdict.network.variables:
        return failures + ["network missing or without the effect variable"]
    network = verdict.network.as_dict()
    if any(world[k] != v for k, v in network.items()):
        failures.append("network values are not actual")
    c = ctx if kind.actual else None

    def varied(held, targets):
        if kind.base == "weak":
            return ()
        return [v for v in model.endogenous if v not in held and v not in targets]

    held_b = {**cause, **w}
    if forced_values(model, held_b, list(network), varied(held_b, network), c) != network:
        failures.append("AC2(b): cause and witness do not force the network")
    if d.necessity is Necessity.CONTRASTIVE:
        if verdict.contrast is None or set(verdict.contrast) != set(cause):
            return failures + ["contrast values missing"]
        if all(verdict.contrast[k] == cause[k] for k in cause):
            failures.append("contrast equals the actual values")
        held_a = {**verdict.contrast, **w}
    else:
        held_a = dict(w)
    others = [k for k in network if k != y]
    for extra in _subsets(others):
        S = [k for k in model.endogenous if k == y or k in extra]
        got = forced_values(model, held_a, S, varied(held_a, S), c)
        if got is not None and got[y] in effect.accepted:
            failures.append(f"AC2(a): {held_a} is sufficient for {y}={got[y]} along {S}")
    return failures


def _phi(effect):
    return Or(*(Atom(effect.variable, v) for v in effect.accepted))


def _check_hp(model, ctx, world, cause, verdict) -> list[str]:
    d = verdict.definition
    effect = verdict.effect
    phi = _phi(effect)
    w = verdict.witness
    failures = []
    if verdict.contrast is None:
        return ["contrast values missing"]
    if not holds(model, ctx, Intervened({**verdict.contrast, **w}, Not(phi))):
        failures.append("AC2(a): the effect survives the contrast")
    if d is DefinitionId.MODIFIED_HP:
        if any(world[k] != v for k, v in w.items()):
            failures.append("witness values are not actual")
        return failures
    if verdict.partition is None:
        return failures + ["partition missing"]
    z = set(verdict.partition)
    if z & set(w) or not set(cause) <= z or set(model.endogenous) != z | set(w):
        failures.append("partition does not split the variables")
    zrest = [k for k in model.endogenous if k in z and k not in cause]
    w_parts = [dict(w)] if d is DefinitionId.ORIGINAL_HP else [dict(p) for p in _subsets(w.items())]
    for part in w_parts:
        for ys in _subsets(zrest):
            setting = {**cause, **part, **{k: world[k] for k in ys}}
            if not holds(model, ctx, Intervened(setting, phi)):
                failures.append(f"AC2(b) fails under {setting}")
                return failures
    if d is DefinitionId.STRONG_HP:
        names = list(w)
        for combo in itertools.product(*(model.values(k) for k in names)):
            setting = {**cause, **dict(zip(names, combo))}
            if not holds(model, ctx, Intervened(setting, phi)):
                failures.append(f"AC2(c) fails under {setting}")
                break
    return failures
