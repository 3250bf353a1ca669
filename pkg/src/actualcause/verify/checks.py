"""Brute-force checks of the equivalence, implication and structural claims.

Each claim is evaluated on every (model, context) pair of one or more
families.  A report counts the checked items per claim, collects the
violations and, where a claim is a non-implication, re-verifies the stored
counterexamples.  All results hold for the bounded families only.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from ..causation import Analyzer, DefinitionId, Effect, verify_evidence
from ..corpus import load_cases, part_of_definitions
from ..dsl import document_from_model, serialize
from ..scm.model import CausalModel, Equation, Variable, intervene, is_root_form, root_variables, solve
from ..sufficiency import (
    directly_sufficient,
    forced_values,
    general_sufficient,
    strongly_sufficient,
    strongly_sufficient_along_chain,
    weakly_sufficient,
)
from .family import SAMPLE, Instance, ModelFamily, enumerate_instances
from .runner import RESTRICTABLE, ContextResult, FamilyRun, InstanceResult, analyze, run_family

D = DefinitionId

BOUNDARY = ("bounded families only: every model checked has few variables and small ranges; "
            "no claim is established for models outside the families listed")

DEFAULT_FAMILIES = (
    ModelFamily(),
    ModelFamily(mode=SAMPLE, samples=10_000, seed=0),
)

# A smaller exhaustive family for the claims checked through the slow sufficiency path.
SUFFICIENCY_FAMILY = ModelFamily(nonroots=(1, 2))


@dataclass
class Violation:
    claim: str
    model: CausalModel
    context: dict
    effect: str
    cause: tuple[str, ...]
    verdicts: dict[str, bool] = field(default_factory=dict)
    detail: str = ""
    label: str = ""
    substitute: dict = field(default_factory=dict, repr=False)

    @property
    def size(self) -> int:
        return len(self.model.endogenous)

    def document(self) -> str:
        return serialize(document_from_model(self.model, {"counterexample": self.context}))

    def to_dict(self) -> dict:
        return {
            "claim": self.claim, "label": self.label, "effect": self.effect, "cause": list(self.cause),
            "context": dict(self.context), "verdicts": dict(self.verdicts), "detail": self.detail,
            "model": self.document(),
        }


@dataclass
class TheoremReport:
    theorem: str
    families: list[str] = field(default_factory=list)
    instances: int = 0
    counts: dict[str, int] = field(default_factory=dict)
    violations: list[Violation] = field(default_factory=list)
    expected: dict[str, bool] = field(default_factory=dict)
    boundary: str = BOUNDARY

    @property
    def ok(self) -> bool:
        return not self.violations and all(self.expected.values())

    def violations_of(self, claim: str) -> list[Violation]:
        return [v for v in self.violations if v.claim == claim]

    def merge(self, other: "TheoremReport") -> "TheoremReport":
        self.families += [f for f in other.families if f not in self.families]
        self.instances += other.instances
        for k, n in other.counts.items():
            self.counts[k] = self.counts.get(k, 0) + n
        self.violations += other.violations
        self.expected.update(other.expected)
        return self

    def summary(self) -> str:
        lines = [f"{self.theorem}: {self.instances} model/context pairs, "
                 f"{len(self.violations)} violations ({'ok' if self.ok else 'FAILED'})"]
        for f in self.families:
            lines.append(f"  family: {f}")
        for k, n in self.counts.items():
            lines.append(f"  {k}: {n} checked, {len(self.violations_of(k))} violations")
        for k, hit in self.expected.items():
            lines.append(f"  counterexample {k}: {'reproduced' if hit else 'NOT reproduced'}")
        lines.append(f"  boundary: {self.boundary}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem, "families": list(self.families), "instances": self.instances,
            "counts": dict(self.counts), "violations": [v.to_dict() for v in self.violations],
            "expected_counterexamples": dict(self.expected), "boundary": self.boundary, "ok": self.ok,
        }


# -- claims over analyzed instances ------------------------------------------------

# One checked item: effect, cause, whether it failed, the verdicts involved, a note.
Probe = tuple[str, tuple[str, ...], bool, dict, str]


@dataclass(frozen=True)
class Claim:
    id: str
    statement: str
    probe: Callable[[InstanceResult, ContextResult], Iterator[Probe]] | None = None
    model_probe: Callable[[CausalModel, dict, Sequence[str]], Iterator[Probe]] | None = None

    def evaluate(self, model: CausalModel, ctx: Mapping, effects: Sequence[str] | None = None,
                 substitute: Mapping | None = None, label: str = "") -> list[Violation]:
        """Violations of this claim on one model and context."""
        if self.model_probe is not None:
            probes = self.model_probe(model, dict(ctx), effects)
        else:
            res = analyze(model, [ctx], effects=effects, substitute=substitute, label=label)
            probes = self.probe(res, res.contexts[0])
            model = res.model
        return [Violation(self.id, model, dict(ctx), y, X, v, note, label, dict(substitute or {}))
                for y, X, failed, v, note in probes if failed]


def _names(ds: Iterable[DefinitionId]) -> str:
    return "/".join(d.value for d in ds)


def _verdicts(hs: frozenset, ds: Iterable[DefinitionId]) -> dict[str, bool]:
    return {d.value: d in hs for d in ds}


def equivalence(group: Sequence[DefinitionId]) -> Claim:
    group = tuple(group)
    gset = frozenset(group)

    def probe(res, cr):
        for (y, X), hs in cr.queries.items():
            inter = hs & gset
            yield y, X, bool(inter) and inter != gset, _verdicts(hs, group), ""

    return Claim("equiv:" + "=".join(d.value for d in group), f"{_names(group)} agree on every query", probe)


def implication(a: DefinitionId, b: DefinitionId, reading: str) -> Claim:
    """``reading`` is the premise reading: ``part`` (X=x is a conjunct of some
    cause under ``a``) or ``cause`` (X=x is a cause under ``a``).  The
    conclusion is always that X=x is a cause under ``b``; under ``part`` X is
    a single variable."""
    if reading == "part":
        def probe(res, cr):
            for y in res.effects:
                for x in res.model.endogenous:
                    if x == y or not cr.part_of(a, y, x):
                        continue
                    ok = cr.is_cause(b, y, (x,))
                    yield y, (x,), not ok, {f"{a.value} (part)": True, b.value: ok}, ""
    else:
        def probe(res, cr):
            for (y, X), hs in cr.queries.items():
                if a in hs:
                    yield y, X, b not in hs, _verdicts(hs, (a, b)), ""
    return Claim(f"impl:{a.value}({reading})=>{b.value}(cause)",
                 f"if X=x is {'part of ' if reading == 'part' else ''}a cause under {a.value} "
                 f"then X=x is a cause under {b.value}", probe)


EQUIVALENCES = (
    (D.MODIFIED_HP, D.DEF1),
    (D.DEF2, D.DEF5),
    (D.DEF8, D.DEF11),
    (D.DEF3, D.DEF6, D.DEF9, D.DEF12),
)

IMPLICATIONS = (
    (D.MODIFIED_HP, D.UPDATED_HP, "part"),
    (D.UPDATED_HP, D.ORIGINAL_HP, "part"),
    (D.DEF3, D.DEF2, "cause"),
    (D.DEF2, D.DEF8, "part"),
    (D.DEF3, D.ORIGINAL_HP, "cause"),
    (D.DEF10, D.DEF4, "cause"),
)

MINIMAL = (D.DEF7, D.DEF8, D.DEF9, D.DEF10, D.DEF11, D.DEF12)

# Definitions for which dependence need not give a cause.
DEPENDENCE_EXEMPT = frozenset({D.DEF3, D.DEF6, D.DEF9, D.DEF12, D.DEF10, D.DEF7})
DEPENDENCE_DEFS = tuple(d for d in D if d not in DEPENDENCE_EXEMPT)


def _def7_never(res, cr):
    for (y, X), hs in cr.queries.items():
        yield y, X, D.DEF7 in hs, _verdicts(hs, (D.DEF7,)), ""


def _minimal_singletons(res, cr):
    for (y, X), hs in cr.queries.items():
        if len(X) > 1:
            yield y, X, bool(hs & set(MINIMAL)), _verdicts(hs, MINIMAL), ""


def _def3_parent(res, cr):
    for (y, X), hs in cr.queries.items():
        if D.DEF3 in hs:
            ok = len(X) == 1 and X[0] in res.parents[y]
            yield y, X, not ok, {"Def3": True}, f"parents of {y}: {sorted(res.parents[y])}"


def dependence_claim(definitions: Iterable[DefinitionId] = DEPENDENCE_DEFS) -> Claim:
    definitions = tuple(definitions)

    def probe(res, cr):
        for (y, x), dep in cr.dependence.items():
            if dep:
                hs = cr.queries.get((y, (x,)), frozenset())
                yield y, (x,), not all(d in hs for d in definitions), _verdicts(hs, definitions), "dependence"

    return Claim("dependence=>cause" + ("" if definitions == DEPENDENCE_DEFS else ":" + _names(definitions)),
                 f"if Y depends on X then X=x is a cause under {_names(definitions)}", probe)


def _parent_shortcut(res, cr):
    group = (D.DEF2, D.DEF3, D.DEF8)
    for y in res.effects:
        for x in res.only_parent[y]:
            hs = cr.queries.get((y, (x,)), frozenset())
            inter = hs & set(group)
            yield y, (x,), bool(inter) and len(inter) != 3, _verdicts(hs, group), "only a parent"


def _mod_singleton(res, cr):
    targets = (D.DEF2, D.DEF4, D.DEF8)
    for (y, X), hs in cr.queries.items():
        if len(X) == 1 and D.MODIFIED_HP in hs:
            yield y, X, not all(d in hs for d in targets), _verdicts(hs, (D.MODIFIED_HP,) + targets), ""


def _root_restriction(res, cr):
    for key, hs in cr.queries.items():
        if key in cr.restricted:
            want = hs & set(RESTRICTABLE)
            got = cr.restricted[key]
            yield key[0], key[1], want != got, {**{d.value: d in want for d in RESTRICTABLE},
                                                 **{d.value + " (restricted)": d in got for d in RESTRICTABLE}}, ""


STRUCTURAL = (
    Claim("def7-never", "Def7 never holds", _def7_never),
    Claim("minimal-singleton", "causes under minimal necessity are singletons", _minimal_singletons),
    Claim("def3-parent", "Def3 causes are single parents of the effect", _def3_parent),
    dependence_claim(),
    Claim("only-parent", "Def2, Def3 and Def8 agree when X is only a parent of Y", _parent_shortcut),
    Claim("modified-singleton", "a single-variable ModifiedHP cause is a cause under Def2, Def4 and Def8",
          _mod_singleton),
    Claim("root-restriction", "restricting networks to non-root variables changes no strong verdict",
          _root_restriction),
)


# -- claims checked through the slow sufficiency path ------------------------------


def _settings(model: CausalModel, pool: Sequence[str], max_size: int) -> Iterator[dict]:
    for k in range(1, max_size + 1):
        for names in itertools.combinations(pool, k):
            for values in itertools.product(*(model.values(n) for n in names)):
                yield dict(zip(names, values))


def _sufficiency_cases(model, effects):
    endo = list(model.endogenous)
    roots = root_variables(model)
    ys = [y for y in (effects or endo) if y not in roots]
    for y in ys:
        pool = [v for v in endo if v != y]
        for x in _settings(model, pool, 2):
            for yv in model.values(y):
                yield x, {y: yv}


def _rest(model, *used):
    taken = set().union(*map(set, used))
    return [v for v in model.endogenous if v not in taken]


def _strength_order(model, ctx, effects):
    """Direct implies strong implies weak, in the general and the actual variant."""
    for x, yy in _sufficiency_cases(model, effects):
        (y,) = yy
        for c, tag in ((None, ""), (ctx, "actual ")):
            d = directly_sufficient(model, x, yy, c)
            s = strongly_sufficient(model, x, yy, c) is not None
            w = weakly_sufficient(model, x, yy, c)
            bad = (d and not s) or (s and not w)
            yield y, tuple(x), bad, {tag + "direct": d, tag + "strong": s, tag + "weak": w}, f"{x} for {yy}"


def _network_chain(model, ctx, effects):
    """Strong sufficiency holds exactly when some chain of direct steps reaches Y.

    Forward: the network found (which contains Y) is a one-link chain.
    Backward: every one-link
    chain through a set L (with the values X forces on it) implies strong
    sufficiency."""
    for x, yy in _sufficiency_cases(model, effects):
        (y,) = yy
        w = strongly_sufficient(model, x, yy)
        if w is not None:
            ok = strongly_sufficient_along_chain(model, x, yy, [w.as_dict()])
            yield y, tuple(x), not ok, {"strong": True, "chain": ok}, f"{x} for {yy} along {w}"
        pool = _rest(model, x)
        for k in range(1, len(pool) + 1):
            for L in itertools.combinations(pool, k):
                forced = forced_values(model, x, list(L), _rest(model, x, L))
                if forced is None:
                    continue
                link = dict(forced)
                if y in link and link[y] != yy[y]:
                    continue
                if strongly_sufficient_along_chain(model, x, yy, [link]):
                    yield y, tuple(x), w is None, {"chain": True, "strong": w is not None}, \
                        f"{x} for {yy} through {link}"


def _general_instances(model, ctx, effects):
    """Weak, direct and strong sufficiency as instances of sufficiency along N independent of C."""
    for x, yy in _sufficiency_cases(model, effects):
        (y,) = yy
        free = _rest(model, x, yy)
        for c, tag in ((None, ""), (ctx, "actual ")):
            weak = weakly_sufficient(model, x, yy, c)
            direct = directly_sufficient(model, x, yy, c)
            strong = strongly_sufficient(model, x, yy, c) is not None
            g_weak = general_sufficient(model, x, yy, yy, (), c)
            g_direct = general_sufficient(model, x, yy, yy, free, c)
            g_strong = False
            for k in range(len(free) + 1):
                for C in itertools.combinations(free, k):
                    N = _rest(model, x, C)
                    n = forced_values(model, x, N, C, c)
                    if n is not None and n[y] == yy[y] and general_sufficient(model, x, yy, n, C, c):
                        g_strong = True
                        break
                if g_strong:
                    break
            bad = (weak, direct, strong) != (g_weak, g_direct, g_strong)
            yield y, tuple(x), bad, {tag + "weak": weak, tag + "direct": direct, tag + "strong": strong,
                                     "general " + tag + "weak": g_weak, "general " + tag + "direct": g_direct,
                                     "general " + tag + "strong": g_strong}, f"{x} for {yy}"


def _actual_vs_general(model, ctx, effects):
    """With the network outside the roots, the actual and general variants coincide."""
    for x, yy in _sufficiency_cases(model, effects):
        (y,) = yy
        d, da = directly_sufficient(model, x, yy), directly_sufficient(model, x, yy, ctx)
        s = strongly_sufficient(model, x, yy, restrict_to_non_roots=True) is not None
        sa = strongly_sufficient(model, x, yy, ctx, restrict_to_non_roots=True) is not None
        yield y, tuple(x), (d, s) != (da, sa), {"direct": d, "actual direct": da, "strong": s, "actual strong": sa}, \
            f"{x} for {yy}"


def _roots_fix_world(model, ctx, effects):
    """Intervening on every root yields one world, whatever the context."""
    roots = sorted(root_variables(model), key=model.index_of)
    for values in itertools.product(*(model.values(r) for r in roots)):
        sub = intervene(model, dict(zip(roots, values)))
        worlds = {tuple(solve(sub, u).items()) for u in model.contexts()}
        yield "", tuple(roots), len(worlds) != 1, {"unique world": len(worlds) == 1}, f"roots at {values}"


SUFFICIENCY = (
    Claim("sufficiency-order", "direct implies strong implies weak sufficiency, also for the actual variants",
          model_probe=_strength_order),
    Claim("network-chain", "strong sufficiency iff sufficiency along a chain of direct steps",
          model_probe=_network_chain),
    Claim("general-sufficiency", "weak, direct and strong sufficiency are instances of sufficiency along N "
          "independent of C", model_probe=_general_instances),
    Claim("actual-general", "actual and general direct/strong sufficiency agree when the network avoids roots",
          model_probe=_actual_vs_general),
    Claim("roots-fix-world", "setting all roots fixes the world", model_probe=_roots_fix_world),
)


# -- stored counterexamples --------------------------------------------------------


@dataclass(frozen=True)
class StoredCounterexample:
    name: str
    case: str
    query: str
    expected: dict[DefinitionId, bool]
    refutes: str


COUNTEREXAMPLES = (
    StoredCounterexample("ex1", "ex1", "x", {D.DEF2: True, D.DEF4: False, D.DEF10: False},
                         "Def2 does not imply Def4 or Def10"),
    StoredCounterexample("ex2", "ex2", "x", {D.DEF4: True, D.DEF10: False}, "Def4 does not imply Def10"),
    StoredCounterexample("ex3", "ex3", "x",
                         {D.ORIGINAL_HP: True, D.UPDATED_HP: True, D.MODIFIED_HP: True,
                          D.DEF2: False, D.DEF3: False, D.DEF8: False},
                         "the HP definitions do not imply Def2, Def3 or Def8"),
    StoredCounterexample("ex4", "ex4", "x",
                         {D.DEF2: True, D.DEF4: True, D.DEF8: True, D.DEF10: True, D.ORIGINAL_HP: True,
                          D.UPDATED_HP: True, D.MODIFIED_HP: True, D.DEF3: False},
                         "no other definition implies Def3"),
    StoredCounterexample("ex5", "ex5", "x", {D.DEF4: True, D.DEF10: True, D.ORIGINAL_HP: False},
                         "Def4 and Def10 do not imply OriginalHP"),
    StoredCounterexample("ex6", "ex6", "x", {D.DEF3: True, D.UPDATED_HP: False}, "Def3 does not imply UpdatedHP"),
    StoredCounterexample("switch", "switch", "flip-arrival", {D.DEF8: True, D.DEF2: False},
                         "Def8 does not imply Def2"),
    StoredCounterexample("counter", "counter", "x", {D.DEF2: True, D.ORIGINAL_HP: False},
                         "Def2 does not imply OriginalHP"),
)


def _case_query(case_name: str, query_id: str):
    (case,) = load_cases(case_name)
    (q,) = [q for q in case.queries if q.id == query_id]
    return case, q


def reproduce(cx: StoredCounterexample) -> dict[str, bool]:
    """The verdicts of the stored counterexample, recomputed now."""
    case, q = _case_query(cx.case, cx.query)
    session = Analyzer(case.document.model).session(case.context_for(q))
    part_of = part_of_definitions()
    out = {}
    for d in cx.expected:
        v = session.is_part_of_cause(q.cause, q.effect, d) if d in part_of else session.is_cause(q.cause, q.effect, d)
        out[d.value] = v.is_cause
    return out


def counterexample_hits() -> dict[str, bool]:
    return {cx.name: reproduce(cx) == {d.value: b for d, b in cx.expected.items()} for cx in COUNTEREXAMPLES}


def dependence_exceptions() -> dict[str, bool]:
    """ex2 and ex4: Y depends on X, yet X=1 is no cause under Def10 and Def3 respectively."""
    out = {}
    for name, d in (("ex2", D.DEF10), ("ex4", D.DEF3)):
        case, q = _case_query(name, "x")
        s = Analyzer(case.document.model).session(case.context_for(q))
        out[f"{name} (dependence without a {d.value} cause)"] = (
            s.dependence_holds(q.cause, q.effect) and not s.is_cause(q.cause, q.effect, d).is_cause)
    return out


# -- drivers -----------------------------------------------------------------------


def _runs(families) -> list[FamilyRun]:
    if families is None:
        families = DEFAULT_FAMILIES
    if isinstance(families, (ModelFamily, FamilyRun)):
        families = [families]
    return [f if isinstance(f, FamilyRun) else run_family(f) for f in families]


def _check(theorem: str, claims: Sequence[Claim], runs: Sequence[FamilyRun],
           substitute: Mapping | None = None) -> TheoremReport:
    report = TheoremReport(theorem)
    for c in claims:
        report.counts[c.id] = 0
    for run in runs:
        report.families.append(run.family.describe())
        for res in run.results:
            for cr in res.contexts:
                report.instances += 1
                for c in claims:
                    for y, X, failed, v, note in c.probe(res, cr):
                        report.counts[c.id] += 1
                        if failed:
                            report.violations.append(Violation(c.id, res.model, dict(cr.context), y, X, v, note,
                                                               res.label, dict(substitute or {})))
    return report


def check_equivalences(families=None) -> TheoremReport:
    """The four equivalence groups on every query of the families."""
    runs = _runs(families)
    return _check("equivalences", [equivalence(g) for g in EQUIVALENCES], runs, _substitute(runs))


def check_implications(families=None) -> TheoremReport:
    """The six implications, plus re-verification of the stored non-implication counterexamples."""
    runs = _runs(families)
    report = _check("implications", [implication(*i) for i in IMPLICATIONS], runs, _substitute(runs))
    report.expected.update(counterexample_hits())
    return report


def check_sufficiency_props(family: ModelFamily = SUFFICIENCY_FAMILY) -> TheoremReport:
    report = TheoremReport("sufficiency", [family.describe()])
    for c in SUFFICIENCY:
        report.counts[c.id] = 0
    for inst in enumerate_instances(family):
        model = Analyzer(inst.model).model
        for ctx in inst.contexts:
            report.instances += 1
            for c in SUFFICIENCY:
                for y, X, failed, v, note in c.model_probe(model, dict(ctx), inst.effects):
                    report.counts[c.id] += 1
                    if failed:
                        report.violations.append(Violation(c.id, model, dict(ctx), y, X, v, note, inst.label))
    return report


def check_structural_props(families=None, *, sufficiency: ModelFamily | None = SUFFICIENCY_FAMILY) -> TheoremReport:
    """Structural propositions on the families; the sufficiency propositions run
    through the slow path on ``sufficiency`` (skipped when None)."""
    runs = _runs(families)
    report = _check("structural", STRUCTURAL, runs, _substitute(runs))
    report.expected.update(dependence_exceptions())
    if sufficiency is not None:
        report.merge(check_sufficiency_props(sufficiency))
        report.theorem = "structural"
    return report


def _substitute(runs: Sequence[FamilyRun]) -> dict:
    for r in runs:
        if r.substitute:
            return dict(r.substitute)
    return {}


def check_evidence(instances: Iterable[Instance], *, max_cause_size: int | None = None) -> TheoremReport:
    """Every positive verdict's witness, network and contrast re-verified via the slow path."""
    report = TheoremReport("evidence")
    report.counts["evidence"] = 0
    for inst in instances:
        analyzer = Analyzer(inst.model)
        model = analyzer.model
        roots = root_variables(model)
        effects = inst.effects or tuple(v for v in model.endogenous if v not in roots)
        for ctx in inst.contexts:
            report.instances += 1
            s = analyzer.session(ctx)
            world = s.actual_world()
            for y in effects:
                effect = Effect.atom(y, world[y])
                pool = [v for v in model.endogenous if v != y]
                top = len(pool) if max_cause_size is None else min(max_cause_size, len(pool))
                for k in range(1, top + 1):
                    for X in itertools.combinations(pool, k):
                        cause = {v: world[v] for v in X}
                        for d in D:
                            verdict = s.is_cause(cause, effect, d)
                            if not verdict.is_cause:
                                continue
                            report.counts["evidence"] += 1
                            chk = verify_evidence(model, ctx, verdict)
                            if not chk.ok:
                                report.violations.append(Violation(
                                    "evidence", model, dict(ctx), y, X, {d.value: True},
                                    "; ".join(chk.failures), inst.label))
    return report


ALL_CLAIMS: dict[str, Claim] = {
    c.id: c for c in ([equivalence(g) for g in EQUIVALENCES] + [implication(*i) for i in IMPLICATIONS]
                      + list(STRUCTURAL) + list(SUFFICIENCY))
}


# -- shrinking ---------------------------------------------------------------------


def _table_equation(model: CausalModel, name: str, fixed: Mapping[str, str],
                    remap: Mapping[str, str] | None = None) -> Equation:
    """The compiled mechanism of ``name`` with ``fixed`` inputs substituted and
    outputs renamed through ``remap``."""
    eq = model.equations[name]
    inputs = model.inputs(name)
    if is_root_form(model, name):
        return eq
    table = model.tables[name]
    free = tuple(n for n in inputs if n not in fixed)
    remap = dict(remap or {})

    def fn(env):
        pos = 0
        for n, r in zip(inputs, table.radices):
            label = fixed[n] if n in fixed else env[n]
            pos = pos * r + model.encode(n, label)
        out = model.decode(name, table.out[pos])
        return remap.get(out, out)

    return Equation.from_callable(name, free, fn)


def _remove_variable(model: CausalModel, ctx: dict, name: str, value: str) -> tuple[CausalModel, dict]:
    drop = {name}
    if is_root_form(model, name):
        drop |= set(model.inputs(name))
    fixed = {name: value}
    variables = [v for v in model.variables if v.name not in drop]
    equations = [_table_equation(model, v.name, fixed) for v in variables if not v.exogenous]
    return CausalModel(variables, equations), {u: c for u, c in ctx.items() if u not in drop}


def _drop_value(model: CausalModel, ctx: dict, name: str, value: str, keep: str) -> tuple[CausalModel, dict]:
    shrink = {name}
    if is_root_form(model, name):
        shrink |= set(model.inputs(name))
    variables = [Variable(v.name, tuple(x for x in v.values if x != value), v.exogenous) if v.name in shrink else v
                 for v in model.variables]
    equations = [_table_equation(model, v.name, {}, {value: keep} if v.name == name else None)
                 for v in variables if not v.exogenous]
    return CausalModel(variables, equations), dict(ctx)


def _shrinks(model: CausalModel, ctx: dict, protect: set[str]) -> Iterator[tuple[CausalModel, dict]]:
    world = solve(model, ctx)
    for name in reversed(model.endogenous):
        if name not in protect:
            yield _remove_variable(model, ctx, name, world[name])
    for name in model.endogenous:
        values = model.values(name)
        if len(values) > 2:
            for v in values:
                if v != world[name]:
                    yield _drop_value(model, ctx, name, v, world[name])


def minimize_counterexample(violation: Violation, claim: Claim | None = None) -> Violation:
    """Greedily delete variables (fixing them at their actual values) and drop
    non-actual values while ``claim`` still fails; the result is re-verified.

    The effect variable of the violation is kept throughout."""
    claim = claim or ALL_CLAIMS[violation.claim]
    protect = {violation.effect} if violation.effect else set()
    effects = (violation.effect,) if violation.effect else None

    def failing(model, ctx):
        found = claim.evaluate(model, ctx, effects, violation.substitute, violation.label)
        return found[0] if found else None

    model = Analyzer(violation.model).model
    ctx = dict(violation.context)
    current = failing(model, ctx)
    if current is None:
        raise ValueError(f"violation of {claim.id} does not reproduce")
    progress = True
    while progress:
        progress = False
        for m, c in _shrinks(model, ctx, protect):
            v = failing(m, c)
            if v is not None:
                model, ctx, current, progress = m, c, v, True
                break
    return current


__all__ = [
    "ALL_CLAIMS", "BOUNDARY", "COUNTEREXAMPLES", "Claim", "DEFAULT_FAMILIES", "DEPENDENCE_DEFS", "EQUIVALENCES",
    "IMPLICATIONS", "STRUCTURAL", "SUFFICIENCY", "SUFFICIENCY_FAMILY", "StoredCounterexample", "TheoremReport",
    "Violation", "check_equivalences", "check_evidence", "check_implications", "check_structural_props",
    "check_sufficiency_props", "counterexample_hits", "dependence_claim", "dependence_exceptions", "equivalence",
    "implication", "minimize_counterexample", "reproduce",
]
