"""Bounded families of normalized models.

Every model has root variables ``R1..Rr`` (each ``Ri := Ui``) followed by
non-root variables ``V1..Vn`` whose equations only read earlier variables,
so declaration order is a topological order.

Exhaustive mode lists each semantically distinct model once: an equation is
a parent set together with a function that depends on every parent.  With
``symmetry`` on, two further reductions apply, both verdict-preserving
relabelings:

* a non-root's values may be swapped, so each function is taken with output
  0 when all its parents are 0;
* root values may be swapped too, which moves any context to the all-zero
  one, so only that context is checked; what remains is deduplicated up to
  renaming of the roots and of the non-roots.

Sample mode draws models with 4-5 endogenous variables and ranges up to 3
from a seeded generator; for each it also draws one context and one effect
variable, and every candidate cause of that effect is checked.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from ..errors import FamilyTooLarge
from ..scm.model import CausalModel, Equation, Variable

EXHAUSTIVE = "exhaustive"
SAMPLE = "sample"


@dataclass(frozen=True)
class ModelFamily:
    mode: str = EXHAUSTIVE
    roots: int = 2
    nonroots: tuple[int, ...] = (1, 2, 3)
    max_parents: int = 2
    symmetry: bool = True
    # sample mode
    samples: int = 0
    seed: int = 0
    sizes: tuple[int, ...] = (4, 5)
    max_range: int = 3
    # declared cap on the number of models
    cap: int | None = 200_000

    def describe(self) -> str:
        if self.mode == SAMPLE:
            return (f"{self.samples} sampled models with {'/'.join(map(str, self.sizes))} endogenous variables, "
                    f"ranges <= {self.max_range}, <= {self.max_parents} parents, seed {self.seed}")
        return (f"all models with {self.roots} binary roots and {'/'.join(map(str, self.nonroots))} binary "
                f"non-roots over <= {self.max_parents} parents"
                + (" (up to relabeling)" if self.symmetry else ""))


@dataclass(frozen=True)
class Instance:
    """A model together with the contexts to examine."""

    model: CausalModel
    contexts: tuple[dict, ...] = field(default=())
    label: str = ""
    effects: tuple[str, ...] | None = None  # None: every non-root variable


# -- truth tables over binary parents ---------------------------------------------


def _essential(n: int) -> list[tuple[int, ...]]:
    """Boolean functions of ``n`` inputs (product order) depending on every input."""
    out = []
    for bits in itertools.product((0, 1), repeat=1 << n):
        if all(_depends(bits, n, j) for j in range(n)):
            out.append(bits)
    return out


def _depends(bits: Sequence[int], n: int, j: int) -> bool:
    step = 1 << (n - 1 - j)
    return any(bits[k] != bits[k | step] for k in range(1 << n) if not k & step)


def family_size(family: ModelFamily) -> int:
    """Number of models before symmetry reduction (exhaustive) or the sample size."""
    if family.mode == SAMPLE:
        return family.samples
    funcs = [len(_essential(k)) // (2 if family.symmetry else 1) for k in range(family.max_parents + 1)]
    total = 0
    for n in family.nonroots:
        if family.roots + n == 0 or n == 0:
            continue
        count = 1
        for i in range(n):
            avail = family.roots + i
            count *= sum(math.comb(avail, k) * funcs[k] for k in range(family.max_parents + 1))
        total += count
    return total


def _build(roots: int, eqs: Sequence[tuple[tuple[str, ...], tuple[int, ...]]],
           ranges: Sequence[int] | None = None, root_ranges: Sequence[int] | None = None) -> CausalModel:
    root_ranges = root_ranges or [2] * roots
    ranges = ranges or [2] * len(eqs)
    variables = [Variable(f"U{i + 1}", tuple(map(str, range(root_ranges[i]))), True) for i in range(roots)]
    variables += [Variable(f"R{i + 1}", tuple(map(str, range(root_ranges[i])))) for i in range(roots)]
    variables += [Variable(f"V{i + 1}", tuple(map(str, range(ranges[i])))) for i in range(len(eqs))]
    radix = {v.name: len(v.values) for v in variables}
    equations = [Equation.copy_of(f"R{i + 1}", f"U{i + 1}") for i in range(roots)]
    for i, (parents, out) in enumerate(eqs):
        equations.append(Equation.from_callable(f"V{i + 1}", parents, _table_fn(parents, out, radix)))
    return CausalModel(variables, equations)


def _table_fn(parents, out, radix):
    rad = [radix[p] for p in parents]

    def fn(env):
        pos = 0
        for p, r in zip(parents, rad):
            pos = pos * r + int(env[p])
        return str(out[pos])

    return fn


def _exhaustive_equations(roots: int, n: int, max_parents: int, symmetry: bool):
    funcs = {k: [f for f in _essential(k) if not (symmetry and f[0] == 1)] for k in range(max_parents + 1)}
    per_var = []
    for i in range(n):
        names = [f"R{j + 1}" for j in range(roots)] + [f"V{j + 1}" for j in range(i)]
        options = []
        for k in range(max_parents + 1):
            for parents in itertools.combinations(names, k):
                options += [(parents, f) for f in funcs[k]]
        per_var.append(options)
    return itertools.product(*per_var)


def _canonical_key(roots: int, eqs) -> tuple:
    """Smallest description of the model over all renamings of roots and of non-roots."""
    n = len(eqs)
    best = None
    for rp in itertools.permutations(range(roots)):
        for np_ in itertools.permutations(range(n)):
            rename = {f"R{j + 1}": f"R{rp[j] + 1}" for j in range(roots)}
            rename.update({f"V{j + 1}": f"V{np_[j] + 1}" for j in range(n)})
            items = []
            for j, (parents, out) in enumerate(eqs):
                new = [rename[p] for p in parents]
                order = sorted(range(len(new)), key=new.__getitem__)
                k = len(new)
                table = tuple(out[sum(bits[order.index(a)] << (k - 1 - a) for a in range(k))]
                              for bits in itertools.product((0, 1), repeat=k)) if k else tuple(out)
                items.append((rename[f"V{j + 1}"], tuple(sorted(new)), table))
            key = tuple(sorted(items))
            if best is None or key < best:
                best = key
    return best


def _zero_context(model: CausalModel) -> dict:
    return {u: model.values(u)[0] for u in model.exogenous}


def enumerate_instances(family: ModelFamily) -> Iterator[Instance]:
    """Deterministic stream of instances; raises FamilyTooLarge past the cap."""
    size = family_size(family)
    if family.cap is not None and size > family.cap:
        raise FamilyTooLarge(f"family has {size} models, cap is {family.cap}")
    if family.mode == SAMPLE:
        yield from _sample(family)
        return
    for n in family.nonroots:
        if n == 0:
            continue
        seen: set = set()
        for eqs in _exhaustive_equations(family.roots, n, family.max_parents, family.symmetry):
            if family.symmetry:
                key = _canonical_key(family.roots, eqs)
                if key in seen:
                    continue
                seen.add(key)
            model = _build(family.roots, eqs)
            contexts = (_zero_context(model),) if family.symmetry else tuple(model.contexts())
            yield Instance(model, contexts, f"n{n}")


def enumerate_models(family: ModelFamily) -> Iterator[CausalModel]:
    for inst in enumerate_instances(family):
        yield inst.model


def _sample(family: ModelFamily) -> Iterator[Instance]:
    rng = random.Random(family.seed)
    for k in range(family.samples):
        size = rng.choice(family.sizes)
        roots = rng.randint(1, 2)
        n = size - roots
        root_ranges = [rng.randint(2, family.max_range) for _ in range(roots)]
        ranges = [rng.randint(2, family.max_range) for _ in range(n)]
        radix = {f"R{j + 1}": root_ranges[j] for j in range(roots)}
        eqs = []
        for i in range(n):
            names = list(radix)
            parents = tuple(sorted(rng.sample(names, rng.randint(1, min(family.max_parents, len(names))))))
            cells = math.prod(radix[p] for p in parents)
            out = tuple(rng.randrange(ranges[i]) for _ in range(cells))
            eqs.append((parents, out))
            radix[f"V{i + 1}"] = ranges[i]
        model = _build(roots, eqs, ranges, root_ranges)
        contexts = list(model.contexts())
        ctx = contexts[rng.randrange(len(contexts))]
        effect = f"V{rng.randint(1, n)}"
        yield Instance(model, (ctx,), f"s{k}", (effect,))


__all__ = [
    "EXHAUSTIVE", "Instance", "ModelFamily", "SAMPLE", "enumerate_instances", "enumerate_models", "family_size",
]
