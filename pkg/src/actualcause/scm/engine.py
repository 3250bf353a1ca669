"""Precomputed solution tables for fast quantifier sweeps.

Two index spaces are used, both mixed radix over the endogenous variables
in declaration order:

* intervention codes: per variable ``0`` (follow the equation) or ``v + 1``
  (held at ``v``); ``solutions(c)[code]`` is the resulting world in context c.
* forcing codes: per variable ``0..r-1`` (held at that value), ``r`` (varied
  over its whole range) or ``r + 1`` (a target, left to its equation).
  ``forcing(c)[code]`` is the target values, packed as ``sum v_i * R_i``,
  when they are identical under every combination of the varied variables,
  and ``-1`` otherwise.  ``forcing(None)`` additionally quantifies over all
  contexts.

A held-plus-varied-plus-targets code answers "is (held) directly sufficient
for (targets = something), and for what" with a single list lookup.
"""

from __future__ import annotations

import itertools
from typing import Mapping, Sequence

import numpy as np

from .model import CausalModel


class Tabulation:
    def __init__(self, model: CausalModel):
        self.model = model
        self.names = model.endogenous
        self.n = len(self.names)
        self.pos = {name: i for i, name in enumerate(self.names)}
        self.radix = [len(model.values(v)) for v in self.names]
        self.contexts = list(model.contexts())
        self._columns = [model.index_of(v) for v in self.names]
        self._order = [self.pos[v] for v in model.order]

        self.w = [1] * self.n  # intervention-code weights
        self.m = [1] * self.n  # forcing-code weights
        self.R = [1] * self.n  # packed-value weights
        for i in range(1, self.n):
            self.w[i] = self.w[i - 1] * (self.radix[i - 1] + 1)
            self.m[i] = self.m[i - 1] * (self.radix[i - 1] + 2)
            self.R[i] = self.R[i - 1] * self.radix[i - 1]
        self.K = self.w[-1] * (self.radix[-1] + 1) if self.n else 1
        self.U = self.m[-1] * (self.radix[-1] + 2) if self.n else 1
        self.wild = sum(r * m for r, m in zip(self.radix, self.m))

        self._sol: dict[int, np.ndarray] = {}
        self._sol_lists: dict[int, list[tuple[int, ...]]] = {}
        self._forcing: dict[int | None, list[int]] = {}
        self._weak_all: list[tuple[int, ...]] | None = None

    # -- code construction -------------------------------------------------

    def icode(self, setting: Mapping[int, int]) -> int:
        return sum((v + 1) * self.w[i] for i, v in setting.items())

    def fcode(self, held: Mapping[int, int], targets: Sequence[int] = ()) -> int:
        code = self.wild
        for i, v in held.items():
            code += (v - self.radix[i]) * self.m[i]
        for i in targets:
            code += self.m[i]
        return code

    def unpack(self, packed: int, i: int) -> int:
        return (packed // self.R[i]) % self.radix[i]

    # -- tables --------------------------------------------------------------

    def solutions_array(self, c: int) -> np.ndarray:
        arr = self._sol.get(c)
        if arr is None:
            arr = self._solve_all(c)
            self._sol[c] = arr
        return arr

    def solutions(self, c: int) -> list[tuple[int, ...]]:
        lst = self._sol_lists.get(c)
        if lst is None:
            lst = [tuple(row) for row in self.solutions_array(c).tolist()]
            self._sol_lists[c] = lst
        return lst

    def weak_all(self) -> list[tuple[int, ...]]:
        """Per intervention code, each variable's value if context-independent, else -1."""
        if self._weak_all is None:
            stack = np.stack([self.solutions_array(c) for c in range(len(self.contexts))])
            same = np.all(stack == stack[0:1], axis=0)
            common = np.where(same, stack[0], -1)
            self._weak_all = [tuple(row) for row in common.tolist()]
        return self._weak_all

    def forcing(self, c: int | None) -> list[int]:
        table = self._forcing.get(c)
        if table is None:
            cs = range(len(self.contexts)) if c is None else [c]
            table = self._forcing_over([self.solutions_array(k) for k in cs]).tolist()
            self._forcing[c] = table
        return table

    def _solve_all(self, c: int) -> np.ndarray:
        model = self.model
        ctx = self.contexts[c]
        codes = np.arange(self.K, dtype=np.int64)
        full = np.zeros((self.K, len(model.variables)), dtype=np.int64)
        for name, label in ctx.items():
            full[:, model.index_of(name)] = model.encode(name, label)
        for i in self._order:
            name = self.names[i]
            table = model.tables[name]
            pos = np.zeros(self.K, dtype=np.int64)
            for inp, rad in zip(table.inputs, table.radices):
                pos = pos * rad + full[:, inp]
            eq = np.asarray(table.out, dtype=np.int64)[pos]
            digit = (codes // self.w[i]) % (self.radix[i] + 1)
            full[:, self._columns[i]] = np.where(digit > 0, digit - 1, eq)
        return full[:, self._columns]

    def _forcing_over(self, sols: Sequence[np.ndarray]) -> np.ndarray:
        """Forcing table quantifying over the given per-context solution arrays."""
        stack = np.stack(sols)
        out = np.full(self.U, -1, dtype=np.int64)
        n = self.n
        for mask in range(1 << n):
            targets = [i for i in range(n) if mask >> i & 1]
            rest = [i for i in range(n) if not mask >> i & 1]
            base = sum((self.radix[i] + 1) * self.m[i] for i in targets)
            shape = tuple(self.radix[i] for i in rest)
            codes = np.zeros(shape, dtype=np.int64)
            for k, i in enumerate(rest):
                codes = codes + self._axis(np.arange(1, self.radix[i] + 1) * self.w[i], k, len(rest))
            vals = stack[:, codes]  # contexts x rest dims x variables
            packed = np.zeros(vals.shape[:-1], dtype=np.int64)
            for i in targets:
                packed += vals[..., i] * self.R[i]
            same = np.all(packed == packed[0:1], axis=0)
            arr = np.where(same, packed[0], -1)
            for axis in range(len(rest)):
                index = (slice(None),) * axis
                first = arr[index + (0,)]
                merged = np.where(np.all(arr == first[index + (None,)], axis=axis), first, -1)
                arr = np.concatenate([arr, merged[index + (None,)]], axis=axis)
            idx = np.full(arr.shape, base, dtype=np.int64)
            for k, i in enumerate(rest):
                idx = idx + self._axis(np.arange(self.radix[i] + 1) * self.m[i], k, len(rest))
            out[idx.reshape(-1)] = arr.reshape(-1)
        return out

    @staticmethod
    def _axis(vec: np.ndarray, k: int, ndim: int) -> np.ndarray:
        shape = [1] * ndim
        shape[k] = len(vec)
        return vec.reshape(shape)

    # -- convenience ---------------------------------------------------------

    def settings(self, variables: Sequence[int]):
        """All assignments to ``variables`` in lexicographic order."""
        for combo in itertools.product(*(range(self.radix[i]) for i in variables)):
            yield dict(zip(variables, combo))
