"""Shared fixtures and hypothesis strategies."""

from __future__ import annotations

from hypothesis import strategies as st

from actualcause.corpus import fixture_text
from actualcause.dsl import parse
from actualcause.verify.family import _build


def load(name: str):
    """Parsed corpus fixture by file stem."""
    return parse(fixture_text(name + ".scm"))


@st.composite
def small_models(draw, max_nonroots: int = 3, max_range: int = 3):
    """A normalized model with 1-2 roots and 1..max_nonroots non-roots, each
    reading up to two earlier variables through an arbitrary table, plus a context."""
    roots = draw(st.integers(1, 2))
    n = draw(st.integers(1, max_nonroots))
    root_ranges = [draw(st.integers(2, max_range)) for _ in range(roots)]
    ranges = [draw(st.integers(2, max_range)) for _ in range(n)]
    radix = {f"R{j + 1}": root_ranges[j] for j in range(roots)}
    eqs = []
    for i in range(n):
        names = sorted(radix)
        k = draw(st.integers(0, min(2, len(names))))
        parents = tuple(sorted(draw(st.permutations(names))[:k]))
        cells = 1
        for p in parents:
            cells *= radix[p]
        out = tuple(draw(st.lists(st.integers(0, ranges[i] - 1), min_size=cells, max_size=cells)))
        eqs.append((parents, out))
        radix[f"V{i + 1}"] = ranges[i]
    model = _build(roots, eqs, ranges, root_ranges)
    ctx = {f"U{j + 1}": str(draw(st.integers(0, root_ranges[j] - 1))) for j in range(roots)}
    return model, ctx
