"""Canonical text for model documents."""

from __future__ import annotations

import itertools
import json
import re
from collections import Counter
from typing import Mapping

from ..scm import expr as ex
from ..scm.model import CausalModel
from .document import ContextDecl, Declaration, EquationDecl, ModelDocument

_BARE_LABEL = re.compile(r"-?\d+|\(-?[A-Za-z0-9_]+(?:,-?[A-Za-z0-9_]+)+\)")

# binding strength of each node type; children weaker than required get parentheses
_LEVEL = {ex.If: 0, ex.Case: 0, ex.Or: 1, ex.And: 2, ex.Not: 3, ex.Compare: 4, ex.Arith: 5,
          ex.Var: 6, ex.Lit: 6}


def format_label(label: str) -> str:
    return label if _BARE_LABEL.fullmatch(label) else json.dumps(label)


def format_expr(e: ex.Expr) -> str:
    if isinstance(e, ex.If):
        return f"if {_sub(e.cond, 1)} then {_sub(e.then, 1)} else {_sub(e.orelse, 1)}"
    if isinstance(e, ex.Case):
        arms = "".join(f"{_sub(c, 1)} -> {_sub(b, 1)}; " for c, b in e.arms)
        return f"case {arms}default -> {_sub(e.default, 1)}"
    if isinstance(e, ex.Or):
        return " | ".join(_sub(a, 2) for a in e.args)
    if isinstance(e, ex.And):
        return " & ".join(_sub(a, 3) for a in e.args)
    if isinstance(e, ex.Not):
        return "!" + _sub(e.arg, 3)
    if isinstance(e, ex.Compare):
        return f"{_sub(e.left, 5)} {e.op} {_sub(e.right, 5)}"
    if isinstance(e, ex.Arith):
        return f"{_sub(e.left, 5)} {e.op} {_sub(e.right, 6)}"
    if isinstance(e, ex.Var):
        return e.name
    if isinstance(e, ex.Lit):
        return format_label(e.label)
    raise TypeError(f"not an expression: {e!r}")


def _sub(e: ex.Expr, required: int) -> str:
    text = format_expr(e)
    return text if _LEVEL[type(e)] >= required else f"({text})"


def format_setting(pairs, sep: str = " & ") -> str:
    return sep.join(f"{k}={format_label(v)}" for k, v in pairs)


def serialize(doc: ModelDocument) -> str:
    lines: list[str] = []
    for d in doc.declarations:
        kw = "exo" if d.exogenous else "var"
        lines.append(f"{kw} {d.name} : {{{','.join(format_label(v) for v in d.values)}}}")
    for e in doc.equations:
        lines.append(f"{e.target} := {format_expr(e.body)}")
    for c in doc.contexts:
        lines.append(f"context {c.name} {{ {format_setting(c.assignment, ', ')} }}")
    for q in doc.queries:
        effect = " | ".join(f"{q.effect_variable}={format_label(v)}" for v in q.effect_values)
        parts = [f"def={q.definition}", f"cause = {format_setting(q.cause)}", f"effect = {effect}"]
        if q.context is not None:
            parts.append(f"context={q.context}")
        lines.append(f"query {q.name} {{ {'; '.join(parts)} }}")
    return "\n".join(lines) + ("\n" if lines else "")


def _table_expr(model: CausalModel, name: str) -> ex.Expr:
    """An expression computing the compiled table of ``name``: one case arm per
    input row whose output differs from the most common one."""
    eq = model.equations[name]
    if eq.body is not None:
        return eq.body
    table = model.tables[name]
    inputs = [model.variables[i].name for i in table.inputs]
    labels = model.values(name)
    if not inputs:
        return ex.Lit(labels[table.out[0]])
    default = Counter(table.out).most_common(1)[0][0]
    arms = []
    rows = itertools.product(*(model.values(n) for n in inputs))
    for row, out in zip(rows, table.out):
        if out == default:
            continue
        conds = [ex.Compare("=", ex.Var(n), ex.Lit(v)) for n, v in zip(inputs, row)]
        cond = conds[0] if len(conds) == 1 else ex.And(tuple(conds))
        arms.append((cond, ex.Lit(labels[out])))
    if not arms:
        return ex.Lit(labels[default])
    return ex.Case(tuple(arms), ex.Lit(labels[default]))


def document_from_model(model: CausalModel, contexts: Mapping[str, Mapping[str, str]] | None = None) -> ModelDocument:
    """A document describing ``model``; table-defined equations become case expressions."""
    decls = tuple(Declaration(v.name, v.exogenous, v.values) for v in model.variables)
    eqs = tuple(EquationDecl(n, _table_expr(model, n)) for n in model.endogenous)
    ctxs = tuple(ContextDecl(k, tuple((u, str(c[u])) for u in model.exogenous)) for k, c in (contexts or {}).items())
    return ModelDocument(decls, eqs, ctxs)
