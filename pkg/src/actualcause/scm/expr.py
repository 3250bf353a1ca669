"""Expression trees for structural equation bodies.

Values flow through an expression as one of three kinds: a range label
(``str``), a truth value (``bool``) or an integer (from ``+``/``-``).
Coercions are deliberately narrow: only the labels ``"0"``/``"1"`` are
truthy/falsy, and only integer-looking labels take part in arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Union

from ..span import SourceSpan


class ExprError(ValueError):
    def __init__(self, message: str, span: SourceSpan | None = None):
        self.span = span
        super().__init__(message)


@dataclass(frozen=True)
class Var:
    name: str
    span: SourceSpan | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Lit:
    label: str
    span: SourceSpan | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Compare:
    op: str  # one of = != < <= > >=
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Arith:
    op: str  # + or -
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Not:
    arg: "Expr"


@dataclass(frozen=True)
class And:
    args: tuple["Expr", ...]


@dataclass(frozen=True)
class Or:
    args: tuple["Expr", ...]


@dataclass(frozen=True)
class If:
    cond: "Expr"
    then: "Expr"
    orelse: "Expr"


@dataclass(frozen=True)
class Case:
    arms: tuple[tuple["Expr", "Expr"], ...]
    default: "Expr"


Expr = Union[Var, Lit, Compare, Arith, Not, And, Or, If, Case]

COMPARISONS = ("=", "!=", "<", "<=", ">", ">=")


def references(expr: Expr) -> list[str]:
    """Variable names referenced by ``expr``, first occurrence order."""
    seen: dict[str, None] = {}

    def walk(e: Expr) -> None:
        if isinstance(e, Var):
            seen.setdefault(e.name)
        elif isinstance(e, (Compare, Arith)):
            walk(e.left)
            walk(e.right)
        elif isinstance(e, Not):
            walk(e.arg)
        elif isinstance(e, (And, Or)):
            for a in e.args:
                walk(a)
        elif isinstance(e, If):
            walk(e.cond)
            walk(e.then)
            walk(e.orelse)
        elif isinstance(e, Case):
            for c, b in e.arms:
                walk(c)
                walk(b)
            walk(e.default)

    walk(expr)
    return list(seen)


def as_bool(value) -> bool:
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return value != 0
    if value == "1":
        return True
    if value == "0":
        return False
    raise ExprError(f"label {value!r} used where a truth value is expected")


def as_int(value) -> int:
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, int):
        return value
    try:
        return int(value)
    except ValueError:
        raise ExprError(f"label {value!r} used in arithmetic") from None


def as_label(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, int):
        return str(value)
    return value


def evaluate(expr: Expr, env: Mapping[str, str]):
    """Evaluate ``expr`` with variables bound to range labels."""
    if isinstance(expr, Var):
        return env[expr.name]
    if isinstance(expr, Lit):
        return expr.label
    if isinstance(expr, Compare):
        a = evaluate(expr.left, env)
        b = evaluate(expr.right, env)
        if expr.op == "=":
            return as_label(a) == as_label(b)
        if expr.op == "!=":
            return as_label(a) != as_label(b)
        a, b = as_int(a), as_int(b)
        return {"<": a < b, "<=": a <= b, ">": a > b, ">=": a >= b}[expr.op]
    if isinstance(expr, Arith):
        a = as_int(evaluate(expr.left, env))
        b = as_int(evaluate(expr.right, env))
        return a + b if expr.op == "+" else a - b
    if isinstance(expr, Not):
        return not as_bool(evaluate(expr.arg, env))
    if isinstance(expr, And):
        return all(as_bool(evaluate(a, env)) for a in expr.args)
    if isinstance(expr, Or):
        return any(as_bool(evaluate(a, env)) for a in expr.args)
    if isinstance(expr, If):
        branch = expr.then if as_bool(evaluate(expr.cond, env)) else expr.orelse
        return evaluate(branch, env)
    if isinstance(expr, Case):
        for cond, body in expr.arms:
            if as_bool(evaluate(cond, env)):
                return evaluate(body, env)
        return evaluate(expr.default, env)
    raise TypeError(f"not an expression: {expr!r}")


def rename(expr: Expr, mapping: Mapping[str, str]) -> Expr:
    """Return ``expr`` with variable references renamed through ``mapping``."""
    if isinstance(expr, Var):
        return Var(mapping.get(expr.name, expr.name), expr.span)
    if isinstance(expr, Lit):
        return expr
    if isinstance(expr, Compare):
        return Compare(expr.op, rename(expr.left, mapping), rename(expr.right, mapping))
    if isinstance(expr, Arith):
        return Arith(expr.op, rename(expr.left, mapping), rename(expr.right, mapping))
    if isinstance(expr, Not):
        return Not(rename(expr.arg, mapping))
    if isinstance(expr, And):
        return And(tuple(rename(a, mapping) for a in expr.args))
    if isinstance(expr, Or):
        return Or(tuple(rename(a, mapping) for a in expr.args))
    if isinstance(expr, If):
        return If(rename(expr.cond, mapping), rename(expr.then, mapping), rename(expr.orelse, mapping))
    if isinstance(expr, Case):
        arms = tuple((rename(c, mapping), rename(b, mapping)) for c, b in expr.arms)
        return Case(arms, rename(expr.default, mapping))
    raise TypeError(f"not an expression: {expr!r}")
