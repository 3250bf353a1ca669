"""Finite structural causal models.

Each variable has an ordered range of string labels; internally a value is
the index of its label.  Equations are compiled into lookup tables over the
variables they actually depend on, so vacuous references (``Y := X | !X``)
vanish and the parent relation is the semantic one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from ..errors import CyclicModel, DuplicateName, NotNormalized, UnknownVariable, ValueOutOfRange
from . import expr as ex


@dataclass(frozen=True)
class Variable:
    name: str
    values: tuple[str, ...]
    exogenous: bool = False

    def __post_init__(self) -> None:
        values = tuple(str(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if len(values) < 2:
            raise ValueError(f"variable {self.name!r} needs at least two values")
        if len(set(values)) != len(values):
            raise DuplicateName(f"{self.name}: repeated range label")

    @property
    def kind(self) -> str:
        return "exogenous" if self.exogenous else "endogenous"


@dataclass(frozen=True)
class Equation:
    """Structural equation for ``target``.

    Either ``body`` (an expression tree) or ``function`` (a callable taking a
    mapping from the names in ``inputs`` to labels) defines the mechanism.
    """

    target: str
    body: ex.Expr | None = None
    inputs: tuple[str, ...] = ()
    function: Callable[[Mapping[str, str]], object] | None = field(default=None, compare=False, repr=False)

    @classmethod
    def of(cls, target: str, body: ex.Expr) -> "Equation":
        return cls(target, body, tuple(ex.references(body)))

    @classmethod
    def from_callable(cls, target: str, inputs: Sequence[str], fn) -> "Equation":
        return cls(target, None, tuple(inputs), fn)

    @classmethod
    def constant(cls, target: str, label) -> "Equation":
        return cls(target, ex.Lit(str(label)), ())

    @classmethod
    def copy_of(cls, target: str, source: str) -> "Equation":
        return cls(target, ex.Var(source), (source,))

    def apply(self, env: Mapping[str, str]):
        if self.body is not None:
            return ex.evaluate(self.body, env)
        return self.function(env)


@dataclass(frozen=True)
class Table:
    """Compiled mechanism: ``out`` indexed in product order over ``inputs``."""

    inputs: tuple[int, ...]
    radices: tuple[int, ...]
    out: tuple[int, ...]

    def lookup(self, values: Sequence[int]) -> int:
        pos = 0
        for i, r in zip(self.inputs, self.radices):
            pos = pos * r + values[i]
        return self.out[pos]


def _project(table: Table) -> Table:
    """Drop inputs the table does not depend on."""
    inputs, radices, out = list(table.inputs), list(table.radices), list(table.out)
    j = 0
    while j < len(inputs):
        inner = 1
        for r in radices[j + 1:]:
            inner *= r
        block = inner * radices[j]
        vacuous = True
        for start in range(0, len(out), block):
            base = out[start:start + inner]
            for v in range(1, radices[j]):
                if out[start + v * inner:start + (v + 1) * inner] != base:
                    vacuous = False
                    break
            if not vacuous:
                break
        if vacuous:
            out = [x for start in range(0, len(out), block) for x in out[start:start + inner]]
            del inputs[j], radices[j]
        else:
            j += 1
    return Table(tuple(inputs), tuple(radices), tuple(out))


class CausalModel:
    """A signature plus one structural equation per endogenous variable.

    Construction checks names, references and ranges.  Recursiveness is
    checked lazily (see ``check_recursive``) so that cyclic models can still
    be built and reported on.
    """

    def __init__(self, variables: Iterable[Variable], equations: Iterable[Equation]):
        self.variables: tuple[Variable, ...] = tuple(variables)
        self._index: dict[str, int] = {}
        for i, var in enumerate(self.variables):
            if var.name in self._index:
                raise DuplicateName(var.name)
            self._index[var.name] = i
        self.exogenous = tuple(v.name for v in self.variables if v.exogenous)
        self.endogenous = tuple(v.name for v in self.variables if not v.exogenous)
        eqs: dict[str, Equation] = {}
        for eq in equations:
            if eq.target in eqs:
                raise DuplicateName(eq.target)
            var = self._var(eq.target)
            if var.exogenous:
                raise UnknownVariable(eq.target, "exogenous variables have no equation")
            eqs[eq.target] = eq
        missing = [n for n in self.endogenous if n not in eqs]
        if missing:
            raise UnknownVariable(missing[0], "endogenous variable without an equation")
        self.equations: dict[str, Equation] = {n: eqs[n] for n in self.endogenous}
        self.tables: dict[str, Table] = {n: self._compile(eqs[n]) for n in self.endogenous}
        self._order: tuple[str, ...] | None = None

    @classmethod
    def _from_tables(cls, variables, equations, tables) -> "CausalModel":
        model = cls.__new__(cls)
        model.variables = tuple(variables)
        model._index = {v.name: i for i, v in enumerate(model.variables)}
        model.exogenous = tuple(v.name for v in model.variables if v.exogenous)
        model.endogenous = tuple(v.name for v in model.variables if not v.exogenous)
        model.equations = dict(equations)
        model.tables = dict(tables)
        model._order = None
        return model

    # -- signature helpers -------------------------------------------------

    def _var(self, name: str) -> Variable:
        try:
            return self.variables[self._index[name]]
        except KeyError:
            raise UnknownVariable(name) from None

    def variable(self, name: str) -> Variable:
        return self._var(name)

    def values(self, name: str) -> tuple[str, ...]:
        return self._var(name).values

    def index_of(self, name: str) -> int:
        self._var(name)
        return self._index[name]

    def is_endogenous(self, name: str) -> bool:
        return not self._var(name).exogenous

    def encode(self, name: str, label) -> int:
        values = self._var(name).values
        try:
            return values.index(str(label))
        except ValueError:
            raise ValueOutOfRange(name, label) from None

    def decode(self, name: str, index: int) -> str:
        return self._var(name).values[index]

    def _compile(self, eq: Equation) -> Table:
        names = list(eq.inputs)
        for n in names:
            self._var(n)
        target = self._var(eq.target)
        radices = tuple(len(self._var(n).values) for n in names)
        out = []
        for combo in itertools.product(*(self._var(n).values for n in names)):
            label = ex.as_label(eq.apply(dict(zip(names, combo))))
            if label not in target.values:
                raise ValueOutOfRange(eq.target, label, "equation result outside range")
            out.append(target.values.index(label))
        table = Table(tuple(self._index[n] for n in names), radices, tuple(out))
        return _project(table)

    def inputs(self, name: str) -> tuple[str, ...]:
        """Variables (exogenous or endogenous) the equation of ``name`` depends on."""
        return tuple(self.variables[i].name for i in self.tables[name].inputs)

    def contexts(self) -> Iterator[dict[str, str]]:
        """All contexts, lexicographic over declaration order."""
        ranges = [self._var(n).values for n in self.exogenous]
        for combo in itertools.product(*ranges):
            yield dict(zip(self.exogenous, combo))

    @property
    def order(self) -> tuple[str, ...]:
        if self._order is None:
            self._order = tuple(check_recursive(self))
        return self._order

    def __eq__(self, other) -> bool:
        if not isinstance(other, CausalModel):
            return NotImplemented
        return self.variables == other.variables and self.tables == other.tables

    def __hash__(self) -> int:
        return hash((self.variables, tuple(sorted(self.tables.items()))))

    def __repr__(self) -> str:
        return f"CausalModel(exogenous={list(self.exogenous)}, endogenous={list(self.endogenous)})"


class World(Mapping[str, str]):
    """Immutable assignment of labels to the endogenous variables."""

    __slots__ = ("_values",)

    def __init__(self, values: Mapping[str, str]):
        self._values = dict(values)

    def __getitem__(self, key: str) -> str:
        return self._values[key]

    def __iter__(self):
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def __hash__(self) -> int:
        return hash(frozenset(self._values.items()))

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}={v}" for k, v in self._values.items())
        return f"World({inner})"


def _endogenous_parents(model: CausalModel, name: str) -> list[str]:
    return [n for n in model.inputs(name) if model.is_endogenous(n)]


def check_recursive(model: CausalModel) -> list[str]:
    """Topological order of the endogenous variables, ties broken by declaration order.

    Raises ``CyclicModel`` with one dependency cycle when none exists.
    """
    pending = {n: set(_endogenous_parents(model, n)) for n in model.endogenous}
    order: list[str] = []
    while pending:
        ready = [n for n in model.endogenous if n in pending and not pending[n] - set(order)]
        if not ready:
            raise CyclicModel(_find_cycle(model, pending))
        order.append(ready[0])
        del pending[ready[0]]
    return order


def _find_cycle(model: CausalModel, pending: dict[str, set[str]]) -> list[str]:
    # walk parent edges inside the blocked set until a name repeats
    start = next(n for n in model.endogenous if n in pending)
    path: list[str] = []
    seen: dict[str, int] = {}
    node = start
    while node not in seen:
        seen[node] = len(path)
        path.append(node)
        node = next(p for p in model.endogenous if p in pending[node] and p in pending)
    cycle = path[seen[node]:]
    cycle.reverse()  # parent edges were followed; report in dependency order
    pos = {n: i for i, n in enumerate(model.endogenous)}
    k = min(range(len(cycle)), key=lambda i: pos[cycle[i]])
    return cycle[k:] + cycle[:k]


def parents(model: CausalModel, name: str) -> set[str]:
    if not model.is_endogenous(name):
        raise UnknownVariable(name, "not an endogenous variable")
    return set(_endogenous_parents(model, name))


def ancestors(model: CausalModel, name: str) -> set[str]:
    result: set[str] = set()
    frontier = list(parents(model, name))
    while frontier:
        p = frontier.pop()
        if p not in result:
            result.add(p)
            frontier.extend(parents(model, p))
    return result


def descendants(model: CausalModel, name: str) -> set[str]:
    if not model.is_endogenous(name):
        raise UnknownVariable(name, "not an endogenous variable")
    return {v for v in model.endogenous if name in ancestors(model, v)}


def _check_context(model: CausalModel, u: Mapping[str, object]) -> list[int]:
    values = [0] * len(model.variables)
    for name in u:
        if not model.variable(name).exogenous:
            raise UnknownVariable(name, "context assigns an endogenous variable")
    for name in model.exogenous:
        if name not in u:
            raise UnknownVariable(name, "context does not assign it")
        values[model.index_of(name)] = model.encode(name, u[name])
    return values


def solve(model: CausalModel, u: Mapping[str, object]) -> World:
    """Unique solution of the equations in context ``u``."""
    values = _check_context(model, u)
    for name in model.order:
        values[model.index_of(name)] = model.tables[name].lookup(values)
    return World({n: model.decode(n, values[model.index_of(n)]) for n in model.endogenous})


def intervene(model: CausalModel, setting: Mapping[str, object]) -> CausalModel:
    """The model in which each variable of ``setting`` is held at its value."""
    tables = dict(model.tables)
    equations = dict(model.equations)
    for name, label in setting.items():
        if not model.is_endogenous(name):
            raise UnknownVariable(name, "interventions target endogenous variables")
        idx = model.encode(name, label)
        tables[name] = Table((), (), (idx,))
        equations[name] = Equation.constant(name, model.decode(name, idx))
    return CausalModel._from_tables(model.variables, equations, tables)


def is_root_form(model: CausalModel, name: str) -> bool:
    """True when the equation of ``name`` is V = U for an exogenous U of identical range."""
    table = model.tables[name]
    if len(table.inputs) != 1:
        return False
    source = model.variables[table.inputs[0]]
    if not source.exogenous or source.values != model.values(name):
        return False
    return table.out == tuple(range(len(source.values)))


def is_normalized(model: CausalModel) -> bool:
    for name in model.endogenous:
        if is_root_form(model, name):
            continue
        if any(not model.is_endogenous(n) for n in model.inputs(name)):
            return False
    return True


def root_variables(model: CausalModel) -> set[str]:
    if not is_normalized(model):
        raise NotNormalized("exogenous variables occur outside equations of the form V = U")
    return {n for n in model.endogenous if is_root_form(model, n)}


def _fresh_name(taken: set[str], base: str) -> str:
    if base not in taken:
        return base
    k = 2
    while f"{base}_{k}" in taken:
        k += 1
    return f"{base}_{k}"


def normalize_exogenous(model: CausalModel) -> CausalModel:
    """Route every non-root use of an exogenous U through an endogenous copy of U.

    An existing root V = U is reused; otherwise a fresh variable ``V_U`` is
    appended.  Already normalized models are returned unchanged.
    """
    if is_normalized(model):
        return model
    offending: list[str] = []
    for name in model.endogenous:
        if is_root_form(model, name):
            continue
        for n in model.inputs(name):
            if not model.is_endogenous(n) and n not in offending:
                offending.append(n)
    offending.sort(key=model.index_of)
    taken = {v.name for v in model.variables}
    replacement: dict[str, str] = {}
    new_vars = list(model.variables)
    new_eqs = dict(model.equations)
    for u in offending:
        existing = [n for n in model.endogenous if is_root_form(model, n) and model.inputs(n) == (u,)]
        if existing:
            replacement[u] = existing[0]
            continue
        fresh = _fresh_name(taken, "V_" + u)
        taken.add(fresh)
        replacement[u] = fresh
        new_vars.append(Variable(fresh, model.values(u)))
        new_eqs[fresh] = Equation.copy_of(fresh, u)
    for name in model.endogenous:
        if is_root_form(model, name):
            continue
        eq = model.equations[name]
        if not any(n in replacement for n in eq.inputs):
            continue
        if eq.body is not None:
            new_eqs[name] = Equation.of(name, ex.rename(eq.body, replacement))
        else:
            new_eqs[name] = _renamed_callable(eq, replacement)
    return CausalModel(new_vars, [new_eqs[v.name] for v in new_vars if not v.exogenous])


def _renamed_callable(eq: Equation, mapping: Mapping[str, str]) -> Equation:
    inputs = tuple(mapping.get(n, n) for n in eq.inputs)
    pairs = list(zip(eq.inputs, inputs))
    fn = eq.function

    def wrapped(env):
        return fn({old: env[new] for old, new in pairs})

    return Equation.from_callable(eq.target, inputs, wrapped)
