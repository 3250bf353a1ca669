from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings

from actualcause.errors import CyclicModel, DuplicateName, MalformedFormula, NotNormalized, UnknownVariable, ValueOutOfRange
from actualcause.scm import (
    And,
    Atom,
    CausalModel,
    Equation,
    Intervened,
    Not,
    Or,
    Variable,
    ancestors,
    check_recursive,
    descendants,
    holds,
    intervene,
    is_normalized,
    normalize_exogenous,
    parents,
    root_variables,
    solve,
)
from actualcause.scm import expr as ex

from helpers import load, small_models


def lp():
    return load("lp").model


def test_lp_topological_order():
    assert check_recursive(lp()) == ["ST", "BT", "SH", "BH", "BS"]


def test_two_cycle_is_reported():
    m = CausalModel([Variable("X", (0, 1)), Variable("Y", (0, 1))],
                    [Equation.copy_of("Y", "X"), Equation.copy_of("X", "Y")])
    with pytest.raises(CyclicModel) as err:
        check_recursive(m)
    assert err.value.cycle == ["X", "Y"]


def test_single_root_equation_order():
    m = CausalModel([Variable("U", (0, 1), True), Variable("Y", (0, 1))], [Equation.copy_of("Y", "U")])
    assert check_recursive(m) == ["Y"]


def test_parents():
    assert parents(lp(), "BH") == {"BT", "SH"}
    assert parents(load("trumping").model, "C") == {"M", "S"}
    taut = ex.Or((ex.Var("X"), ex.Not(ex.Var("X"))))
    m = CausalModel([Variable("X", (0, 1)), Variable("Y", (0, 1))],
                    [Equation.constant("X", 1), Equation.of("Y", taut)])
    assert parents(m, "Y") == set()
    with pytest.raises(UnknownVariable):
        parents(lp(), "nope")


def test_ancestors_and_descendants():
    m = lp()
    assert ancestors(m, "BS") == {"BH", "SH", "BT", "ST"}
    assert descendants(m, "ST") == {"SH", "BH", "BS"}
    assert ancestors(m, "ST") == set()


def test_solve_examples():
    sw = load("switch")
    assert dict(solve(sw.model, sw.context("flip"))) == {"F": "1", "T": "1", "A": "1"}
    w = solve(lp(), {"U_ST": 1, "U_BT": 1})
    assert (w["SH"], w["BH"], w["BS"]) == ("1", "0", "1")
    vo = load("voting")
    assert solve(vo.model, vo.context("actual"))["O"] == "1"


def test_intervene_examples():
    u = {"U_ST": 1, "U_BT": 1}
    w = solve(intervene(lp(), {"SH": 0}), u)
    assert (w["BH"], w["BS"]) == ("1", "1")
    sw = load("switch")
    assert solve(intervene(sw.model, {"T": 2}), sw.context("flip"))["A"] == "0"
    m = lp()
    same = intervene(m, {})
    assert all(solve(same, c) == solve(m, c) for c in m.contexts())
    with pytest.raises(ValueOutOfRange):
        intervene(m, {"SH": 5})
    with pytest.raises(UnknownVariable):
        intervene(m, {"U_ST": 0})


def test_holds_examples():
    u = {"U_ST": 1, "U_BT": 1}
    assert holds(lp(), u, Intervened({"ST": 0}, Atom("BS", 1)))
    assert not holds(lp(), u, Intervened({"ST": 0, "BT": 0}, Atom("BS", 1)))
    tr = load("trumping")
    assert holds(tr.model, tr.context("charge"), Intervened({"S": 0}, Atom("C", 1)))
    assert holds(lp(), u, And(Atom("SH", 1), Not(Atom("BH", 1)), Or(Atom("BS", 0), Atom("BS", 1))))


def test_nested_intervention_rejected():
    f = Intervened({"ST": 0}, Not(Intervened({"BT": 0}, Atom("BS", 1))))
    with pytest.raises(MalformedFormula):
        holds(lp(), {"U_ST": 1, "U_BT": 1}, f)


def test_signature_validation():
    with pytest.raises(ValueError):
        Variable("X", (0,))
    with pytest.raises(DuplicateName):
        CausalModel([Variable("X", (0, 1)), Variable("X", (0, 1))], [])


def test_normalize_exonorm():
    doc = load("exonorm")
    m = doc.model
    assert not is_normalized(m)
    n = normalize_exogenous(m)
    assert "V_U" in n.endogenous
    assert n.inputs("Y") == ("X", "V_U")
    assert root_variables(n) == {"X", "V_U"}
    for u in m.contexts():
        w, wn = solve(m, u), solve(n, u)
        assert all(w[v] == wn[v] for v in m.endogenous)


def test_normalize_identity_and_shared_copy():
    m = lp()
    assert normalize_exogenous(m) is m
    body = ex.And((ex.Var("U"), ex.Var("X")))
    m2 = CausalModel(
        [Variable("U", (0, 1), True), Variable("X", (0, 1)), Variable("Y", (0, 1)), Variable("Z", (0, 1))],
        [Equation.constant("X", 1), Equation.of("Y", body), Equation.of("Z", ex.Not(ex.Var("U")))])
    n = normalize_exogenous(m2)
    assert [v for v in n.endogenous if v.startswith("V_")] == ["V_U"]
    for u in m2.contexts():
        assert all(solve(m2, u)[v] == solve(n, u)[v] for v in m2.endogenous)


def test_fresh_name_avoids_collision():
    m = CausalModel(
        [Variable("U", (0, 1), True), Variable("V_U", (0, 1)), Variable("Y", (0, 1))],
        [Equation.constant("V_U", 0), Equation.of("Y", ex.Not(ex.Var("U")))])
    n = normalize_exogenous(m)
    assert "V_U_2" in n.endogenous


def test_root_variables():
    assert root_variables(lp()) == {"ST", "BT"}
    with pytest.raises(NotNormalized):
        root_variables(load("exonorm").model)


@settings(max_examples=60, deadline=None)
@given(small_models())
def test_solutions_satisfy_equations(case):
    model, _ = case
    for u in model.contexts():
        w = solve(model, u)
        env = {**{k: str(v) for k, v in u.items()}, **dict(w)}
        for v in model.endogenous:
            assert str(ex.as_label(model.equations[v].apply(env))) == w[v]


@settings(max_examples=60, deadline=None)
@given(small_models())
def test_intervention_assigns_exactly(case):
    model, ctx = case
    for v in model.endogenous:
        for label in model.values(v):
            assert solve(intervene(model, {v: label}), ctx)[v] == label


@settings(max_examples=40, deadline=None)
@given(small_models())
def test_setting_all_roots_fixes_world(case):
    model, _ = case
    roots = sorted(root_variables(model))
    for values in itertools.product(*(model.values(r) for r in roots)):
        sub = intervene(model, dict(zip(roots, values)))
        assert len({tuple(solve(sub, u).items()) for u in model.contexts()}) == 1


@settings(max_examples=40, deadline=None)
@given(small_models())
def test_parents_match_dependence(case):
    model, _ = case
    for v in model.endogenous:
        others = [o for o in model.endogenous if o != v]
        dep = set()
        for o in others:
            rest = [r for r in others if r != o]
            for combo in itertools.product(*(model.values(r) for r in rest)):
                for u in model.contexts():
                    vals = {solve(intervene(model, {**dict(zip(rest, combo)), o: x}), u)[v] for x in model.values(o)}
                    if len(vals) > 1:
                        dep.add(o)
                        break
                if o in dep:
                    break
        assert dep == parents(model, v)
