from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings

from actualcause.causation import (
    Analyzer,
    DefinitionId,
    Effect,
    Verdict,
    ac1,
    ac2_general,
    ac2_modified_hp,
    ac2_original_hp,
    ac2_updated_hp,
    dependence_holds,
    find_all_causes,
    is_cause,
    is_part_of_cause,
    verify_evidence,
)
from actualcause.causation.definitions import Necessity
from actualcause.errors import NotNormalized, OverlappingSets
from actualcause.scm import CausalModel, Equation, Variable
from actualcause.sufficiency import SufficiencyKind

from helpers import load, small_models

D = DefinitionId
Y1 = Effect.atom("Y", 1)
PRISONERS = [("prisoner", "d0"), ("prisoner", "d1"), ("prisoner_d_eq_a", None), ("prisoner_a_eq_d", None),
             ("prisoner_d_not_a", None), ("prisoner_a_not_d", None)]


def doc_ctx(name, ctx=None):
    doc = load(name)
    return doc.model, doc.context(ctx)


def test_definition_ids():
    assert D.parse("def2") is D.DEF2
    assert D.parse("Modified HP") is D.MODIFIED_HP
    assert len(list(D)) == 16
    with pytest.raises(ValueError):
        D.parse("Def13")


def test_ac1_examples():
    m, u = doc_ctx("lp", "both")
    assert ac1(m, u, {"ST": 1}, Effect.atom("BS", 1))
    assert not ac1(m, u, {"BT": 0}, Effect.atom("BS", 1))
    m, u = doc_ctx("storm", "actual")
    assert ac1(m, u, {"AS": 1}, Effect("F", ("1", "2")))


def test_ac2_general_examples():
    m, u = doc_ctx("trumping", "charge")
    assert ac2_general(m, u, {"S": 1}, Effect.atom("C", 1), SufficiencyKind.ACTUAL_STRONG,
                       Necessity.CONTRASTIVE) is None
    m, u = doc_ctx("switch", "flip")
    w = ac2_general(m, u, {"F": 1}, Effect.atom("A", 1), SufficiencyKind.ACTUAL_STRONG, Necessity.MINIMAL)
    assert w is not None and w.contrast is None


def test_counter_def2_alternative_witness():
    m, u = doc_ctx("counter", "actual")
    v = is_cause(m, u, {"X": 1}, Y1, D.DEF2)
    assert v.is_cause and v.contrast == {"X": "0"}
    assert verify_evidence(m, u, v).ok
    # the witness W = {A=1} with network {N, Y} also re-verifies
    from actualcause.sufficiency import NetworkWitness
    alt = Verdict(D.DEF2, {"X": "1"}, Y1, True, "cause", witness={"A": "1"},
                  network=NetworkWitness(("N", "Y"), ("1", "1")), contrast={"X": "0"})
    assert verify_evidence(m, u, alt).ok


@pytest.mark.parametrize("name, ctx", PRISONERS)
def test_original_hp_in_every_prisoner_variant(name, ctx):
    m, u = doc_ctx(name, ctx)
    v = is_cause(m, u, {"X": 1}, Y1, D.ORIGINAL_HP)
    assert v.is_cause and verify_evidence(m, u, v).ok
    assert ac2_original_hp(m, u, {"X": 1}, Y1) is not None
    # the witness D=1, A=0 works in every variant
    rest = tuple(n for n in m.endogenous if n not in ("D", "A"))
    alt = Verdict(D.ORIGINAL_HP, {"X": "1"}, Y1, True, "cause", witness={"D": "1", "A": "0"},
                  contrast={"X": "0"}, partition=rest)
    assert verify_evidence(m, u, alt).ok


def test_hp_negative_examples():
    m, u = doc_ctx("prisoner", "d0")
    assert ac2_updated_hp(m, u, {"X": 1}, Y1) is None
    assert not is_cause(m, u, {"X": 1}, Y1, D.UPDATED_HP).is_cause
    m, u = doc_ctx("noname", "on")
    assert ac2_modified_hp(m, u, {"X": 1}, Y1) is None
    assert not is_cause(m, u, {"X": 1}, Y1, D.MODIFIED_HP).is_cause


def test_voting_def2_first_vote_is_a_cause():
    m, u = doc_ctx("voting", "actual")
    assert is_cause(m, u, {"A1": 1}, Effect.atom("O", 1), D.DEF2).is_cause


def test_voting_def2_third_vote_literal_reading():
    """Under the definition as implemented, A3=0 is a Def2 cause: A1=1, A4=0,
    A5=0 force O=1 whatever A2 does, while A3=1 with A2=0 gives O=0."""
    m, u = doc_ctx("voting", "actual")
    v = is_cause(m, u, {"A3": 0}, Effect.atom("O", 1), D.DEF2)
    assert v.is_cause
    assert v.network.as_dict() == {"A1": "1", "A4": "0", "A5": "0", "O": "1"}
    assert v.contrast == {"A3": "1"}
    assert verify_evidence(m, u, v).ok


@pytest.mark.xfail(strict=True, reason="literal Def2 also makes A3=0, A4=0 and A5=0 causes; see decisions ledger")
def test_voting_def2_causes_are_the_two_agreeing_votes():
    m, u = doc_ctx("voting", "actual")
    found = find_all_causes(m, u, Effect.atom("O", 1), D.DEF2, 1)
    assert [v.cause for v in found] == [{"A1": "1"}, {"A2": "1"}]


def test_voting_modified_hp_every_vote_is_part_of_a_cause():
    m, u = doc_ctx("voting", "actual")
    world = Analyzer(m).session(u).actual_world()
    for a in ("A1", "A2", "A3", "A4", "A5"):
        v = is_part_of_cause(m, u, {a: world[a]}, Effect.atom("O", 1), D.MODIFIED_HP)
        assert v.is_cause and a in v.part_of


def test_lp_def4_billy():
    m, u = doc_ctx("lp", "both")
    assert is_cause(m, u, {"BT": 1}, Effect.atom("BS", 1), D.DEF4).is_cause
    assert not is_cause(m, u, {"BT": 1}, Effect.atom("BS", 1), D.DEF2).is_cause


def test_part_of_cause_examples():
    m, u = doc_ctx("ex1", "actual")
    v = is_part_of_cause(m, u, {"X": 1}, Y1, D.MODIFIED_HP)
    assert v.is_cause and v.part_of == {"X": "1", "D": "1"}
    m, u = doc_ctx("prisoner_a_not_d")
    v = is_part_of_cause(m, u, {"X": 1}, Y1, D.MODIFIED_HP)
    assert v.is_cause and v.part_of == {"X": "1", "D": "0"}


@pytest.mark.parametrize("d", [D.DEF7, D.DEF8, D.DEF9, D.DEF10, D.DEF11, D.DEF12])
@pytest.mark.parametrize("name, ctx", [("lp", "both"), ("ex1", "actual"), ("voting", "actual"), ("storm", "actual")])
def test_minimal_necessity_part_of_equals_cause(d, name, ctx):
    m, u = doc_ctx(name, ctx)
    s = Analyzer(m).session(u)
    world = s.actual_world()
    y = m.endogenous[-1]
    eff = Effect.atom(y, world[y])
    for x in m.endogenous:
        if x != y:
            assert s.is_part_of_cause({x: world[x]}, eff, d).is_cause == s.is_cause({x: world[x]}, eff, d).is_cause


def test_find_all_causes_lp():
    # frozen from a sweep of all candidates, each re-verified through the slow path
    m, u = doc_ctx("lp", "both")
    for size in (1, 2, 3):
        found = find_all_causes(m, u, Effect.atom("BS", 1), D.DEF2, size)
        assert [v.cause for v in found] == [{"ST": "1"}, {"SH": "1"}]
        assert all(verify_evidence(m, u, v).ok for v in found)
    found = find_all_causes(m, u, Effect.atom("BS", 1), D.DEF4, 2)
    assert [v.cause for v in found] == [{"ST": "1"}, {"BT": "1"}, {"SH": "1"}]


def test_constant_effect_has_no_causes():
    m = CausalModel([Variable("U", (0, 1), True), Variable("X", (0, 1)), Variable("Y", (0, 1))],
                    [Equation.copy_of("X", "U"), Equation.constant("Y", 1)])
    for d in D:
        assert find_all_causes(m, {"U": 1}, Y1, d, 2) == []


def test_dependence_examples():
    m, u = doc_ctx("lp", "both")
    assert not dependence_holds(m, u, {"ST": 1}, Effect.atom("BS", 1))
    m, u = doc_ctx("ex2", "actual")
    assert dependence_holds(m, u, {"X": 1}, Y1)
    assert not is_cause(m, u, {"X": 1}, Y1, D.DEF10).is_cause
    m, u = doc_ctx("ex4", "actual")
    assert dependence_holds(m, u, {"X": 1}, Y1)
    assert not is_cause(m, u, {"X": 1}, Y1, D.DEF3).is_cause


def test_def7_never_fires_on_the_corpus():
    for name, ctx in [("lp", "both"), ("storm", "actual"), ("voting", "actual"), ("ex4", "actual")]:
        m, u = doc_ctx(name, ctx)
        s = Analyzer(m).session(u)
        world = s.actual_world()
        for y in m.endogenous:
            for v in s.find_all_causes(Effect.atom(y, world[y]), D.DEF7, 2):
                pytest.fail(f"Def7 cause {v.cause} in {name}")


def test_ac1_failure_and_ac3_evidence():
    m, u = doc_ctx("lp", "both")
    v = is_cause(m, u, {"BT": 0}, Effect.atom("BS", 1), D.DEF2)
    assert not v.is_cause and v.reason == "AC1 fails"
    v = is_cause(m, u, {"ST": 1, "BT": 1}, Effect.atom("BS", 1), D.DEF4)
    assert not v.is_cause and v.reason == "AC3 fails"
    assert v.minimality_counterexample in ({"ST": "1"}, {"BT": "1"})


def test_query_errors():
    m, u = doc_ctx("lp", "both")
    with pytest.raises(OverlappingSets):
        is_cause(m, u, {"BS": 1}, Effect.atom("BS", 1), D.DEF2)
    with pytest.raises(ValueError):
        is_cause(m, u, {}, Effect.atom("BS", 1), D.DEF2)


def test_normalization_policy():
    m, u = doc_ctx("exonorm", "actual")
    assert is_cause(m, u, {"X": 1}, Y1, D.UPDATED_HP).is_cause in (True, False)
    with pytest.raises(NotNormalized):
        Analyzer(m, strict=True)


def test_verbose_records_the_alternate_reading():
    m, u = doc_ctx("storm", "actual")
    v = Analyzer(m).session(u).is_cause({"AS": 1}, Effect("F", ("1", "2")), D.DEF2, verbose=True)
    assert v.alternate is not None and "actual-restriction" in v.alternate


def test_verdict_to_dict():
    m, u = doc_ctx("lp", "both")
    d = is_cause(m, u, {"ST": 1}, Effect.atom("BS", 1), D.DEF2).to_dict()
    assert d["is_cause"] and d["definition"] == "Def2" and d["contrast"] == {"ST": "0"}
    assert d["network"]["BS"] == "1"


def _positives(model, ctx, max_size=2):
    s = Analyzer(model).session(ctx)
    world = s.actual_world()
    for y in model.endogenous:
        if y.startswith("R"):
            continue
        eff = Effect.atom(y, world[y])
        pool = [v for v in model.endogenous if v != y]
        for k in range(1, max_size + 1):
            for X in itertools.combinations(pool, k):
                for d in D:
                    v = s.is_cause({x: world[x] for x in X}, eff, d)
                    if v.is_cause:
                        yield s, world, v


@settings(max_examples=40, deadline=None)
@given(small_models(max_nonroots=2))
def test_positive_verdicts_carry_valid_evidence(case):
    model, ctx = case
    for _, world, v in _positives(model, ctx):
        assert all(world[k] == val for k, val in v.cause.items())
        chk = verify_evidence(model, ctx, v)
        assert chk.ok, chk.failures


@settings(max_examples=40, deadline=None)
@given(small_models(max_nonroots=2))
def test_causes_are_minimal(case):
    model, ctx = case
    for s, world, v in _positives(model, ctx):
        if len(v.cause) > 1:
            for x in v.cause:
                assert not s.is_cause({x: world[x]}, v.effect, v.definition).is_cause


@settings(max_examples=40, deadline=None)
@given(small_models(max_nonroots=2))
def test_equivalent_definitions_agree(case):
    model, ctx = case
    s = Analyzer(model).session(ctx)
    world = s.actual_world()
    groups = [(D.MODIFIED_HP, D.DEF1), (D.DEF2, D.DEF5), (D.DEF8, D.DEF11), (D.DEF3, D.DEF6, D.DEF9, D.DEF12)]
    for y in model.endogenous:
        if y.startswith("R"):
            continue
        eff = Effect.atom(y, world[y])
        for x in model.endogenous:
            if x != y:
                for g in groups:
                    assert len({s.is_cause({x: world[x]}, eff, d).is_cause for d in g}) == 1
