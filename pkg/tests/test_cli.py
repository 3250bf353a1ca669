from __future__ import annotations

import json
from importlib import resources

import pytest

from actualcause.cli import main
from actualcause.dsl import parse

FIXTURES = resources.files("actualcause.corpus") / "fixtures"


def fx(name: str) -> str:
    return str(FIXTURES / f"{name}.scm")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def structured(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "structured")
    return code, json.loads(out)


def test_parse_prints_canonical_form(capsys):
    code, out, _ = run(capsys, "parse", fx("lp"))
    assert code == 0
    assert parse(out).model.endogenous == parse((FIXTURES / "lp.scm").read_text()).model.endogenous


def test_check_trumping_assert_fails(capsys):
    code, doc = structured(capsys, "check", fx("trumping"), "--def", "Def2", "--inline", "S=1 causes C=1", "--assert")
    assert code == 1
    assert doc["queries"][0]["is_cause"] is False
    code, _, _ = run(capsys, "check", fx("trumping"), "--def", "Def2", "--inline", "S=1 causes C=1")
    assert code == 0


def test_check_lp_network_through_sh(capsys):
    code, doc = structured(capsys, "check", fx("lp"), "--def", "Def2", "--inline", "ST=1 causes BS=1", "--assert")
    assert code == 0
    q = doc["queries"][0]
    assert q["is_cause"] and q["network"] == {"SH": "1", "BS": "1"} and q["contrast"] == {"ST": "0"}


def test_check_named_query(capsys):
    code, doc = structured(capsys, "check", fx("trumping"), "--query", "sergeant")
    assert code == 0 and doc["queries"][0]["definition"] == "Def2"


def test_malformed_file_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.scm"
    bad.write_text("var X : {0,1}\nY := X\n")
    code, _, err = run(capsys, "parse", str(bad))
    assert code == 2 and f"{bad}:2:1:" in err
    bad.write_text("var X : {0,1\n")
    code, _, err = run(capsys, "check", str(bad), "--inline", "X=1 causes X=1")
    assert code == 2 and f"{bad}:" in err


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "check", fx("lp"), "--def", "Def99", "--inline", "ST=1 causes BS=1")[0] == 2
    assert run(capsys, "check", fx("lp"), "--context", "nope", "--inline", "ST=1 causes BS=1")[0] == 2
    assert run(capsys, "fuzz", "--corrupt", "Def5")[0] == 2


def test_causes_voting_def2_literal(capsys):
    code, doc = structured(capsys, "causes", fx("voting"), "O=1", "--def", "Def2")
    assert code == 0
    assert [q["cause"] for q in doc["queries"]] == [{"A1": "1"}, {"A2": "1"}, {"A3": "0"}, {"A4": "0"}, {"A5": "0"}]


@pytest.mark.xfail(strict=True, reason="literal Def2 also finds A3=0, A4=0 and A5=0; see decisions ledger")
def test_causes_voting_def2_two_votes(capsys):
    _, doc = structured(capsys, "causes", fx("voting"), "O=1", "--def", "Def2")
    assert [q["cause"] for q in doc["queries"]] == [{"A1": "1"}, {"A2": "1"}]


def test_causes_voting_modified_parts(capsys):
    code, doc = structured(capsys, "causes", fx("voting"), "O=1", "--def", "ModifiedHP", "--parts")
    assert code == 0
    assert sorted(next(iter(q["cause"])) for q in doc["queries"]) == ["A1", "A2", "A3", "A4", "A5"]


def test_causes_constant_effect_is_empty(capsys, tmp_path):
    f = tmp_path / "const.scm"
    f.write_text("exo U : {0,1}\nvar X : {0,1}\nvar Y : {0,1}\nX := U\nY := 1\ncontext c { U=1 }\n")
    code, doc = structured(capsys, "causes", str(f), "Y=1", "--def", "Def2", "--def", "ModifiedHP")
    assert code == 0 and doc["queries"] == []


def test_suffices_examples(capsys):
    assert run(capsys, "suffices", fx("lp"), "direct", "SH=1", "BS=1", "--assert")[0] == 0
    assert run(capsys, "suffices", fx("lp"), "direct", "ST=1", "BS=1", "--assert")[0] == 1
    code, doc = structured(capsys, "suffices", fx("switch"), "strong", "F=0", "A=1")
    q = doc["queries"][0]
    assert code == 0 and q["is_cause"] and set(q["network"]) == {"T", "A"}


def test_structured_and_text_agree(capsys):
    _, doc = structured(capsys, "check", fx("lp"), "--def", "Def2", "--def", "Def4", "--inline", "BT=1 causes BS=1")
    _, text, _ = run(capsys, "check", fx("lp"), "--def", "Def2", "--def", "Def4", "--inline", "BT=1 causes BS=1")
    for q in doc["queries"]:
        assert f"{q['definition']}: BT=1 -> BS=1: {'yes' if q['is_cause'] else 'no'}" in text
    assert json.loads(json.dumps(doc)) == doc


def test_out_file(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "corpus", "lp", "--format", "structured", "--out", str(out))
    assert code == 0 and json.loads(out.read_text())["summary"]["fail"] == 0


def test_corpus_exit_0(capsys):
    code, out, _ = run(capsys, "corpus")
    assert code == 0 and " 0 fail," in out


def test_small_fuzz_passes(capsys):
    code, doc = structured(capsys, "fuzz", "--samples", "100", "--nonroots", "1,2", "--skip-sufficiency")
    assert code == 0
    assert all(r["ok"] for r in doc["reports"])


def test_fuzz_with_corrupted_definition(capsys, tmp_path):
    store = tmp_path / "cx"
    code, doc = structured(capsys, "fuzz", "--samples", "0", "--nonroots", "1,2", "--skip-sufficiency",
                           "--corrupt", "Def5=Def4", "--store", str(store))
    assert code == 1
    assert doc["corrupted"] == {"Def5": "Def4"}
    (m,) = [m for m in doc["minimized"] if m["claim"] == "equiv:Def2=Def5"]
    assert parse(m["model"]).model.endogenous
    assert list(store.glob("*.scm"))


def test_fuzz_explore_mode_reports_only(capsys):
    code, _, _ = run(capsys, "fuzz", "--samples", "0", "--nonroots", "1", "--skip-sufficiency",
                     "--corrupt", "Def5=Def4", "--mode", "explore")
    assert code == 0


def test_corpus_all_lists_unasserted_cells(capsys):
    _, brief, _ = run(capsys, "corpus", "lp")
    _, full, _ = run(capsys, "corpus", "lp", "--all")
    assert "unasserted lp/" not in brief and "unasserted lp/billy Def3" in full
