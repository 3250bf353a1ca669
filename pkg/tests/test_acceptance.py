"""Exit criteria, one test each; every test prints a PASS/FAIL line.

The family-wide criteria share one analysis of the default families: the
exhaustive family (two binary roots, one to three binary non-roots, at most
two parents each) and 10000 sampled models with 4-5 variables, seed 0.
"""

from __future__ import annotations

import itertools
import time

import pytest

from actualcause.causation import Analyzer, DefinitionId, verify_evidence
from actualcause.corpus import DISPUTED, FAIL, PASS, load_cases, part_of_definitions, run_corpus
from actualcause.verify import (
    DEFAULT_FAMILIES,
    SAMPLE,
    SUFFICIENCY_FAMILY,
    ModelFamily,
    check_equivalences,
    check_evidence,
    check_implications,
    check_structural_props,
    enumerate_instances,
    run_family,
)

pytestmark = pytest.mark.slow

CORPUS_SECONDS = 60.0
FAMILY_SECONDS = 600.0
EVIDENCE_SAMPLE = ModelFamily(mode=SAMPLE, samples=1000, seed=0)


def report(log, ok: bool, name: str, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}"
    log.append(line)
    print(line)


@pytest.fixture(scope="module")
def family_runs():
    start = time.perf_counter()
    runs = [run_family(f) for f in DEFAULT_FAMILIES]
    return runs, time.perf_counter() - start


def test_golden_corpus(acceptance_log):
    start = time.perf_counter()
    result = run_corpus()
    elapsed = time.perf_counter() - start
    asserted = [r for r in result.results if r.expected is not None]
    wrong = [r for r in asserted if r.status in (FAIL, DISPUTED)]
    ok = not wrong and elapsed < CORPUS_SECONDS
    detail = f"{len(asserted) - len(wrong)}/{len(asserted)} asserted cells reproduce, {elapsed:.2f}s (< {CORPUS_SECONDS:.0f}s)"
    if wrong:
        detail += "; mismatched: " + ", ".join(f"{r.case}/{r.query} {r.definition}" for r in wrong)
    report(acceptance_log, ok, "golden corpus", detail)
    assert elapsed < CORPUS_SECONDS
    assert not wrong, [(r.case, r.query, r.definition, r.expected, r.actual) for r in wrong]


def test_theorem_equivalences(family_runs, acceptance_log):
    runs, build = family_runs
    start = time.perf_counter()
    result = check_equivalences(runs)
    elapsed = build + time.perf_counter() - start
    queries = sum(r.queries for r in runs)
    ok = result.ok and elapsed < FAMILY_SECONDS
    report(acceptance_log, ok, "theorem equivalences",
           f"{len(result.violations)} disagreements over {queries} queries on {result.instances} "
           f"model/context pairs, {elapsed:.0f}s (< {FAMILY_SECONDS:.0f}s)")
    print(result.summary())
    assert result.counts and all(n > 0 for n in result.counts.values())
    assert not result.violations, result.summary()
    assert elapsed < FAMILY_SECONDS


def test_implication_lattice(family_runs, acceptance_log):
    runs, _ = family_runs
    result = check_implications(runs)
    hits = sum(result.expected.values())
    report(acceptance_log, result.ok, "implication lattice",
           f"{len(result.violations)} violations of {len(result.counts)} implications, "
           f"{hits}/{len(result.expected)} stored counterexamples reproduce")
    print(result.summary())
    assert len(result.counts) == 6
    assert len(result.expected) == 8
    assert result.ok, result.summary()


def test_structural_properties(family_runs, acceptance_log):
    runs, _ = family_runs
    result = check_structural_props(runs, sufficiency=SUFFICIENCY_FAMILY)
    report(acceptance_log, result.ok, "structural properties",
           f"{len(result.violations)} violations over {len(result.counts)} properties, "
           f"dependence exceptions {sum(result.expected.values())}/{len(result.expected)} reproduce")
    print(result.summary())
    assert all(n > 0 for n in result.counts.values()), result.counts
    assert result.ok, result.summary()


def _corpus_evidence() -> tuple[int, list]:
    checked, bad = 0, []
    part_of = part_of_definitions()
    for case in load_cases():
        analyzer = Analyzer(case.document.model)
        for q in case.queries:
            ctx = case.context_for(q)
            s = analyzer.session(ctx)
            for d in DefinitionId:
                v = s.is_part_of_cause(q.cause, q.effect, d) if d in part_of else s.is_cause(q.cause, q.effect, d)
                if not v.is_cause:
                    continue
                checked += 1
                chk = verify_evidence(analyzer.model, ctx, v)
                if not chk.ok:
                    bad.append((case.name, q.id, d.value, chk.failures))
    return checked, bad


def test_evidence_soundness(acceptance_log):
    checked, bad = _corpus_evidence()
    families = [ModelFamily(), EVIDENCE_SAMPLE]
    result = check_evidence(itertools.chain.from_iterable(enumerate_instances(f) for f in families))
    total = checked + result.counts["evidence"]
    failed = len(bad) + len(result.violations)
    report(acceptance_log, failed == 0, "evidence soundness",
           f"{total - failed}/{total} positive verdicts re-verify (corpus {checked}, families {result.counts['evidence']})")
    assert checked > 0 and result.counts["evidence"] > 0
    assert not bad, bad
    assert result.ok, result.summary()
