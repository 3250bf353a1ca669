"""Golden corpus: worked examples as ``.scm`` fixtures with expected verdicts.

``manifest.json`` lists, per case, a fixture, a context and the queries
whose verdicts are asserted for some definitions.  Cells the manifest does
not assert are still evaluated and reported as ``unasserted``.  A cell
listed under ``disputed`` records an expectation that the definitions, as
implemented, do not reproduce; it is reported separately and does not make
the run fail.
"""

from __future__ import annotations

import fnmatch
import json
from dataclasses import dataclass, field
from importlib import resources

from ..causation import Analyzer, DefinitionId, Effect
from ..dsl import ModelDocument, parse

PASS, FAIL, UNASSERTED, DISPUTED = "pass", "fail", "unasserted", "disputed"


@dataclass(frozen=True)
class CorpusQuery:
    id: str
    cause: dict[str, str]
    effect: Effect
    verdicts: dict[DefinitionId, bool]
    citation: str
    context: str | None = None
    disputed: dict[DefinitionId, str] = field(default_factory=dict)


@dataclass(frozen=True)
class CauseList:
    id: str
    definition: DefinitionId
    effect: Effect
    max_size: int
    expected: tuple[dict[str, str], ...]
    citation: str
    disputed: str | None = None


@dataclass(frozen=True)
class GoldenCase:
    name: str
    fixture: str
    document: ModelDocument
    context: str
    queries: tuple[CorpusQuery, ...]
    cause_lists: tuple[CauseList, ...] = ()

    def context_for(self, query: CorpusQuery) -> dict[str, str]:
        return self.document.context(query.context or self.context)


@dataclass
class CellResult:
    case: str
    query: str
    definition: str
    expected: bool | list | None
    actual: bool | list
    status: str
    citation: str = ""
    evidence: dict | None = None
    note: str | None = None

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class CorpusReport:
    results: list[CellResult] = field(default_factory=list)

    def count(self, status: str) -> int:
        return sum(r.status == status for r in self.results)

    @property
    def failures(self) -> list[CellResult]:
        return [r for r in self.results if r.status == FAIL]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "passed": self.count(PASS), "failed": self.count(FAIL),
            "disputed": self.count(DISPUTED), "unasserted": self.count(UNASSERTED),
            "results": [r.to_dict() for r in self.results],
        }


def _files():
    return resources.files(__name__)


def load_manifest() -> dict:
    return json.loads((_files() / "manifest.json").read_text())


def fixture_text(name: str) -> str:
    return (_files() / "fixtures" / name).read_text()


def fixture_names() -> list[str]:
    return sorted(p.name for p in (_files() / "fixtures").iterdir() if p.name.endswith(".scm"))


def _effect(spec: dict) -> Effect:
    return Effect(spec["variable"], tuple(spec["accepted"]))


def load_cases(pattern: str | None = None) -> list[GoldenCase]:
    """Cases whose name matches the glob ``pattern`` (all when None)."""
    manifest = load_manifest()
    docs: dict[str, ModelDocument] = {}
    cases = []
    for c in manifest["cases"]:
        if pattern is not None and not fnmatch.fnmatch(c["name"], pattern):
            continue
        if c["fixture"] not in docs:
            docs[c["fixture"]] = parse(fixture_text(c["fixture"]))
        queries = tuple(
            CorpusQuery(q["id"], q["cause"], _effect(q["effect"]),
                        {DefinitionId.parse(k): v for k, v in q["verdicts"].items()},
                        q["citation"], q.get("context"),
                        {DefinitionId.parse(k): v for k, v in q.get("disputed", {}).items()})
            for q in c["queries"])
        lists = tuple(
            CauseList(l["id"], DefinitionId.parse(l["definition"]), _effect(l["effect"]), l["max_size"],
                      tuple(l["expected"]), l["citation"], l.get("disputed"))
            for l in c.get("cause_lists", ()))
        cases.append(GoldenCase(c["name"], c["fixture"], docs[c["fixture"]], c["context"], queries, lists))
    return cases


def part_of_definitions() -> frozenset[DefinitionId]:
    return frozenset(DefinitionId.parse(d) for d in load_manifest()["part_of_definitions"])


def run_corpus(pattern: str | None = None) -> CorpusReport:
    """Evaluate every cell of the matching cases under all fifteen definitions."""
    part_of = part_of_definitions()
    report = CorpusReport()
    for case in load_cases(pattern):
        analyzer = Analyzer(case.document.model)
        for q in case.queries:
            session = analyzer.session(case.context_for(q))
            for d in DefinitionId:
                if d in part_of:
                    v = session.is_part_of_cause(q.cause, q.effect, d)
                else:
                    v = session.is_cause(q.cause, q.effect, d)
                expected = q.verdicts.get(d)
                if expected is None:
                    status = UNASSERTED
                elif v.is_cause == expected:
                    status = PASS
                else:
                    status = DISPUTED if d in q.disputed else FAIL
                report.results.append(CellResult(
                    case.name, q.id, d.value, expected, v.is_cause, status, q.citation,
                    v.to_dict(), q.disputed.get(d)))
        for cl in case.cause_lists:
            session = analyzer.session(case.document.context(case.context))
            found = [v.cause for v in session.find_all_causes(cl.effect, cl.definition, cl.max_size)]
            expected = [dict(e) for e in cl.expected]
            if found == expected:
                status = PASS
            else:
                status = DISPUTED if cl.disputed else FAIL
            report.results.append(CellResult(
                case.name, cl.id, cl.definition.value, expected, found, status, cl.citation, None, cl.disputed))
    return report


__all__ = [
    "CauseList", "CellResult", "CorpusQuery", "CorpusReport", "DISPUTED", "FAIL", "GoldenCase", "PASS",
    "UNASSERTED", "fixture_names", "fixture_text", "load_cases", "load_manifest", "part_of_definitions",
    "run_corpus",
]
