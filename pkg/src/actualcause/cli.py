"""Command-line front end.

Exit codes: 0 success, 1 a failed assertion or a violated claim, 2 usage,
parse or validation errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import __version__
from .causation import Analyzer, DefinitionId, Effect, Verdict
from .corpus import run_corpus
from .dsl import ModelDocument, parse, parse_effect, parse_inline_query, parse_setting, serialize
from .errors import CausalModelError
from .sufficiency import SufficiencyKind, is_sufficient, strongly_sufficient

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- output ------------------------------------------------------------------------


def model_hash(doc: ModelDocument) -> str:
    return hashlib.sha256(serialize(doc).encode()).hexdigest()


def query_record(v: Verdict, citations=()) -> dict:
    d = v.to_dict()
    return {
        "definition": d["definition"], "cause": d["cause"], "effect": d["effect"], "is_cause": d["is_cause"],
        "witness": d["witness"], "network": d["network"], "contrast": d["contrast"],
        "citations": list(citations), "reason": d["reason"], "part_of": d["part_of"],
    }


def report(doc: ModelDocument | None, queries: list[dict], **extra) -> dict:
    out = {"tool_version": __version__, "model_hash": model_hash(doc) if doc is not None else None,
           "queries": queries}
    out.update(extra)
    return out


def _fmt(setting: dict | None) -> str:
    if not setting:
        return "{}"
    return "{" + ", ".join(f"{k}={v}" for k, v in setting.items()) + "}"


def render_query(q: dict) -> str:
    cause = " & ".join(f"{k}={v}" for k, v in q["cause"].items())
    head = f"{q['definition']}: {cause} -> {q['effect']}: {'yes' if q['is_cause'] else 'no'}"
    if q.get("reason"):
        head += f" ({q['reason']})"
    lines = [head]
    if q.get("part_of"):
        lines.append(f"  part of {_fmt(q['part_of'])}")
    if q["is_cause"] or q["witness"]:
        lines.append(f"  witness W = {_fmt(q['witness'])}")
    if q["network"] is not None:
        lines.append(f"  network N = {_fmt(q['network'])}")
    if q["contrast"] is not None:
        lines.append(f"  contrast x' = {_fmt(q['contrast'])}")
    for c in q["citations"]:
        lines.append(f"  source: {c}")
    return "\n".join(lines)


def emit(args, doc_report: dict, text: str) -> None:
    if args.format == "structured":
        payload = json.dumps(doc_report, indent=2, sort_keys=False)
    else:
        payload = text
    if args.out:
        Path(args.out).write_text(payload + "\n")
    else:
        print(payload)


# -- helpers -----------------------------------------------------------------------


def load(path: str) -> ModelDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    return parse(text)


def _definitions(args, default=None) -> list[DefinitionId]:
    if args.definitions:
        try:
            return [DefinitionId.parse(d) for d in args.definitions]
        except ValueError as e:
            raise UsageError(str(e)) from None
    return [default] if default is not None else []


def _context(doc: ModelDocument, name: str | None) -> dict:
    try:
        return doc.context(name)
    except KeyError as e:
        raise UsageError(e.args[0]) from None


def _effect(text: str) -> Effect:
    var, values = parse_effect(text)
    return Effect(var, values)


# -- commands ----------------------------------------------------------------------


def cmd_parse(args) -> int:
    doc = load(args.model)
    text = serialize(doc)
    emit(args, {"tool_version": __version__, "model_hash": model_hash(doc), "queries": [], "canonical": text},
         text.rstrip("\n"))
    return EXIT_OK


def cmd_check(args) -> int:
    doc = load(args.model)
    analyzer = Analyzer(doc.model)
    jobs = []  # (cause, effect, definitions, context name, citation)
    if args.inline:
        cause, (var, values) = parse_inline_query(args.inline)
        defs = _definitions(args)
        if not defs:
            raise UsageError("an inline query needs --def")
        jobs.append((dict(cause), Effect(var, values), defs, args.context, None))
    else:
        queries = [doc.query(args.query)] if args.query else list(doc.queries)
        if args.query is None and not queries:
            raise UsageError("the model declares no query; pass --query or --inline")
        for q in queries:
            defs = _definitions(args, DefinitionId.parse(q.definition))
            jobs.append((dict(q.cause), Effect(q.effect_variable, q.effect_values), defs,
                         args.context or q.context, f"query {q.name}"))
    records = []
    for cause, effect, defs, ctx_name, citation in jobs:
        session = analyzer.session(_context(doc, ctx_name))
        for d in defs:
            if args.part_of:
                if len(cause) != 1:
                    raise UsageError("--part-of takes a single conjunct")
                v = session.is_part_of_cause(cause, effect, d, args.max_size)
            else:
                v = session.is_cause(cause, effect, d)
            records.append(query_record(v, [citation] if citation else []))
    emit(args, report(doc, records), "\n".join(render_query(r) for r in records))
    if args.assert_ and not all(r["is_cause"] for r in records):
        return EXIT_FAIL
    return EXIT_OK


def cmd_causes(args) -> int:
    doc = load(args.model)
    session = Analyzer(doc.model).session(_context(doc, args.context))
    effect = _effect(args.effect)
    defs = _definitions(args, DefinitionId.DEF2)
    records = []
    lines = []
    for d in defs:
        if args.parts:
            world = session.actual_world()
            found = []
            for x in doc.model.endogenous:
                if x == effect.variable:
                    continue
                v = session.is_part_of_cause({x: world[x]}, effect, d, args.max_size)
                if v.is_cause:
                    found.append(v)
        else:
            top = args.max_size if args.max_size is not None else len(doc.model.endogenous) - 1
            found = session.find_all_causes(effect, d, max(top, 1))
        records += [query_record(v) for v in found]
        label = "parts of causes" if args.parts else "causes"
        lines.append(f"{d.value} {label} of {effect}: "
                     + (", ".join(" & ".join(f"{k}={v}" for k, v in f.cause.items()) for f in found) or "none"))
        lines += ["  " + render_query(query_record(f)).replace("\n", "\n  ") for f in found]
    emit(args, report(doc, records), "\n".join(lines))
    if args.assert_ and not records:
        return EXIT_FAIL
    return EXIT_OK


def cmd_suffices(args) -> int:
    doc = load(args.model)
    model = Analyzer(doc.model).model
    try:
        kind = SufficiencyKind(args.kind)
    except ValueError:
        raise UsageError(f"unknown sufficiency kind {args.kind!r}; "
                         f"choose from {', '.join(k.value for k in SufficiencyKind)}") from None
    x = dict(parse_setting(args.cause))
    y = dict(parse_setting(args.target))
    ctx = _context(doc, args.context) if kind.actual else None
    network = None
    if kind.base == "strong":
        w = strongly_sufficient(model, x, y, ctx)
        ok = w is not None
        network = w.as_dict() if w else None
    else:
        ok = is_sufficient(model, x, y, kind, ctx)
    rec = {"definition": f"sufficiency:{kind.value}", "cause": x, "effect": _fmt(y), "is_cause": ok,
           "witness": {}, "network": network, "contrast": None, "citations": [], "reason": ""}
    text = f"{_fmt(x)} is {'' if ok else 'not '}sufficient ({kind.value}) for {_fmt(y)}"
    if network is not None:
        text += f"\n  network N = {_fmt(network)}"
    emit(args, report(doc, [rec]), text)
    if args.assert_ and not ok:
        return EXIT_FAIL
    return EXIT_OK


def cmd_corpus(args) -> int:
    rep = run_corpus(args.filter)
    records = []
    for r in rep.results:
        if r.status == "unasserted" and not args.all:
            continue
        records.append({
            "case": r.case, "query": r.query, "definition": r.definition, "status": r.status,
            "expected": r.expected, "is_cause": r.actual,
            "cause": (r.evidence or {}).get("cause"), "effect": (r.evidence or {}).get("effect"),
            "witness": (r.evidence or {}).get("witness"), "network": (r.evidence or {}).get("network"),
            "contrast": (r.evidence or {}).get("contrast"), "citations": [r.citation] if r.citation else [],
            "note": r.note,
        })
    counts = {s: rep.count(s) for s in ("pass", "fail", "disputed", "unasserted")}
    lines = [f"corpus: {counts['pass']} pass, {counts['fail']} fail, {counts['disputed']} disputed, "
             f"{counts['unasserted']} unasserted"]
    for r in rep.results:
        if r.status in ("fail", "disputed"):
            lines.append(f"  {r.status.upper()} {r.case}/{r.query} {r.definition}: expected {r.expected}, "
                         f"got {r.actual}  [{r.citation}]")
            if r.note:
                lines.append(f"    note: {r.note}")
        elif r.status == "unasserted" and args.all:
            lines.append(f"  unasserted {r.case}/{r.query} {r.definition}: {r.actual}")
    emit(args, report(None, records, summary=counts), "\n".join(lines))
    return EXIT_OK if rep.ok else EXIT_FAIL


def _parse_corrupt(specs) -> dict:
    out = {}
    for s in specs or ():
        try:
            a, b = s.split("=")
            out[DefinitionId.parse(a)] = DefinitionId.parse(b)
        except ValueError:
            raise UsageError(f"--corrupt expects DEF=OTHER, got {s!r}") from None
    return out


def cmd_fuzz(args) -> int:
    from .verify import (
        SAMPLE,
        SUFFICIENCY_FAMILY,
        ModelFamily,
        check_equivalences,
        check_implications,
        check_structural_props,
        minimize_counterexample,
        run_family,
    )

    substitute = _parse_corrupt(args.corrupt)
    try:
        nonroots = tuple(int(n) for n in args.nonroots.split(",") if n)
    except ValueError:
        raise UsageError(f"--nonroots expects a comma separated list, got {args.nonroots!r}") from None
    families = []
    if nonroots:
        families.append(ModelFamily(nonroots=nonroots))
    if args.samples:
        families.append(ModelFamily(mode=SAMPLE, samples=args.samples, seed=args.seed))
    start = time.time()
    runs = [run_family(f, substitute=substitute, use_cache=False) for f in families]
    reports = [check_equivalences(runs), check_implications(runs),
               check_structural_props(runs, sufficiency=None if args.skip_sufficiency else SUFFICIENCY_FAMILY)]
    minimized = []
    for rep in reports:
        seen = set()
        for v in rep.violations:
            if v.claim in seen:
                continue
            seen.add(v.claim)
            minimized.append(minimize_counterexample(v))
    if args.store and minimized:
        store = Path(args.store)
        store.mkdir(parents=True, exist_ok=True)
        for i, v in enumerate(minimized):
            name = "".join(ch if ch.isalnum() else "_" for ch in v.claim).strip("_")
            (store / f"{i:02d}_{name}.scm").write_text(v.document())
    elapsed = time.time() - start
    ok = all(r.ok for r in reports)
    lines = [f"seed: {args.seed}", f"mode: {args.mode}"]
    if substitute:
        lines.append("corrupted: " + ", ".join(f"{a.value} evaluated as {b.value}" for a, b in substitute.items()))
    lines += [r.summary() for r in reports]
    for v in minimized:
        lines.append(f"minimized counterexample for {v.claim} (effect {v.effect}, cause {', '.join(v.cause)}): "
                     f"{v.verdicts} {v.detail}".rstrip())
        lines.append("  " + v.document().rstrip("\n").replace("\n", "\n  "))
    lines.append(f"elapsed: {elapsed:.1f}s")
    if not ok:
        lines.append("violations found" + (" (warning only in explore mode)" if args.mode == "explore" else ""))
    emit(args, report(None, [], seed=args.seed, mode=args.mode, ok=ok,
                      corrupted={a.value: b.value for a, b in substitute.items()},
                      reports=[r.to_dict() for r in reports],
                      minimized=[v.to_dict() for v in minimized], elapsed=round(elapsed, 3)),
         "\n".join(lines))
    if not ok and args.mode == "ci":
        return EXIT_FAIL
    return EXIT_OK


# -- argument parsing ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--out", help="write the report to this file instead of stdout")

    query = argparse.ArgumentParser(add_help=False)
    query.add_argument("--def", dest="definitions", action="append", metavar="ID",
                       help="definition to evaluate (repeatable)")
    query.add_argument("--context", help="named context of the model (default: the first)")
    query.add_argument("--assert", dest="assert_", action="store_true",
                       help="exit 1 unless every verdict is positive")

    p = argparse.ArgumentParser(prog="actualcause", description="Actual causation on finite structural models.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("parse", parents=[common], help="validate a model and print its canonical form")
    s.add_argument("model")
    s.set_defaults(func=cmd_parse)

    s = sub.add_parser("check", parents=[common, query], help="decide causal queries")
    s.add_argument("model")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--query", help="name of a query declared in the model")
    g.add_argument("--inline", help="query text such as 'S=1 causes C=1'")
    s.add_argument("--part-of", action="store_true", help="ask whether the conjunct is part of a cause")
    s.add_argument("--max-size", type=int, default=None, help="bound on cause size for --part-of")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("causes", parents=[common, query], help="list all causes of an effect")
    s.add_argument("model")
    s.add_argument("effect", help="effect such as 'O=1' or 'F=1 | F=2'")
    s.add_argument("--max-size", type=int, default=None, help="bound on cause size (default: none)")
    s.add_argument("--parts", action="store_true", help="list conjuncts that are part of some cause")
    s.set_defaults(func=cmd_causes)

    s = sub.add_parser("suffices", parents=[common], help="decide causal sufficiency")
    s.add_argument("model")
    s.add_argument("kind", help="direct, strong, weak, actual-direct, actual-strong or actual-weak")
    s.add_argument("cause", help="setting such as 'SH=1'")
    s.add_argument("target", help="setting such as 'BS=1'")
    s.add_argument("--context", help="named context for the actual kinds")
    s.add_argument("--assert", dest="assert_", action="store_true")
    s.set_defaults(func=cmd_suffices)

    s = sub.add_parser("corpus", parents=[common], help="run the golden corpus")
    s.add_argument("filter", nargs="?", default=None, help="glob over case names")
    s.add_argument("--all", action="store_true", help="include unasserted cells in the report")
    s.set_defaults(func=cmd_corpus)

    s = sub.add_parser("fuzz", parents=[common], help="check the claims on bounded model families")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--samples", type=int, default=10_000, help="sampled models (0 to skip)")
    s.add_argument("--nonroots", default="1,2,3", help="non-root counts of the exhaustive family ('' to skip)")
    s.add_argument("--mode", choices=("ci", "explore"), default="ci",
                   help="ci: violations fail the run; explore: they are reported only")
    s.add_argument("--corrupt", action="append", metavar="DEF=OTHER",
                   help="evaluate OTHER in place of DEF (exercises the checks)")
    s.add_argument("--skip-sufficiency", action="store_true",
                   help="skip the slow-path sufficiency propositions")
    s.add_argument("--store", help="directory for minimized counterexamples as .scm files")
    s.set_defaults(func=cmd_fuzz)
    return p


def diagnostic(err: CausalModelError, path: str | None) -> str:
    """``path:line:col: message``; syntax errors already carry their location in the message."""
    span = getattr(err, "span", None)
    msg = str(err)
    where = path or ""
    if span is not None and not msg.startswith(f"{span}:"):
        where += f":{span}" if where else str(span)
    elif span is not None:
        where += ":" if where else ""
        return f"{where}{msg}"
    return f"{where}: {msg}" if where else msg


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CausalModelError as e:
        print(f"error: {diagnostic(e, getattr(args, 'model', None))}", file=sys.stderr)
        return EXIT_USAGE
    except KeyError as e:
        print(f"error: {e.args[0] if e.args else e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
