"""Lexer and recursive-descent parser for ``.scm`` model documents.

Statements are line oriented::

    exo U : {0,1}
    var Y : {0,1,2}
    Y := if U = 1 then 2 else case X = 1 -> 1; default -> 0
    context c1 { U=1 }
    query q1 { def=Def2; cause = X=1; effect = Y=1 | Y=2; context=c1 }

Newlines are insignificant inside ``()`` and ``{}``.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..causation.definitions import DefinitionId
from ..errors import CausalModelError, CyclicModel, DuplicateName, UnknownVariable, ValueOutOfRange
from ..scm import expr as ex
from ..scm.model import check_recursive
from ..span import SourceSpan
from .document import (
    ContextDecl,
    CrossVariableDisjunction,
    Declaration,
    DslSyntaxError,
    EquationDecl,
    ModelDocument,
    QueryDecl,
)

KEYWORDS = {"exo", "var", "context", "query", "if", "then", "else", "case", "default"}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<newline>\n)
  | (?P<tuple>\(\s*-?[A-Za-z0-9_]+(?:\s*,\s*-?[A-Za-z0-9_]+)+\s*\))
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<op>:=|->|!=|<=|>=|[=<>!&|+\-(){},;:])
    """,
    re.VERBOSE,
)

_OPERANDS = {"name", "int", "tuple", "string"}


@dataclass(frozen=True)
class Token:
    kind: str  # name, label, op, newline, eof
    text: str
    span: SourceSpan


def _span(text: str, start: int, end: int) -> SourceSpan:
    line = text.count("\n", 0, start) + 1
    column = start - (text.rfind("\n", 0, start) + 1) + 1
    return SourceSpan(line, column, start, end)


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    depth = 0
    pos = 0
    prev_kind = None
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise DslSyntaxError(f"unexpected character {text[pos]!r}", _span(text, pos, pos + 1))
        kind = m.lastgroup
        lexeme = m.group()
        start, end = m.start(), m.end()
        pos = end
        if kind in ("ws", "comment"):
            continue
        if kind == "newline":
            if depth == 0 and tokens and tokens[-1].kind != "newline":
                tokens.append(Token("newline", "\n", _span(text, start, end)))
            prev_kind = "newline"
            continue
        span = _span(text, start, end)
        if kind == "op":
            if lexeme == "-" and prev_kind not in _OPERANDS and prev_kind != ")":
                m2 = re.compile(r"\d+").match(text, pos)
                if m2 is not None:
                    pos = m2.end()
                    tokens.append(Token("label", "-" + m2.group(), _span(text, start, pos)))
                    prev_kind = "int"
                    continue
            if lexeme in "({":
                depth += 1
            elif lexeme in ")}":
                depth = max(0, depth - 1)
            tokens.append(Token("op", lexeme, span))
            prev_kind = ")" if lexeme == ")" else "op"
        elif kind == "name":
            tokens.append(Token("name", lexeme, span))
            prev_kind = "name"
        elif kind == "string":
            tokens.append(Token("label", _unquote(lexeme, span), span))
            prev_kind = "string"
        elif kind == "tuple":
            tokens.append(Token("label", re.sub(r"\s+", "", lexeme), span))
            prev_kind = "tuple"
        else:
            tokens.append(Token("label", lexeme, span))
            prev_kind = "int"
    end_span = _span(text, len(text), len(text))
    tokens.append(Token("eof", "", end_span))
    return tokens


def _unquote(lexeme: str, span: SourceSpan) -> str:
    out = []
    i = 1
    while i < len(lexeme) - 1:
        ch = lexeme[i]
        if ch == "\\":
            i += 1
            esc = lexeme[i]
            out.append({"n": "\n", "t": "\t"}.get(esc, esc))
        else:
            out.append(ch)
        i += 1
    return "".join(out)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    # -- token plumbing ----------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        if t.kind != "eof":
            self.pos += 1
        return t

    def at(self, text: str) -> bool:
        t = self.tok
        return t.kind in ("op", "name") and t.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise DslSyntaxError(f"expected {text!r}, found {self._describe(self.tok)}", self.tok.span)
        return self.advance()

    def _describe(self, t: Token) -> str:
        return "end of input" if t.kind == "eof" else ("newline" if t.kind == "newline" else repr(t.text))

    def name(self) -> Token:
        t = self.tok
        if t.kind != "name" or t.text in KEYWORDS:
            raise DslSyntaxError(f"expected a name, found {self._describe(t)}", t.span)
        return self.advance()

    def label(self) -> Token:
        t = self.tok
        if t.kind == "label" or (t.kind == "name" and t.text not in KEYWORDS):
            return self.advance()
        raise DslSyntaxError(f"expected a value, found {self._describe(t)}", t.span)

    def end_statement(self) -> None:
        if self.tok.kind == "newline":
            self.advance()
        elif self.tok.kind != "eof":
            raise DslSyntaxError(f"expected end of line, found {self._describe(self.tok)}", self.tok.span)

    def join(self, a: SourceSpan, b: SourceSpan) -> SourceSpan:
        return SourceSpan(a.line, a.column, a.start, b.end)

    # -- statements --------------------------------------------------------

    def document(self):
        decls, eqs, ctxs, queries = [], [], [], []
        while True:
            while self.tok.kind == "newline":
                self.advance()
            t = self.tok
            if t.kind == "eof":
                break
            if self.at("exo") or self.at("var"):
                decls.append(self.declaration())
            elif self.at("context"):
                ctxs.append(self.context())
            elif self.at("query"):
                queries.append(self.query())
            elif t.kind == "name":
                eqs.append(self.equation())
            else:
                raise DslSyntaxError(f"unexpected {self._describe(t)}", t.span)
        return decls, eqs, ctxs, queries

    def declaration(self) -> Declaration:
        kw = self.advance()
        name = self.name()
        self.expect(":")
        self.expect("{")
        values = [self.label().text]
        while self.at(","):
            self.advance()
            values.append(self.label().text)
        close = self.expect("}")
        self.end_statement()
        return Declaration(name.text, kw.text == "exo", tuple(values), self.join(kw.span, close.span))

    def equation(self) -> EquationDecl:
        target = self.name()
        self.expect(":=")
        body = self.expr()
        last = self.tokens[self.pos - 1]
        self.end_statement()
        return EquationDecl(target.text, body, self.join(target.span, last.span))

    def setting(self) -> tuple[str, str, SourceSpan, SourceSpan]:
        n = self.name()
        self.expect("=")
        v = self.label()
        return n.text, v.text, n.span, v.span

    def context(self) -> ContextDecl:
        kw = self.advance()
        name = self.name()
        self.expect("{")
        pairs = []
        if not self.at("}"):
            pairs.append(self.setting())
            while self.at(",") or self.at(";"):
                self.advance()
                if self.at("}"):
                    break
                pairs.append(self.setting())
        close = self.expect("}")
        self.end_statement()
        ctx = ContextDecl(name.text, tuple((p[0], p[1]) for p in pairs), self.join(kw.span, close.span))
        ctx.__dict__["_spans"] = {p[0]: (p[2], p[3]) for p in pairs}
        return ctx

    def query(self) -> QueryDecl:
        kw = self.advance()
        name = self.name()
        self.expect("{")
        fields: dict[str, object] = {}
        spans: dict[str, object] = {}
        while not self.at("}"):
            key = self.advance() if self.at("context") else self.name()
            if key.text in fields:
                raise DuplicateName(f"query field {key.text}")
            self.expect("=")
            if key.text == "def":
                t = self.name()
                fields["def"] = t.text
                spans["def"] = t.span
            elif key.text == "context":
                t = self.name()
                fields["context"] = t.text
                spans["context"] = t.span
            elif key.text == "cause":
                items = [self.setting()]
                while self.at("&"):
                    self.advance()
                    items.append(self.setting())
                fields["cause"] = items
            elif key.text == "effect":
                items = [self.setting()]
                while self.at("|"):
                    self.advance()
                    items.append(self.setting())
                fields["effect"] = items
            else:
                raise DslSyntaxError(f"unknown query field {key.text!r}", key.span)
            if self.at(";") or self.at(","):
                self.advance()
            elif not self.at("}"):
                raise DslSyntaxError(f"expected ';' or '}}', found {self._describe(self.tok)}", self.tok.span)
        close = self.expect("}")
        self.end_statement()
        span = self.join(kw.span, close.span)
        for required in ("def", "cause", "effect"):
            if required not in fields:
                raise DslSyntaxError(f"query {name.text!r} lacks a {required!r} field", span)
        try:
            definition = DefinitionId.parse(fields["def"]).value
        except ValueError:
            raise DslSyntaxError(f"unknown definition {fields['def']!r}", spans["def"]) from None
        effect = fields["effect"]
        variables = {e[0] for e in effect}
        if len(variables) > 1:
            raise CrossVariableDisjunction(
                "effects may only disjoin values of a single variable", self.join(effect[0][2], effect[-1][3]))
        values: list[str] = []
        for e in effect:
            if e[1] not in values:
                values.append(e[1])
        q = QueryDecl(name.text, definition, tuple((c[0], c[1]) for c in fields["cause"]),
                      effect[0][0], tuple(values), fields.get("context"), span)
        q.__dict__["_spans"] = {"cause": fields["cause"], "effect": effect, "context": spans.get("context")}
        return q

    # -- expressions -------------------------------------------------------

    def expr(self) -> ex.Expr:
        if self.at("if"):
            self.advance()
            cond = self.expr()
            self.expect("then")
            then = self.expr()
            self.expect("else")
            return ex.If(cond, then, self.expr())
        if self.at("case"):
            self.advance()
            arms = []
            while not self.at("default"):
                cond = self.disjunction()
                self.expect("->")
                arms.append((cond, self.expr()))
                self.expect(";")
            self.advance()
            self.expect("->")
            return ex.Case(tuple(arms), self.expr())
        return self.disjunction()

    def disjunction(self) -> ex.Expr:
        args = [self.conjunction()]
        while self.at("|"):
            self.advance()
            args.append(self.conjunction())
        return args[0] if len(args) == 1 else ex.Or(tuple(args))

    def conjunction(self) -> ex.Expr:
        args = [self.negation()]
        while self.at("&"):
            self.advance()
            args.append(self.negation())
        return args[0] if len(args) == 1 else ex.And(tuple(args))

    def negation(self) -> ex.Expr:
        if self.at("!"):
            self.advance()
            return ex.Not(self.negation())
        return self.comparison()

    def comparison(self) -> ex.Expr:
        left = self.sum()
        if self.tok.kind == "op" and self.tok.text in ex.COMPARISONS:
            op = self.advance().text
            return ex.Compare(op, left, self.sum())
        return left

    def sum(self) -> ex.Expr:
        left = self.atom()
        while self.tok.kind == "op" and self.tok.text in ("+", "-"):
            op = self.advance().text
            left = ex.Arith(op, left, self.atom())
        return left

    def atom(self) -> ex.Expr:
        t = self.tok
        if t.kind == "label":
            self.advance()
            return ex.Lit(t.text, t.span)
        if t.kind == "name" and t.text not in KEYWORDS:
            self.advance()
            return ex.Var(t.text, t.span)
        if self.at("("):
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        raise DslSyntaxError(f"expected an expression, found {self._describe(t)}", t.span)


def _with_span(exc: CausalModelError, span: SourceSpan | None) -> CausalModelError:
    exc.span = span
    return exc


def _check_literals(body: ex.Expr, ranges: dict[str, tuple[str, ...]]) -> None:
    """Comparisons between a variable and a literal must use a label of that variable."""

    def walk(e):
        if isinstance(e, ex.Compare) and e.op in ("=", "!="):
            for a, b in ((e.left, e.right), (e.right, e.left)):
                if isinstance(a, ex.Var) and isinstance(b, ex.Lit) and a.name in ranges:
                    if b.label not in ranges[a.name]:
                        raise _with_span(ValueOutOfRange(a.name, b.label), b.span)
        for child in _children(e):
            walk(child)

    walk(body)


def _children(e: ex.Expr):
    if isinstance(e, (ex.Compare, ex.Arith)):
        return (e.left, e.right)
    if isinstance(e, ex.Not):
        return (e.arg,)
    if isinstance(e, (ex.And, ex.Or)):
        return e.args
    if isinstance(e, ex.If):
        return (e.cond, e.then, e.orelse)
    if isinstance(e, ex.Case):
        return tuple(x for arm in e.arms for x in arm) + (e.default,)
    return ()


def _validate(decls, eqs, ctxs, queries) -> ModelDocument:
    ranges: dict[str, tuple[str, ...]] = {}
    kinds: dict[str, bool] = {}
    for d in decls:
        if d.name in ranges:
            raise _with_span(DuplicateName(d.name), d.span)
        if len(set(d.values)) != len(d.values):
            raise _with_span(DuplicateName(f"{d.name}: repeated range label"), d.span)
        if len(d.values) < 2:
            raise DslSyntaxError(f"variable {d.name!r} needs at least two values", d.span)
        ranges[d.name] = d.values
        kinds[d.name] = d.exogenous
    targets: dict[str, EquationDecl] = {}
    for e in eqs:
        if e.target not in ranges:
            raise _with_span(UnknownVariable(e.target, "equation for an undeclared variable"), e.span)
        if kinds[e.target]:
            raise DslSyntaxError(f"exogenous variable {e.target!r} cannot have an equation", e.span)
        if e.target in targets:
            raise _with_span(DuplicateName(e.target), e.span)
        targets[e.target] = e
        _check_refs(e.body, ranges)
        _check_literals(e.body, ranges)
    for d in decls:
        if not d.exogenous and d.name not in targets:
            raise DslSyntaxError(f"no equation for {d.name!r}", d.span)
    doc = ModelDocument(tuple(decls), tuple(eqs), tuple(ctxs), tuple(queries))
    try:
        model = doc.build_model()
    except ValueOutOfRange as err:
        raise _with_span(err, targets[err.name].span if err.name in targets else None) from None
    except ex.ExprError as err:
        bad = next((e for e in eqs if _fails(e, ranges)), eqs[0] if eqs else None)
        raise DslSyntaxError(str(err), bad.span if bad else None) from None
    try:
        check_recursive(model)
    except CyclicModel as err:
        raise _with_span(err, targets[err.cycle[0]].span) from None
    object.__setattr__(doc, "_model", model)
    names = set()
    for c in ctxs:
        if c.name in names:
            raise _with_span(DuplicateName(c.name), c.span)
        names.add(c.name)
        spans = c.__dict__.get("_spans", {})
        seen = set()
        for var, value in c.assignment:
            vspan, lspan = spans.get(var, (c.span, c.span))
            if var not in ranges:
                raise _with_span(UnknownVariable(var), vspan)
            if not kinds[var]:
                raise DslSyntaxError(f"context assigns endogenous variable {var!r}", vspan)
            if var in seen:
                raise _with_span(DuplicateName(var), vspan)
            seen.add(var)
            if value not in ranges[var]:
                raise _with_span(ValueOutOfRange(var, value), lspan)
        missing = [n for n in model.exogenous if n not in seen]
        if missing:
            raise DslSyntaxError(f"context {c.name!r} does not assign {missing[0]!r}", c.span)
    qnames = set()
    for q in queries:
        if q.name in qnames:
            raise _with_span(DuplicateName(q.name), q.span)
        qnames.add(q.name)
        spans = q.__dict__.get("_spans", {})
        items = list(spans.get("cause", [])) + list(spans.get("effect", []))
        cause_vars = set()
        for i, (var, value, vspan, lspan) in enumerate(items):
            if var not in ranges:
                raise _with_span(UnknownVariable(var), vspan)
            if kinds[var]:
                raise DslSyntaxError(f"query mentions exogenous variable {var!r}", vspan)
            if value not in ranges[var]:
                raise _with_span(ValueOutOfRange(var, value), lspan)
            if i < len(spans.get("cause", [])):
                if var in cause_vars:
                    raise _with_span(DuplicateName(var), vspan)
                cause_vars.add(var)
        if q.effect_variable in cause_vars:
            raise DslSyntaxError("the effect variable cannot be part of the cause", q.span)
        if q.context is not None and q.context not in names:
            raise DslSyntaxError(f"unknown context {q.context!r}", spans.get("context") or q.span)
    return doc


def _fails(e: EquationDecl, ranges) -> bool:
    import itertools

    names = ex.references(e.body)
    try:
        for combo in itertools.product(*(ranges[n] for n in names)):
            ex.evaluate(e.body, dict(zip(names, combo)))
    except ex.ExprError:
        return True
    return False


def _check_refs(body: ex.Expr, ranges) -> None:
    if isinstance(body, ex.Var):
        if body.name not in ranges:
            raise _with_span(UnknownVariable(body.name), body.span)
        return
    for child in _children(body):
        _check_refs(child, ranges)


def parse(text: str) -> ModelDocument:
    """Parse and validate a model document.

    Raises ``DslSyntaxError``, ``UnknownVariable``, ``ValueOutOfRange``,
    ``CyclicModel`` or ``DuplicateName``; every raised error carries a
    ``span`` attribute locating the problem.
    """
    parser = _Parser(text)
    try:
        parts = parser.document()
    except CausalModelError as err:
        if getattr(err, "span", None) is None:
            err.span = parser.tok.span
        raise
    return _validate(*parts)


def parse_file(path) -> ModelDocument:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def parse_setting(text: str) -> list[tuple[str, str]]:
    """Parse ``X=1 & D=0`` (``,`` also separates) into pairs."""
    p = _Parser(text)
    items = [p.setting()[:2]]
    while p.at("&") or p.at(","):
        p.advance()
        items.append(p.setting()[:2])
    if p.tok.kind not in ("eof", "newline"):
        raise DslSyntaxError(f"unexpected {p._describe(p.tok)}", p.tok.span)
    return items


def parse_effect(text: str) -> tuple[str, tuple[str, ...]]:
    """Parse ``Y=1 | Y=2`` into the effect variable and its accepted values."""
    p = _Parser(text)
    items = [p.setting()]
    while p.at("|"):
        p.advance()
        items.append(p.setting())
    if p.tok.kind not in ("eof", "newline"):
        raise DslSyntaxError(f"unexpected {p._describe(p.tok)}", p.tok.span)
    if len({i[0] for i in items}) > 1:
        raise CrossVariableDisjunction("effects may only disjoin values of a single variable", items[0][2])
    values: list[str] = []
    for i in items:
        if i[1] not in values:
            values.append(i[1])
    return items[0][0], tuple(values)


def parse_inline_query(text: str) -> tuple[list[tuple[str, str]], tuple[str, tuple[str, ...]]]:
    """Parse ``"S=1 causes C=1"`` (also ``X=1 & D=0 causes Y=1 | Y=2``)."""
    m = re.fullmatch(r"\s*(.+?)\s+causes\s+(.+?)\s*", text)
    if m is None:
        raise DslSyntaxError("inline query must read '<cause> causes <effect>'", SourceSpan(1, 1, 0, len(text)))
    return parse_setting(m.group(1)), parse_effect(m.group(2))
