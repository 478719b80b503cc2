"""A small expression language for parallel-sum compositions.

    expr  := term { "(+)" term }
    term  := atom [ "^" INT ]              (powers only on the bare atom P4)
    atom  := NAME [ "[" root "," root "]" ]
           | "g6" STRING "[" INT "," INT "]"
           | "(" expr ")" [ "[" INT "," INT "]" ]
    root  := "a" | "b" | "c" | "z" | INT

NAME is K3, F3, F4, F6, F7, F8, F9, P<t> or C<t>. Sums associate to the
left and keep the left operand's roots. A bracket after a parenthesised
group re-roots the group's result at explicit vertex ids, which is how an
attachment at a different pair is written, e.g.

    (K3[0,1] (+) F7[a,b])[1,2] (+) F7[a,b]

``X (+) P4^k`` is X followed by k sums with P4; P4^0 is the edgeless
two-vertex graph, the identity of the sum.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from .constructor import GapTrace
from .gadgets import RootedGraph, gadget, parallel_sum
from .graph import Graph6Error, empty_graph, from_graph6


@dataclass(frozen=True)
class Span:
    offset: int
    end: int
    line: int
    column: int


class DSLError(ValueError):
    def __init__(self, message: str, span: Span):
        super().__init__(f"{span.line}:{span.column}: {message} (offset {span.offset})")
        self.message = message
        self.span = span

    @property
    def offset(self) -> int:
        return self.span.offset


# ---------------------------------------------------------------- AST

Root = Union[str, int]


@dataclass(frozen=True)
class Atom:
    name: str
    roots: tuple[Root, Root] | None = None
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Graph6Literal:
    text: str
    roots: tuple[int, int]
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Reroot:
    expr: "Expr"
    roots: tuple[int, int]
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Sum:
    left: "Expr"
    right: "Expr"
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Pow:
    base: Atom
    k: int
    span: Span | None = field(default=None, compare=False, repr=False)


Expr = Union[Atom, Graph6Literal, Reroot, Sum, Pow]


# ---------------------------------------------------------------- lexer


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: Span


_NAME = re.compile(r"[A-Za-z][A-Za-z0-9]*")
_INT = re.compile(r"[0-9]+")
_PUNCT = {"(": "LPAREN", ")": "RPAREN", "[": "LBRACK", "]": "RBRACK", ",": "COMMA", "^": "CARET"}


def _span(text: str, start: int, end: int) -> Span:
    line = text.count("\n", 0, start) + 1
    col = start - (text.rfind("\n", 0, start) + 1) + 1
    return Span(start, end, line, col)


def tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if not ch.isascii():
            raise DSLError(f"non-ASCII character {ch!r}", _span(text, i, i + 1))
        if ch in " \t\r\n":
            i += 1
            continue
        if text.startswith("(+)", i):
            toks.append(Token("SUM", "(+)", _span(text, i, i + 3)))
            i += 3
            continue
        if ch in _PUNCT:
            toks.append(Token(_PUNCT[ch], ch, _span(text, i, i + 1)))
            i += 1
            continue
        if ch == '"':
            j = text.find('"', i + 1)
            if j < 0:
                raise DSLError("unterminated string", _span(text, i, n))
            body = text[i + 1:j]
            for off, c in enumerate(body):
                if not c.isascii():
                    raise DSLError(f"non-ASCII character {c!r}", _span(text, i + 1 + off, i + 2 + off))
            toks.append(Token("STRING", body, _span(text, i, j + 1)))
            i = j + 1
            continue
        m = _INT.match(text, i)
        if m:
            toks.append(Token("INT", m.group(), _span(text, i, m.end())))
            i = m.end()
            continue
        m = _NAME.match(text, i)
        if m:
            toks.append(Token("NAME", m.group(), _span(text, i, m.end())))
            i = m.end()
            continue
        raise DSLError(f"unexpected character {ch!r}", _span(text, i, i + 1))
    toks.append(Token("EOF", "", _span(text, n, n)))
    return toks


# ---------------------------------------------------------------- parser

_ATOM_NAME = re.compile(r"^(K3|F3|F4|F6|F7|F8|F9|P[0-9]+|C[0-9]+)$")
ROOT_LABELS = ("a", "b", "c", "z")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def take(self, kind: str, what: str | None = None) -> Token:
        t = self.tok
        if t.kind != kind:
            found = "end of input" if t.kind == "EOF" else repr(t.text)
            raise DSLError(f"expected {what or kind.lower()}, found {found}", t.span)
        self.i += 1
        return t

    def join(self, a: Span, b: Span) -> Span:
        return Span(a.offset, b.end, a.line, a.column)

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "EOF":
            raise DSLError(f"unexpected {self.tok.text!r} after expression", self.tok.span)
        return e

    def expr(self) -> Expr:
        left = self.term()
        while self.tok.kind == "SUM":
            self.i += 1
            right = self.term()
            left = Sum(left, right, self.join(left.span, right.span))  # type: ignore[arg-type]
        return left

    def term(self) -> Expr:
        base = self.atom()
        if self.tok.kind != "CARET":
            return base
        caret = self.take("CARET")
        if not (isinstance(base, Atom) and base.name == "P4" and base.roots is None):
            raise DSLError("powers are only allowed on the bare atom P4", caret.span)
        k = self.take("INT", "an integer exponent")
        return Pow(base, int(k.text), self.join(base.span, k.span))  # type: ignore[arg-type]

    def int_pair(self) -> tuple[tuple[int, int], Token]:
        self.take("LBRACK", "'['")
        a = self.take("INT", "a vertex id")
        self.take("COMMA", "','")
        b = self.take("INT", "a vertex id")
        end = self.take("RBRACK", "']'")
        return (int(a.text), int(b.text)), end

    def root(self) -> Root:
        t = self.tok
        if t.kind == "INT":
            self.i += 1
            return int(t.text)
        if t.kind == "NAME" and t.text in ROOT_LABELS:
            self.i += 1
            return t.text
        raise DSLError(f"expected a root label (a, b, c, z) or vertex id, found {t.text or 'end of input'!r}", t.span)

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "LPAREN":
            self.i += 1
            inner = self.expr()
            self.take("RPAREN", "')'")
            if self.tok.kind == "LBRACK":
                roots, end = self.int_pair()
                return Reroot(inner, roots, self.join(t.span, end.span))
            return inner
        if t.kind == "NAME" and t.text == "g6":
            self.i += 1
            s = self.take("STRING", "a quoted graph6 string")
            roots, end = self.int_pair()
            return Graph6Literal(s.text, roots, self.join(t.span, end.span))
        if t.kind == "NAME":
            if not _ATOM_NAME.match(t.text):
                raise DSLError(f"unknown atom {t.text}", t.span)
            self.i += 1
            if self.tok.kind != "LBRACK":
                return Atom(t.text, None, t.span)
            self.take("LBRACK")
            r1 = self.root()
            self.take("COMMA", "','")
            r2 = self.root()
            end = self.take("RBRACK", "']'")
            return Atom(t.text, (r1, r2), self.join(t.span, end.span))
        found = "end of input" if t.kind == "EOF" else repr(t.text)
        raise DSLError(f"expected an atom, found {found}", t.span)


def parse(text: str) -> Expr:
    return _Parser(text).parse()


# ---------------------------------------------------------------- printer


def pretty(e: Expr) -> str:
    if isinstance(e, Atom):
        if e.roots is None:
            return e.name
        return f"{e.name}[{e.roots[0]},{e.roots[1]}]"
    if isinstance(e, Graph6Literal):
        return f'g6 "{e.text}"[{e.roots[0]},{e.roots[1]}]'
    if isinstance(e, Reroot):
        return f"({pretty(e.expr)})[{e.roots[0]},{e.roots[1]}]"
    if isinstance(e, Pow):
        return f"{pretty(e.base)}^{e.k}"
    right = pretty(e.right)
    if isinstance(e.right, Sum):
        right = f"({right})"
    return f"{pretty(e.left)} (+) {right}"


# ---------------------------------------------------------------- evaluator


def _identity() -> RootedGraph:
    return RootedGraph(empty_graph(2), 0, 1)


def _eval_atom(e: Atom) -> RootedGraph:
    try:
        rg = gadget(e.name)
    except (KeyError, ValueError) as exc:
        raise DSLError(str(exc).strip("'"), e.span or Span(0, 0, 1, 1)) from None
    if e.roots is None:
        return rg
    ids = []
    for r in e.roots:
        try:
            ids.append(rg.vertex(r))
        except KeyError:
            raise DSLError(f"root label {r} is not defined for {e.name}", e.span or Span(0, 0, 1, 1)) from None
        except ValueError as exc:
            raise DSLError(str(exc), e.span or Span(0, 0, 1, 1)) from None
    return rg.reroot(ids[0], ids[1])


def _spine(e: Expr) -> list[Expr]:
    """Flatten a left-nested sum into its operands; powers on the right unroll."""
    out: list[Expr] = []
    while isinstance(e, Sum):
        r = e.right
        if isinstance(r, Pow):
            out.extend([r.base] * r.k)
        else:
            out.append(r)
        e = e.left
    out.reverse()
    return [e] + out


def _value(e: Expr) -> RootedGraph:
    if isinstance(e, Atom):
        return _eval_atom(e)
    if isinstance(e, Graph6Literal):
        span = e.span or Span(0, 0, 1, 1)
        try:
            g = from_graph6(e.text)
        except Graph6Error as exc:
            raise DSLError(f"bad graph6 literal: {exc}", span) from None
        for r in e.roots:
            if not 0 <= r < g.n:
                raise DSLError(f"root {r} out of range for a {g.n}-vertex graph", span)
        return RootedGraph(g, *e.roots)
    if isinstance(e, Reroot):
        inner = _value(e.expr)
        for r in e.roots:
            if not 0 <= r < inner.graph.n:
                raise DSLError(f"root {r} out of range for a {inner.graph.n}-vertex graph",
                               e.span or Span(0, 0, 1, 1))
        return inner.reroot(*e.roots)
    if isinstance(e, Pow):
        rg = _identity()
        for _ in range(e.k):
            rg = parallel_sum(rg, _eval_atom(e.base))
        return rg
    rg, _ = evaluate(e)
    return rg


def evaluate(e: Expr) -> tuple[RootedGraph, GapTrace]:
    """Evaluate left to right; the trace has the first operand and one entry per sum."""
    parts = _spine(e)
    cur = _value(parts[0])
    trace = GapTrace.start(cur.graph, "start", pretty(parts[0]))
    for part in parts[1:]:
        at = cur.roots
        cur = parallel_sum(cur, _value(part))
        trace.record("sum", pretty(part), at, cur.graph)
    return cur, trace


def evaluate_text(text: str) -> tuple[RootedGraph, GapTrace]:
    return evaluate(parse(text))
