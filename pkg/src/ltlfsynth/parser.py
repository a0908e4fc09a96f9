"""Surface syntax for LTLf formulas.

Grammar (whitespace-insensitive)::

    formula := binary
    binary  := unary (("U"|"R"|"&&"|"&"|"||"|"|"|"->"|"<->") unary)*
    unary   := ("!"|"X"|"N"|"F"|"G") unary | atom
    atom    := "true"|"tt"|"false"|"ff" | ident | "(" formula ")"

Binding strength, tightest first: unary operators, U/R, &&, ||, ->, <->.
U, R and -> associate to the right.  ``X`` is strong next, ``N`` weak next.

Parsing produces a :class:`Raw` tree that still has general negation and
sugar; :func:`to_nnf` lowers it to an interned :class:`Formula`.
"""
from __future__ import annotations

import re
from typing import NamedTuple

from . import formula as fm
from .formula import Formula


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


class Raw(NamedTuple):
    """Parser-internal syntax tree (may contain negation, ->, <->, F, G)."""
    op: str
    args: tuple = ()

    def __str__(self):
        if self.op in ("true", "false"):
            return self.op
        if self.op == "prop":
            return self.args[0]
        if len(self.args) == 1:
            return f"{_UNARY_TEXT[self.op]}({self.args[0]})"
        return f"({self.args[0]} {_BINARY_TEXT[self.op]} {self.args[1]})"


_UNARY = {"!": "not", "X": "next", "N": "wnext", "F": "eventually", "G": "always"}
_UNARY_TEXT = {v: k for k, v in _UNARY.items()}

# operator -> (precedence, right associative, raw op)
_BINARY = {
    "<->": (1, False, "iff"),
    "->": (2, True, "implies"),
    "||": (3, False, "or"), "|": (3, False, "or"),
    "&&": (4, False, "and"), "&": (4, False, "and"),
    "U": (5, True, "until"), "R": (5, True, "release"),
}
_BINARY_TEXT = {"iff": "<->", "implies": "->", "or": "||", "and": "&&",
                "until": "U", "release": "R"}

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<op><->|->|&&|\|\||[&|!()])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
""", re.VERBOSE)

_CONSTANTS = {"true": "true", "tt": "true", "false": "false", "ff": "false"}
_KEYWORDS = set(_UNARY) | {"U", "R"}


class _Token(NamedTuple):
    kind: str   # "op", "ident", "kw", "const", "eof"
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(f"unknown token {text[pos]!r}", line, col)
        kind = m.lastgroup
        word = m.group()
        if kind == "ws":
            nl = word.count("\n")
            if nl:
                line += nl
                line_start = pos + word.rindex("\n") + 1
        elif kind == "ident" and word in _KEYWORDS:
            tokens.append(_Token("kw", word, line, col))
        elif kind == "ident" and word in _CONSTANTS:
            tokens.append(_Token("const", _CONSTANTS[word], line, col))
        else:
            tokens.append(_Token(kind, word, line, col))
        pos = m.end()
    tokens.append(_Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> Raw:
        tree = self.binary(0)
        tok = self.peek()
        if tok.kind != "eof":
            if tok.text == ")":
                raise ParseError("unbalanced parentheses: unexpected ')'", tok.line, tok.col)
            raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.col)
        return tree

    def binary(self, min_prec: int) -> Raw:
        left = self.unary()
        while True:
            tok = self.peek()
            spec = _BINARY.get(tok.text) if tok.kind in ("op", "kw") else None
            if spec is None or spec[0] < min_prec:
                return left
            prec, right_assoc, op = spec
            self.advance()
            right = self.binary(prec if right_assoc else prec + 1)
            left = Raw(op, (left, right))

    def unary(self) -> Raw:
        tok = self.peek()
        if tok.text in _UNARY and tok.kind in ("op", "kw"):
            self.advance()
            return Raw(_UNARY[tok.text], (self.unary(),))
        return self.atom()

    def atom(self) -> Raw:
        tok = self.advance()
        if tok.kind == "const":
            return Raw(tok.text)
        if tok.kind == "ident":
            return Raw("prop", (tok.text,))
        if tok.text == "(":
            inner = self.binary(0)
            close = self.advance()
            if close.text != ")":
                raise ParseError("unbalanced parentheses: expected ')'", close.line, close.col)
            return inner
        if tok.kind == "eof":
            raise ParseError("unexpected end of input", tok.line, tok.col)
        if tok.text == ")":
            raise ParseError("unbalanced parentheses: unexpected ')'", tok.line, tok.col)
        raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.col)


def parse_raw(text: str) -> Raw:
    return _Parser(text).parse()


def to_nnf(tree: Raw, props: dict[str, int], negated: bool = False) -> Formula:
    """Lower a raw tree to NNF.  Unknown propositions are added to ``props``."""
    op, args = tree.op, tree.args
    if op == "true":
        return fm.false() if negated else fm.true()
    if op == "false":
        return fm.true() if negated else fm.false()
    if op == "prop":
        name = args[0]
        if name not in props:
            props[name] = len(props)
        idx = props[name]
        return fm.not_prop(name, idx) if negated else fm.prop(name, idx)
    if op == "not":
        return to_nnf(args[0], props, not negated)
    if op == "and" or op == "or":
        a, b = (to_nnf(x, props, negated) for x in args)
        return fm.and_(a, b) if (op == "and") != negated else fm.or_(a, b)
    if op == "implies":
        a = to_nnf(args[0], props, not negated)
        b = to_nnf(args[1], props, negated)
        # !a || b, negated: a && !b
        return fm.and_(a, b) if negated else fm.or_(a, b)
    if op == "iff":
        pos_a, pos_b = to_nnf(args[0], props), to_nnf(args[1], props)
        neg_a, neg_b = to_nnf(args[0], props, True), to_nnf(args[1], props, True)
        if negated:
            return fm.or_(fm.and_(pos_a, neg_b), fm.and_(neg_a, pos_b))
        return fm.or_(fm.and_(pos_a, pos_b), fm.and_(neg_a, neg_b))
    if op == "next":
        inner = to_nnf(args[0], props, negated)
        return fm.wnext(inner) if negated else fm.next_(inner)
    if op == "wnext":
        inner = to_nnf(args[0], props, negated)
        return fm.next_(inner) if negated else fm.wnext(inner)
    if op == "eventually":
        inner = to_nnf(args[0], props, negated)
        return fm.always(inner) if negated else fm.eventually(inner)
    if op == "always":
        inner = to_nnf(args[0], props, negated)
        return fm.eventually(inner) if negated else fm.always(inner)
    if op in ("until", "release"):
        a, b = (to_nnf(x, props, negated) for x in args)
        if (op == "until") != negated:
            return fm.until(a, b)
        return fm.release(a, b)
    raise ValueError(f"unknown raw operator {op!r}")


def parse_formula(text: str, props: dict[str, int] | None = None) -> Formula:
    """Parse ``text`` into a canonical NNF formula.

    ``props`` maps proposition names to dense indices; names not yet in the
    map are appended to it.  Pass ``None`` for a fresh map.
    """
    if props is None:
        props = {}
    return to_nnf(parse_raw(text), props)
