"""Recursive-descent parser for the preference-formula DSL.

Grammar (keywords case-insensitive, NOT > AND > OR in binding strength)::

    formula := or
    or      := and ("OR" and)*
    and     := unary ("AND" unary)*
    unary   := "NOT" unary | "(" formula ")" | "TRUE" | "FALSE" | atom
    atom    := term cmp term
    term    := ("x"|"y") "." ident | string-literal | rational-literal
    cmp     := "=" | "!=" | "<" | ">" | "<=" | ">="

String literals are single-quoted D constants; rational literals are exact
(decimal or p/q), never floats.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import FormulaSyntaxError, FormulaTypeError
from .formulas import (
    And,
    Attr,
    Const,
    Not,
    Or,
    PreferenceFormula,
    Schema,
    Sort,
    make_atom,
)

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<rat>[+-]?\d+(?:\.\d+|/\d+)?)
  | (?P<str>'[^']*')
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<cmp><=|>=|!=|=|<|>)
  | (?P<lpar>\()
  | (?P<rpar>\))
  | (?P<dot>\.)
    """,
    re.VERBOSE,
)

_KEYWORDS = {"and", "or", "not", "true", "false"}
_CMP_OPS = ("=", "!=", "<", ">", "<=", ">=")


class _Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind, text, pos):
        self.kind = kind
        self.text = text
        self.pos = pos


def _lex(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tok = m.group()
            if kind == "ident" and tok.lower() in _KEYWORDS:
                kind = tok.lower()
            tokens.append(_Token(kind, tok, pos))
        pos = m.end()
    tokens.append(_Token("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, schema: Schema):
        self.text = text
        self.schema = schema
        self.tokens = _lex(text)
        self.i = 0

    @property
    def cur(self) -> _Token:
        return self.tokens[self.i]

    def _fail(self, expected):
        tok = self.cur
        what = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise FormulaSyntaxError(f"unexpected {what}", tok.pos, expected)

    def _eat(self, kind, expected=None):
        if self.cur.kind != kind:
            self._fail(expected or (kind,))
        tok = self.cur
        self.i += 1
        return tok

    def parse(self):
        body = self.or_()
        if self.cur.kind != "eof":
            self._fail(("AND", "OR", "end of input"))
        return body

    def or_(self):
        parts = [self.and_()]
        while self.cur.kind == "or":
            self.i += 1
            parts.append(self.and_())
        return parts[0] if len(parts) == 1 else Or(*parts)

    def and_(self):
        parts = [self.unary()]
        while self.cur.kind == "and":
            self.i += 1
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else And(*parts)

    def unary(self):
        tok = self.cur
        if tok.kind == "not":
            self.i += 1
            return Not(self.unary())
        if tok.kind == "lpar":
            self.i += 1
            body = self.or_()
            self._eat("rpar", ("')'",))
            return body
        if tok.kind == "true":
            self.i += 1
            return True
        if tok.kind == "false":
            self.i += 1
            return False
        return self.atom()

    def atom(self):
        lhs, lsort = self.term()
        if self.cur.kind != "cmp":
            self._fail(_CMP_OPS)
        op = self._eat("cmp").text
        rhs, rsort = self.term()
        sort = lsort or rsort
        if sort is None:
            raise FormulaTypeError("atom compares two literals of no determinable sort")
        if lsort is not None and rsort is not None and lsort is not rsort:
            raise FormulaTypeError(
                f"sort mismatch in atom: {lsort.name} {op} {rsort.name}"
            )
        if sort is Sort.D and op in ("<", ">", "<=", ">="):
            raise FormulaTypeError(f"order comparator {op!r} on a D-sorted operand")
        lhs = self._coerce(lhs, sort)
        rhs = self._coerce(rhs, sort)
        return make_atom(lhs, op, rhs, sort)

    def _coerce(self, term, sort):
        if isinstance(term, Const) and term.sort is not sort:
            raise FormulaTypeError(
                f"literal {term} cannot have sort {sort.name}"
            )
        return term

    def term(self):
        tok = self.cur
        if tok.kind == "str":
            self.i += 1
            return Const(Sort.D, tok.text[1:-1]), Sort.D
        if tok.kind == "rat":
            self.i += 1
            return Const(Sort.Q, Fraction(tok.text)), Sort.Q
        if tok.kind == "ident":
            var = tok.text.lower()
            if var not in ("x", "y"):
                raise FormulaTypeError(
                    f"unknown tuple variable {tok.text!r} (only x and y are free)"
                )
            self.i += 1
            self._eat("dot", ("'.'",))
            attr_tok = self.cur
            if attr_tok.kind not in ("ident", "and", "or", "not", "true", "false"):
                self._fail(("attribute name",))
            self.i += 1
            sort = self.schema.sort_of(attr_tok.text)  # raises on unknown attribute
            return Attr(var, attr_tok.text), sort
        self._fail(("x.<attr>", "y.<attr>", "string literal", "rational literal"))


def parse_formula(text: str, schema: Schema) -> PreferenceFormula:
    """Parse DSL text into a well-typed formula over x (preferred) and y."""
    body = _Parser(text, schema).parse()
    return PreferenceFormula(schema, body)
