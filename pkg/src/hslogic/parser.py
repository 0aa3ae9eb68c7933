"""Concrete syntax for formulas and fragment strings.

Grammar, loosest binding first:

    formula := impl
    impl    := disj ("->" impl)?          right associative
    disj    := conj ("|" conj)*
    conj    := unary ("&" unary)*
    unary   := "~" unary
             | "<" MOD ">" unary
             | "[" MOD "]" unary
             | atom
    atom    := "true" | "false" | IDENT | "(" formula ")"

MOD is one of A iA B iB D iD E iE L iL O iO. IDENT matches
[a-z_][a-zA-Z0-9_]*; names beginning with two underscores are reserved for
generated letters but parse normally so rendered output round-trips.
Whitespace is insignificant and "#" starts a comment running to end of line.
"""

from __future__ import annotations

import re

from .syntax import (
    Atom, Box, Diamond, Formula, Fragment, Implies, And, Or, Not,
    TRUE, FALSE, MODALITIES_BY_NAME,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__("%s (line %d, column %d)" % (message, line, col))
        self.line = line
        self.col = col


_IDENT_RE = re.compile(r"[a-z_][a-zA-Z0-9_]*")
_MOD_RE = re.compile(r"[A-Za-z]+")


class _Token:
    __slots__ = ("kind", "value", "line", "col")

    def __init__(self, kind, value, line, col):
        self.kind = kind
        self.value = value
        self.line = line
        self.col = col


def _tokenize(text: str):
    tokens = []
    i = 0
    line = 1
    line_start = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            i += 1
            line_start = i
            continue
        if c in " \t\r":
            i += 1
            continue
        col = i - line_start + 1
        if c == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if c in "()&|~":
            kinds = {"(": "lparen", ")": "rparen", "&": "and",
                     "|": "or", "~": "not"}
            tokens.append(_Token(kinds[c], c, line, col))
            i += 1
            continue
        if c == "-":
            if text.startswith("->", i):
                tokens.append(_Token("implies", "->", line, col))
                i += 2
                continue
            raise ParseError("stray '-'", line, col)
        if c in "<[":
            closing = ">" if c == "<" else "]"
            m = _MOD_RE.match(text, i + 1)
            if not m:
                raise ParseError("expected modality name after %r" % c, line, col)
            name = m.group(0)
            j = m.end()
            if j >= n or text[j] != closing:
                raise ParseError("expected %r after modality %r" % (closing, name),
                                 line, col)
            if name not in MODALITIES_BY_NAME:
                raise ParseError("unknown modality %r" % name, line, col)
            kind = "diamond" if c == "<" else "box"
            tokens.append(_Token(kind, MODALITIES_BY_NAME[name], line, col))
            i = j + 1
            continue
        m = _IDENT_RE.match(text, i)
        if m:
            word = m.group(0)
            if word == "true":
                tokens.append(_Token("true", word, line, col))
            elif word == "false":
                tokens.append(_Token("false", word, line, col))
            else:
                tokens.append(_Token("ident", word, line, col))
            i = m.end()
            continue
        raise ParseError("unexpected character %r" % c, line, col)
    tokens.append(_Token("eof", None, line, n - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self, kind: str) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != kind:
            raise ParseError("expected %s, found %r" % (kind, tok.value),
                             tok.line, tok.col)
        self.pos += 1
        return tok

    def formula(self) -> Formula:
        return self.impl()

    def impl(self) -> Formula:
        lhs = self.disj()
        if self.peek().kind == "implies":
            self.take("implies")
            return Implies(lhs, self.impl())
        return lhs

    def disj(self) -> Formula:
        out = self.conj()
        while self.peek().kind == "or":
            self.take("or")
            out = Or(out, self.conj())
        return out

    def conj(self) -> Formula:
        out = self.unary()
        while self.peek().kind == "and":
            self.take("and")
            out = And(out, self.unary())
        return out

    def unary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "not":
            self.take("not")
            return Not(self.unary())
        if tok.kind == "diamond":
            self.take("diamond")
            return Diamond(tok.value, self.unary())
        if tok.kind == "box":
            self.take("box")
            return Box(tok.value, self.unary())
        return self.atom()

    def atom(self) -> Formula:
        tok = self.peek()
        if tok.kind == "true":
            self.take("true")
            return TRUE
        if tok.kind == "false":
            self.take("false")
            return FALSE
        if tok.kind == "ident":
            self.take("ident")
            return Atom(tok.value)
        if tok.kind == "lparen":
            self.take("lparen")
            inner = self.formula()
            self.take("rparen")
            return inner
        raise ParseError("expected a formula, found %r" % (tok.value,),
                         tok.line, tok.col)


def parse_formula(text: str) -> Formula:
    tokens = _tokenize(text)
    parser = _Parser(tokens)
    phi = parser.formula()
    tok = parser.peek()
    if tok.kind != "eof":
        raise ParseError("trailing input %r" % (tok.value,), tok.line, tok.col)
    return phi


def parse_fragment(text: str) -> Fragment:
    """Parse a space-separated list of modality names, e.g. "A iA B"."""
    names = text.replace(",", " ").split()
    if not names:
        raise ParseError("empty fragment", 1, 1)
    mods = set()
    for name in names:
        if name not in MODALITIES_BY_NAME:
            raise ParseError("unknown modality %r" % name, 1, 1)
        mods.add(MODALITIES_BY_NAME[name])
    return Fragment(frozenset(mods))
