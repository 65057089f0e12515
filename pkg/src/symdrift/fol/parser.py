"""Recursive-descent parser for the canonical formula dialect.

Grammar (precedence low to high; `->` and `<->` are right-associative):

    formula := imp ("<->" formula)?
    imp     := disj ("->" imp)?
    disj    := conj ("|" conj)*
    conj    := unary ("&" unary)*
    unary   := "~" unary | ("all"|"exists") IDENT unary | atom | "(" formula ")"
    atom    := IDENT ("(" IDENT ("," IDENT)* ")")?

Identifiers in application position are predicates; argument identifiers are
variables when bound by an enclosing quantifier, constants otherwise. Unseen
identifiers are auto-registered, with arity locked at first use.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import FormulaSyntaxError
from .terms import (
    CONSTANT,
    PREDICATE,
    And,
    Atom,
    Const,
    Exists,
    ForAll,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    SymbolRegistry,
    Term,
    Var,
    type_check,
)

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<arrow><->|->)|(?P<op>[~&|(),.])|(?P<ident>[A-Za-z_][A-Za-z0-9_]*))"
)


@dataclass(frozen=True)
class _Tok:
    text: str
    pos: int


def _lex(text: str) -> list[_Tok]:
    tokens: list[_Tok] = []
    i = 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if not m or m.end() == i:
            stripped = text[i:].lstrip()
            if not stripped:
                break
            bad_at = len(text) - len(stripped)
            raise FormulaSyntaxError(f"unexpected character {stripped[0]!r}", bad_at)
        text_part = m.group(1) or m.group(2) or m.group(3)
        tokens.append(_Tok(text_part, m.end() - len(text_part)))
        i = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, registry: SymbolRegistry):
        self.text = text
        self.tokens = _lex(text)
        self.idx = 0
        self.registry = registry
        self.bound: list[str] = []

    def peek(self) -> _Tok | None:
        return self.tokens[self.idx] if self.idx < len(self.tokens) else None

    def take(self) -> _Tok:
        tok = self.peek()
        if tok is None:
            raise FormulaSyntaxError("unexpected end of input", len(self.text))
        self.idx += 1
        return tok

    def expect(self, text: str) -> _Tok:
        tok = self.peek()
        if tok is None or tok.text != text:
            pos = tok.pos if tok else len(self.text)
            raise FormulaSyntaxError(
                f"unexpected {tok.text!r}" if tok else "unexpected end of input",
                pos,
                expected=repr(text),
            )
        return self.take()

    # precedence ladder ----------------------------------------------------

    def formula(self) -> Formula:
        left = self.imp()
        tok = self.peek()
        if tok and tok.text == "<->":
            self.take()
            return Iff(left, self.formula())
        return left

    def imp(self) -> Formula:
        left = self.disj()
        tok = self.peek()
        if tok and tok.text == "->":
            self.take()
            return Implies(left, self.imp())
        return left

    def disj(self) -> Formula:
        left = self.conj()
        while (tok := self.peek()) and tok.text == "|":
            self.take()
            left = Or(left, self.conj())
        return left

    def conj(self) -> Formula:
        left = self.unary()
        while (tok := self.peek()) and tok.text == "&":
            self.take()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        tok = self.peek()
        if tok is None:
            raise FormulaSyntaxError("unexpected end of input", len(self.text), "a formula")
        if tok.text == "~":
            self.take()
            return Not(self.unary())
        if tok.text in ("all", "exists"):
            self.take()
            var = self.take()
            if not var.text.isidentifier():
                raise FormulaSyntaxError(
                    f"unexpected {var.text!r}", var.pos, "a variable name"
                )
            self.bound.append(var.text)
            try:
                body = self.unary()
            finally:
                self.bound.pop()
            return (ForAll if tok.text == "all" else Exists)(var.text, body)
        if tok.text == "(":
            self.take()
            inner = self.formula()
            self.expect(")")
            return inner
        if tok.text.isidentifier():
            return self.atom()
        raise FormulaSyntaxError(f"unexpected {tok.text!r}", tok.pos, "a formula")

    def atom(self) -> Atom:
        name = self.take()
        args: list[Term] = []
        tok = self.peek()
        if tok and tok.text == "(":
            self.take()
            while True:
                arg = self.take()
                if not arg.text.isidentifier():
                    raise FormulaSyntaxError(
                        f"unexpected {arg.text!r}", arg.pos, "a term"
                    )
                args.append(self.term(arg.text))
                nxt = self.take()
                if nxt.text == ")":
                    break
                if nxt.text != ",":
                    raise FormulaSyntaxError(
                        f"unexpected {nxt.text!r}", nxt.pos, "',' or ')'"
                    )
        pred = self.registry.lookup(name.text, PREDICATE)
        if pred is None:
            pred = self.registry.declare(name.text, len(args), PREDICATE)
        return Atom(pred, tuple(args))

    def term(self, name: str) -> Term:
        if name in self.bound:
            return Var(name)
        const = self.registry.lookup(name, CONSTANT)
        if const is None:
            const = self.registry.declare(name, 0, CONSTANT)
        return Const(const)


def parse_formula(text: str, registry: SymbolRegistry) -> Formula:
    """Parse one formula, auto-registering unseen symbols into `registry`.

    A trailing `.` (the external-prover statement terminator) is accepted and
    ignored, so emitted files re-parse through this same entry point.
    """
    if not text or not text.strip():
        raise FormulaSyntaxError("empty input", 0, "a formula")
    parser = _Parser(text, registry)
    result = parser.formula()
    trailing = parser.peek()
    if trailing is not None and trailing.text == ".":
        parser.take()
        trailing = parser.peek()
    if trailing is not None:
        raise FormulaSyntaxError(
            f"unexpected {trailing.text!r}", trailing.pos, "end of input"
        )
    type_check(result, registry)
    return result
