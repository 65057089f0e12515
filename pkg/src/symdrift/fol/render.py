"""Formula rendering in the canonical dialect and the external-prover dialect.

Canonical output round-trips: parsing it against the same registry rebuilds a
structurally identical formula. The prover dialect differs only in statement
termination (`.`), `-` for negation, and escaping of constant names that the
external tool would silently read as variables.
"""

from __future__ import annotations

from .terms import (
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
    Var,
)

CANONICAL = "canonical"
PROVER9 = "prover9"

# Binding strength; higher binds tighter.
_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4, Not: 5, ForAll: 5, Exists: 5, Atom: 6}

_CONNECTIVE = {And: "&", Or: "|", Implies: "->", Iff: "<->"}


def render_formula(f: Formula, registry: SymbolRegistry, dialect: str = CANONICAL) -> str:
    if dialect == CANONICAL:
        return _render(f, registry, parent_prec=0, neg="~", escape=False)
    if dialect == PROVER9:
        return _render(f, registry, parent_prec=0, neg="-", escape=True) + "."
    raise ValueError(f"unknown dialect {dialect!r}")


def _term_str(t, registry: SymbolRegistry, escape: bool) -> str:
    if isinstance(t, Var):
        return t.name
    assert isinstance(t, Const)
    name = registry.name_of(t.symbol)
    if escape and name[0] in "uvwxyz":
        # The external prover reads free identifiers starting u-z as variables.
        return "c_" + name
    return name


def _render(f: Formula, registry: SymbolRegistry, parent_prec: int, neg: str, escape: bool) -> str:
    if isinstance(f, Atom):
        name = registry.name_of(f.pred)
        if not f.args:
            return name
        return f"{name}({', '.join(_term_str(a, registry, escape) for a in f.args)})"
    if isinstance(f, Not):
        return neg + _render(f.body, registry, _PREC[Not], neg, escape)
    if isinstance(f, (ForAll, Exists)):
        kw = "all" if isinstance(f, ForAll) else "exists"
        body = f.body
        if isinstance(body, (Atom, Not, ForAll, Exists)):
            return f"{kw} {f.var} {_render(body, registry, _PREC[type(f)], neg, escape)}"
        return f"{kw} {f.var} ({_render(body, registry, 0, neg, escape)})"
    op = _CONNECTIVE[type(f)]
    prec = _PREC[type(f)]
    # Right-associative arrows reparse correctly when the right child keeps the
    # parent's precedence; chains of the left-folded & and | likewise.
    if isinstance(f, (Implies, Iff)):
        left = _render(f.left, registry, prec + 1, neg, escape)
        right = _render(f.right, registry, prec, neg, escape)
    else:
        left = _render(f.left, registry, prec, neg, escape)
        right = _render(f.right, registry, prec + 1, neg, escape)
    out = f"{left} {op} {right}"
    if prec < parent_prec:
        return f"({out})"
    return out
