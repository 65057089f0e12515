"""Closed-world forward chaining over Horn programs.

Saturates the fact base to its least fixed point (finite, because the
fragment is function-free) and answers queries under negation as failure.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import NotHorn
from ..fol.terms import (
    Atom,
    CLOSED_WORLD,
    Const,
    LogicProgram,
    Not,
    Var,
    horn_parts,
    is_horn,
)
from .verdict import FALSE, TRUE, Verdict

GroundAtom = tuple[str, tuple[str, ...]]


@dataclass
class Saturation:
    facts: set[GroundAtom]
    depths: dict[GroundAtom, int]
    firings: int


def _ground(atom: Atom, env: dict[str, str]) -> GroundAtom:
    args = []
    for a in atom.args:
        if isinstance(a, Var):
            args.append(env[a.name])
        else:
            args.append(a.symbol)
    return (atom.pred, tuple(args))


def _match_body(body: list[Atom], facts: set[GroundAtom], env: dict[str, str]):
    """Yield environments grounding every body atom against the fact base."""
    if not body:
        yield env
        return
    head, *rest = body
    for pred, args in sorted(facts):
        if pred != head.pred or len(args) != len(head.args):
            continue
        new_env = dict(env)
        ok = True
        for formal, actual in zip(head.args, args):
            if isinstance(formal, Const):
                if formal.symbol != actual:
                    ok = False
                    break
            else:
                bound = new_env.get(formal.name)
                if bound is None:
                    new_env[formal.name] = actual
                elif bound != actual:
                    ok = False
                    break
        if ok:
            yield from _match_body(rest, facts, new_env)


def saturate(p: LogicProgram) -> Saturation:
    """Least fixed point of the rule base, with per-fact derivation depth."""
    rules: list[tuple[list[Atom], Atom]] = []
    facts: set[GroundAtom] = set()
    depths: dict[GroundAtom, int] = {}
    for premise in p.premises:
        if not is_horn(premise):
            raise NotHorn(f"premise is not Horn: {premise!r}")
        body, head = horn_parts(premise)
        if not body:
            g = _ground(head, {})
            facts.add(g)
            depths.setdefault(g, 0)
        else:
            rules.append((body, head))

    firings = 0
    changed = True
    while changed:
        changed = False
        for body, head in rules:
            for env in _match_body(body, facts, {}):
                g = _ground(head, env)
                depth = 1 + max(depths[_ground(b, env)] for b in body)
                if g not in facts:
                    facts.add(g)
                    depths[g] = depth
                    firings += 1
                    changed = True
                elif depth < depths[g]:
                    depths[g] = depth
                    changed = True
    return Saturation(facts, depths, firings)


def forward_chain_cwa(p: LogicProgram) -> Verdict:
    """True iff the query atom is derivable; negated queries flip under NAF."""
    if p.semantics_mode != CLOSED_WORLD:
        raise ValueError("forward chaining expects a closed-world program")
    query = p.query
    negated = False
    if isinstance(query, Not):
        query = query.body
        negated = True
    if not isinstance(query, Atom) or any(isinstance(a, Var) for a in query.args):
        raise NotHorn(f"closed-world queries must be ground literals: {p.query!r}")
    result = saturate(p)
    holds = _ground(query, {}) in result.facts
    if negated:
        holds = not holds
    return Verdict(TRUE if holds else FALSE, steps=result.firings)
