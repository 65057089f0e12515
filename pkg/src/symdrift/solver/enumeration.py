"""Brute-force model enumeration over the Herbrand domain.

This is the independent oracle every other engine is checked against. Each
formula is grounded over the finite constant domain and compiled once into a
Python expression over an interpretation bitmask, so walking all 2^n
interpretations stays fast enough for property tests.
"""

from __future__ import annotations

from itertools import product

from ..errors import DomainTooLarge
from ..fol.terms import (
    And,
    Atom,
    Exists,
    ForAll,
    Formula,
    Iff,
    Implies,
    LogicProgram,
    Not,
    OPEN_WORLD,
    Or,
    Var,
)
from .verdict import DISPROVED, PROVED, UNKNOWN, Verdict

MAX_ATOM_BITS = 24


def _ground_expr(f: Formula, env: dict[str, str], atom_bit: dict[tuple, int],
                 domain: list[str]) -> str:
    """Render `f` as a Python boolean expression over bitmask variable `m`."""
    if isinstance(f, Atom):
        key = (f.pred, tuple(env[a.name] if isinstance(a, Var) else a.symbol for a in f.args))
        return f"(m>>{atom_bit[key]}&1)"
    if isinstance(f, Not):
        return f"(not {_ground_expr(f.body, env, atom_bit, domain)})"
    if isinstance(f, And):
        return f"({_ground_expr(f.left, env, atom_bit, domain)} and {_ground_expr(f.right, env, atom_bit, domain)})"
    if isinstance(f, Or):
        return f"({_ground_expr(f.left, env, atom_bit, domain)} or {_ground_expr(f.right, env, atom_bit, domain)})"
    if isinstance(f, Implies):
        return f"((not {_ground_expr(f.left, env, atom_bit, domain)}) or {_ground_expr(f.right, env, atom_bit, domain)})"
    if isinstance(f, Iff):
        return f"(bool({_ground_expr(f.left, env, atom_bit, domain)}) == bool({_ground_expr(f.right, env, atom_bit, domain)}))"
    if isinstance(f, (ForAll, Exists)):
        joiner = " and " if isinstance(f, ForAll) else " or "
        parts = []
        for c in domain:
            inner = dict(env)
            inner[f.var] = c
            parts.append(_ground_expr(f.body, inner, atom_bit, domain))
        return "(" + joiner.join(parts) + ")"
    raise TypeError(f"not a formula: {f!r}")


def _compile(expr: str):
    return eval(f"lambda m: {expr}", {"__builtins__": {"bool": bool}})


def enumerate_models(p: LogicProgram, extra_constants: list[str] | None = None) -> Verdict:
    """Decide the query by exhaustive search over Herbrand interpretations.

    The domain is the program's constants plus `extra_constants` (fresh names
    registered on a registry copy). Proved means the query holds in every
    model of the premises, Disproved that it fails in every one. A program
    with no models at all counts as Proved, matching the refutation engines'
    order of checks.
    """
    if p.semantics_mode != OPEN_WORLD:
        raise ValueError("model enumeration expects an open-world program")
    registry = p.registry.copy()
    domain = p.constants()
    for name in extra_constants or []:
        sid = registry.lookup(name, "constant") or registry.declare(name, 0, "constant")
        if sid not in domain:
            domain.append(sid)
    if not domain:
        # First-order semantics assumes a non-empty universe.
        domain.append(registry.declare("_d0", 0, "constant"))

    atom_bit: dict[tuple, int] = {}
    for pred in p.predicates():
        arity = registry.info(pred).arity
        for combo in product(domain, repeat=arity):
            atom_bit[(pred, combo)] = len(atom_bit)
            if len(atom_bit) > MAX_ATOM_BITS:
                raise DomainTooLarge(
                    f"{len(atom_bit)}+ ground atoms exceeds the 2^{MAX_ATOM_BITS} guard"
                )

    premise_fn = _compile(
        " and ".join(_ground_expr(f, {}, atom_bit, domain) for f in p.premises) or "True"
    )
    query_fn = _compile(_ground_expr(p.query, {}, atom_bit, domain))

    q_true = q_false = 0
    n_models = 0
    for m in range(1 << len(atom_bit)):
        if premise_fn(m):
            n_models += 1
            if query_fn(m):
                q_true += 1
            else:
                q_false += 1
            if q_true and q_false:
                break

    steps = n_models
    if q_true and q_false:
        return Verdict(UNKNOWN, steps=steps)
    if q_false == 0:
        return Verdict(PROVED, steps=steps)  # includes the no-model case
    return Verdict(DISPROVED, steps=steps)
