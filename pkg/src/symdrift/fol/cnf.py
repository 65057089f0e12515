"""Clause-form conversion for the function-free fragment.

Skolemization only introduces fresh constants: an existential quantifier in
the scope of a universal one would need a Skolem function and is rejected.
The output is equisatisfiable with the input.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import UnsupportedSkolemFunction
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
    Term,
    Var,
    require_closed,
)


@dataclass(frozen=True)
class Literal:
    positive: bool
    pred: str
    args: tuple[Term, ...]

    def negate(self) -> "Literal":
        return Literal(not self.positive, self.pred, self.args)

    def sort_key(self) -> tuple:
        return (
            self.pred,
            self.positive,
            tuple((isinstance(a, Const), a.symbol if isinstance(a, Const) else a.name) for a in self.args),
        )


Clause = frozenset[Literal]


@dataclass
class ClauseSet:
    clauses: list[Clause] = field(default_factory=list)
    skolem_symbols: list[str] = field(default_factory=list)
    # Names of skolem constants, keyed by their synthetic symbol id.
    skolem_names: dict[str, str] = field(default_factory=dict)


class SkolemAllocator:
    """Deterministic `sk0, sk1, ...` allocation, skipping registry collisions.

    Also hands out serial numbers for standardizing universal variables apart.
    """

    def __init__(self, registry: SymbolRegistry):
        self._registry = registry
        self._n = 0
        self._var_n = 0
        self.allocated: list[tuple[str, str]] = []  # (symbol id, name)

    def fresh(self) -> str:
        while True:
            name = f"sk{self._n}"
            self._n += 1
            if not self._registry.has_name(name):
                break
        sid = f"!{name}"
        self.allocated.append((sid, name))
        return sid

    def var_serial(self) -> int:
        self._var_n += 1
        return self._var_n


def _eliminate_arrows(f: Formula) -> Formula:
    if isinstance(f, Atom):
        return f
    if isinstance(f, Not):
        return Not(_eliminate_arrows(f.body))
    if isinstance(f, And):
        return And(_eliminate_arrows(f.left), _eliminate_arrows(f.right))
    if isinstance(f, Or):
        return Or(_eliminate_arrows(f.left), _eliminate_arrows(f.right))
    if isinstance(f, Implies):
        return Or(Not(_eliminate_arrows(f.left)), _eliminate_arrows(f.right))
    if isinstance(f, Iff):
        left = _eliminate_arrows(f.left)
        right = _eliminate_arrows(f.right)
        return And(Or(Not(left), right), Or(Not(right), left))
    if isinstance(f, (ForAll, Exists)):
        return type(f)(f.var, _eliminate_arrows(f.body))
    raise TypeError(f"not a formula: {f!r}")


def _to_nnf(f: Formula, negate: bool) -> Formula:
    if isinstance(f, Atom):
        return Not(f) if negate else f
    if isinstance(f, Not):
        return _to_nnf(f.body, not negate)
    if isinstance(f, And):
        node = Or if negate else And
        return node(_to_nnf(f.left, negate), _to_nnf(f.right, negate))
    if isinstance(f, Or):
        node = And if negate else Or
        return node(_to_nnf(f.left, negate), _to_nnf(f.right, negate))
    if isinstance(f, ForAll):
        node = Exists if negate else ForAll
        return node(f.var, _to_nnf(f.body, negate))
    if isinstance(f, Exists):
        node = ForAll if negate else Exists
        return node(f.var, _to_nnf(f.body, negate))
    raise TypeError(f"arrows must be eliminated first: {f!r}")


def _skolemize(f: Formula, subst: dict[str, Term], under_universal: bool,
               alloc: SkolemAllocator) -> Formula:
    """Drop quantifiers: existential vars become fresh constants, universal
    vars stay as (renamed-apart) variables."""
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(subst.get(a.name, a) if isinstance(a, Var) else a for a in f.args))
    if isinstance(f, Not):
        return Not(_skolemize(f.body, subst, under_universal, alloc))
    if isinstance(f, (And, Or)):
        return type(f)(
            _skolemize(f.left, subst, under_universal, alloc),
            _skolemize(f.right, subst, under_universal, alloc),
        )
    if isinstance(f, ForAll):
        fresh = Var(f"{f.var}_{alloc.var_serial()}")
        inner = dict(subst)
        inner[f.var] = fresh
        return _skolemize(f.body, inner, True, alloc)
    if isinstance(f, Exists):
        if under_universal:
            raise UnsupportedSkolemFunction(
                f"existential variable {f.var!r} under a universal quantifier"
            )
        inner = dict(subst)
        inner[f.var] = Const(alloc.fresh())
        return _skolemize(f.body, inner, under_universal, alloc)
    raise TypeError(f"unexpected node during skolemization: {f!r}")


def _distribute(f: Formula) -> list[list[Literal]]:
    """Quantifier-free NNF to a list of literal lists (CNF)."""
    if isinstance(f, Atom):
        return [[Literal(True, f.pred, f.args)]]
    if isinstance(f, Not):
        assert isinstance(f.body, Atom), "NNF guarantees negation sits on atoms"
        return [[Literal(False, f.body.pred, f.body.args)]]
    if isinstance(f, And):
        return _distribute(f.left) + _distribute(f.right)
    if isinstance(f, Or):
        left = _distribute(f.left)
        right = _distribute(f.right)
        return [lc + rc for lc in left for rc in right]
    raise TypeError(f"unexpected node in CNF distribution: {f!r}")


def _standardize_clause(literals: list[Literal], clause_index: int) -> Clause:
    mapping: dict[str, Var] = {}
    out = []
    for lit in literals:
        args: list[Term] = []
        for a in lit.args:
            if isinstance(a, Var):
                if a.name not in mapping:
                    mapping[a.name] = Var(f"x{clause_index}_{len(mapping)}")
                args.append(mapping[a.name])
            else:
                args.append(a)
        out.append(Literal(lit.positive, lit.pred, tuple(args)))
    return frozenset(out)


def _is_tautology(clause: Clause) -> bool:
    return any(lit.negate() in clause for lit in clause)


def to_cnf(f: Formula, registry: SymbolRegistry,
           alloc: SkolemAllocator | None = None,
           start_index: int = 0) -> ClauseSet:
    """Convert a closed formula to an equisatisfiable clause set.

    Callers converting several formulas into one refutation problem pass a
    shared allocator so skolem constants never collide.
    """
    require_closed(f)
    own_alloc = alloc or SkolemAllocator(registry)
    first_new = len(own_alloc.allocated)
    nnf = _to_nnf(_eliminate_arrows(f), negate=False)
    stripped = _skolemize(nnf, {}, under_universal=False, alloc=own_alloc)
    out = ClauseSet()
    for i, lits in enumerate(_distribute(stripped)):
        clause = _standardize_clause(lits, start_index + i)
        if not _is_tautology(clause) and clause not in out.clauses:
            out.clauses.append(clause)
    out.skolem_symbols = [sid for sid, _ in own_alloc.allocated[first_new:]]
    out.skolem_names = dict(own_alloc.allocated[first_new:])
    return out
