"""First-order data model: terms, formulas, symbol registry, logic programs.

The fragment is function-free (constants and predicates only, no equality).
Formulas store opaque symbol ids; human-readable names live in the registry,
so renaming a symbol never touches formula structure.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

from ..errors import (
    ArityMismatch,
    FreeVariableError,
    NameCollision,
    NotHorn,
    UnknownSymbol,
)

PREDICATE = "predicate"
CONSTANT = "constant"

OPEN_WORLD = "open_world"
CLOSED_WORLD = "closed_world"
CSP_MODE = "csp"

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


# ---------------------------------------------------------------------------
# Terms and formula nodes


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    symbol: str  # registry id


Term = Var | Const


@dataclass(frozen=True)
class Atom:
    pred: str  # registry id
    args: tuple[Term, ...] = ()


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class ForAll:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


Formula = Atom | Not | And | Or | Implies | Iff | ForAll | Exists

_BINARY = (And, Or, Implies, Iff)
_QUANT = (ForAll, Exists)


# ---------------------------------------------------------------------------
# Symbol registry


@dataclass(frozen=True)
class SymbolInfo:
    name: str
    arity: int
    kind: str  # PREDICATE | CONSTANT


class SymbolRegistry:
    """Names, arities, and kinds for every symbol a program may reference.

    Names are unique case-sensitively within a kind. Ids are allocated
    sequentially (`p0, p1, ...` / `c0, c1, ...`) and never reused, so they
    survive renames.
    """

    def __init__(self) -> None:
        self._entries: dict[str, SymbolInfo] = {}
        self._by_name: dict[tuple[str, str], str] = {}
        self._counter = 0

    def declare(self, name: str, arity: int, kind: str) -> str:
        if not _IDENT_RE.match(name):
            raise NameCollision(f"invalid identifier {name!r}")
        if arity < 0:
            raise ArityMismatch(name, 0, arity)
        key = (kind, name)
        if key in self._by_name:
            existing = self._entries[self._by_name[key]]
            if existing.arity != arity:
                raise ArityMismatch(name, existing.arity, arity)
            return self._by_name[key]
        prefix = "p" if kind == PREDICATE else "c"
        sid = f"{prefix}{self._counter}"
        self._counter += 1
        self._entries[sid] = SymbolInfo(name, arity, kind)
        self._by_name[key] = sid
        return sid

    def lookup(self, name: str, kind: str) -> str | None:
        return self._by_name.get((kind, name))

    def info(self, symbol_id: str) -> SymbolInfo:
        try:
            return self._entries[symbol_id]
        except KeyError:
            raise UnknownSymbol(f"unknown symbol id {symbol_id!r}") from None

    def name_of(self, symbol_id: str) -> str:
        return self.info(symbol_id).name

    def has_name(self, name: str) -> bool:
        return any(n == name for (_, n) in self._by_name)

    def rename(self, symbol_id: str, new_name: str) -> None:
        info = self.info(symbol_id)
        if not _IDENT_RE.match(new_name):
            raise NameCollision(f"invalid identifier {new_name!r}")
        other = self._by_name.get((info.kind, new_name))
        if other is not None and other != symbol_id:
            raise NameCollision(f"{info.kind} name {new_name!r} already in use")
        del self._by_name[(info.kind, info.name)]
        self._entries[symbol_id] = replace(info, name=new_name)
        self._by_name[(info.kind, new_name)] = symbol_id

    def remove(self, symbol_id: str) -> None:
        info = self.info(symbol_id)
        del self._by_name[(info.kind, info.name)]
        del self._entries[symbol_id]

    def symbols(self, kind: str | None = None) -> list[str]:
        return [s for s, i in self._entries.items() if kind is None or i.kind == kind]

    def copy(self) -> "SymbolRegistry":
        out = SymbolRegistry()
        out._entries = dict(self._entries)
        out._by_name = dict(self._by_name)
        out._counter = self._counter
        return out

    def __contains__(self, symbol_id: str) -> bool:
        return symbol_id in self._entries

    def __len__(self) -> int:
        return len(self._entries)


# ---------------------------------------------------------------------------
# Formula utilities


def free_variables(f: Formula) -> set[str]:
    """Exact set of variables not bound by an enclosing quantifier."""
    if isinstance(f, Atom):
        return {a.name for a in f.args if isinstance(a, Var)}
    if isinstance(f, Not):
        return free_variables(f.body)
    if isinstance(f, _BINARY):
        return free_variables(f.left) | free_variables(f.right)
    if isinstance(f, _QUANT):
        return free_variables(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def walk_atoms(f: Formula):
    """Yield every atom in the formula, left to right."""
    if isinstance(f, Atom):
        yield f
    elif isinstance(f, Not):
        yield from walk_atoms(f.body)
    elif isinstance(f, _BINARY):
        yield from walk_atoms(f.left)
        yield from walk_atoms(f.right)
    elif isinstance(f, _QUANT):
        yield from walk_atoms(f.body)
    else:
        raise TypeError(f"not a formula: {f!r}")


def map_atoms(f: Formula, fn) -> Formula:
    """Rebuild the formula with `fn` applied to every atom.

    `fn` may return any formula, so atom-level substitution (including
    expansion into conjunctions) stays polarity-safe.
    """
    if isinstance(f, Atom):
        return fn(f)
    if isinstance(f, Not):
        return Not(map_atoms(f.body, fn))
    if isinstance(f, _BINARY):
        return type(f)(map_atoms(f.left, fn), map_atoms(f.right, fn))
    if isinstance(f, _QUANT):
        return type(f)(f.var, map_atoms(f.body, fn))
    raise TypeError(f"not a formula: {f!r}")


def type_check(f: Formula, registry: SymbolRegistry) -> None:
    """Check arity and symbol-kind agreement of every atom against `registry`."""
    for atom in walk_atoms(f):
        info = registry.info(atom.pred)
        if info.kind != PREDICATE:
            raise UnknownSymbol(f"{info.name!r} used as predicate but declared {info.kind}")
        if info.arity != len(atom.args):
            raise ArityMismatch(info.name, info.arity, len(atom.args))
        for arg in atom.args:
            if isinstance(arg, Const):
                arg_info = registry.info(arg.symbol)
                if arg_info.kind != CONSTANT:
                    raise UnknownSymbol(
                        f"{arg_info.name!r} used as constant but declared {arg_info.kind}"
                    )


def require_closed(f: Formula) -> None:
    fv = free_variables(f)
    if fv:
        raise FreeVariableError(f"free variables {sorted(fv)} in sentence-level formula")


# ---------------------------------------------------------------------------
# Logic programs


@dataclass(frozen=True)
class LogicProgram:
    registry: SymbolRegistry
    premises: tuple[Formula, ...]
    query: Formula
    semantics_mode: str = OPEN_WORLD

    def validate(self) -> "LogicProgram":
        for premise in self.premises:
            type_check(premise, self.registry)
            require_closed(premise)
        type_check(self.query, self.registry)
        require_closed(self.query)
        if self.semantics_mode == CLOSED_WORLD:
            for premise in self.premises:
                if not is_horn(premise):
                    raise NotHorn(f"premise is not a fact or Horn implication: {premise!r}")
        return self

    def constants(self) -> list[str]:
        seen: dict[str, None] = {}
        for f in (*self.premises, self.query):
            for atom in walk_atoms(f):
                for arg in atom.args:
                    if isinstance(arg, Const):
                        seen.setdefault(arg.symbol)
        return list(seen)

    def predicates(self) -> list[str]:
        seen: dict[str, None] = {}
        for f in (*self.premises, self.query):
            for atom in walk_atoms(f):
                seen.setdefault(atom.pred)
        return list(seen)


def is_horn(premise: Formula) -> bool:
    """Fact (ground atom) or Horn implication with one positive consequent.

    Accepts any nesting of leading universal quantifiers around
    `body -> head` where the body is a conjunction of atoms.
    """
    f = premise
    while isinstance(f, ForAll):
        f = f.body
    if isinstance(f, Atom):
        return not free_variables(f)
    if isinstance(f, Implies):
        return _is_atom_conjunction(f.left) and isinstance(f.right, Atom)
    return False


def _is_atom_conjunction(f: Formula) -> bool:
    if isinstance(f, Atom):
        return True
    if isinstance(f, And):
        return _is_atom_conjunction(f.left) and _is_atom_conjunction(f.right)
    return False


def horn_parts(premise: Formula) -> tuple[list[Atom], Atom]:
    """Split a Horn premise into (body atoms, head atom); facts get empty body."""
    f = premise
    while isinstance(f, ForAll):
        f = f.body
    if isinstance(f, Atom):
        return [], f
    if isinstance(f, Implies) and isinstance(f.right, Atom):
        body: list[Atom] = []
        stack = [f.left]
        while stack:
            g = stack.pop()
            if isinstance(g, Atom):
                body.append(g)
            elif isinstance(g, And):
                stack.append(g.right)
                stack.append(g.left)
            else:
                raise NotHorn(f"non-atomic rule body: {g!r}")
        return body, f.right
    raise NotHorn(f"not a Horn premise: {premise!r}")
