"""Finite-domain ordering puzzles: objects assigned to distinct positions.

Backtracking search with forward checking enumerates every solution; an
option is chosen only when it holds in all of them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import AmbiguousOptions, CSPSpecError, NoEntailedOption, Unsatisfiable
from .verdict import OPTION, Verdict

LEFT_OF = "LeftOf"
RIGHT_OF = "RightOf"
AT_POSITION = "AtPosition"
ADJACENT = "Adjacent"
NOT_AT_POSITION = "NotAtPosition"

_KINDS = {LEFT_OF, RIGHT_OF, AT_POSITION, ADJACENT, NOT_AT_POSITION}

MAX_OBJECTS = 8


@dataclass(frozen=True)
class Constraint:
    kind: str
    args: tuple  # (obj, obj) for relational kinds, (obj, position) for positional


@dataclass(frozen=True)
class Option:
    """A candidate answer: the named object sits at the named position."""
    obj: str
    position: int


@dataclass
class CSPSpec:
    objects: list[str]
    constraints: list[Constraint] = field(default_factory=list)
    all_different: bool = True

    @property
    def positions(self) -> range:
        return range(1, len(self.objects) + 1)

    def validate(self) -> "CSPSpec":
        if not self.objects:
            raise CSPSpecError("no objects declared")
        if len(self.objects) > MAX_OBJECTS:
            raise CSPSpecError(f"{len(self.objects)} objects exceeds the {MAX_OBJECTS} limit")
        if len(set(self.objects)) != len(self.objects):
            raise CSPSpecError("duplicate object names")
        for c in self.constraints:
            if c.kind not in _KINDS:
                raise CSPSpecError(f"unknown constraint kind {c.kind!r}")
            if c.kind in (LEFT_OF, RIGHT_OF, ADJACENT):
                a, b = c.args
                for obj in (a, b):
                    if obj not in self.objects:
                        raise CSPSpecError(f"constraint references undeclared object {obj!r}")
            else:
                obj, pos = c.args
                if obj not in self.objects:
                    raise CSPSpecError(f"constraint references undeclared object {obj!r}")
                if not isinstance(pos, int) or pos not in self.positions:
                    raise CSPSpecError(f"position {pos!r} outside 1..{len(self.objects)}")
        return self


def _holds(c: Constraint, pos: dict[str, int]) -> bool | None:
    """Evaluate one constraint; None while an endpoint is unassigned."""
    if c.kind in (LEFT_OF, RIGHT_OF, ADJACENT):
        a, b = c.args
        if a not in pos or b not in pos:
            return None
        if c.kind == LEFT_OF:
            return pos[a] < pos[b]
        if c.kind == RIGHT_OF:
            return pos[a] > pos[b]
        return abs(pos[a] - pos[b]) == 1
    obj, target = c.args
    if obj not in pos:
        return None
    if c.kind == AT_POSITION:
        return pos[obj] == target
    return pos[obj] != target


def iter_solutions(spec: CSPSpec):
    """Yield every complete assignment consistent with the constraints."""
    spec.validate()
    n = len(spec.objects)
    assignment: dict[str, int] = {}
    domains = {obj: set(spec.positions) for obj in spec.objects}

    # Unary constraints prune domains up front.
    for c in spec.constraints:
        if c.kind == AT_POSITION:
            domains[c.args[0]] &= {c.args[1]}
        elif c.kind == NOT_AT_POSITION:
            domains[c.args[0]] -= {c.args[1]}

    order = list(spec.objects)

    def consistent() -> bool:
        return all(_holds(c, assignment) is not False for c in spec.constraints)

    def forward_ok(idx: int) -> bool:
        # Every unassigned object must keep at least one feasible position.
        used = set(assignment.values())
        for obj in order[idx:]:
            if not (domains[obj] - used):
                return False
        return True

    def backtrack(idx: int):
        if idx == n:
            yield dict(assignment)
            return
        obj = order[idx]
        used = set(assignment.values())
        for position in sorted(domains[obj] - used):
            assignment[obj] = position
            if consistent() and forward_ok(idx + 1):
                yield from backtrack(idx + 1)
            del assignment[obj]

    yield from backtrack(0)


def solve_csp(spec: CSPSpec, options: list[Option]) -> Verdict:
    """Return the single option that holds in every solution.

    Raises Unsatisfiable when no assignment satisfies the constraints,
    AmbiguousOptions when several options are entailed, and NoEntailedOption
    when none is.
    """
    solutions = list(iter_solutions(spec))
    if not solutions:
        raise Unsatisfiable("constraints admit no assignment")
    for opt in options:
        if opt.obj not in spec.objects:
            raise CSPSpecError(f"option references undeclared object {opt.obj!r}")
        if opt.position not in spec.positions:
            raise CSPSpecError(f"option position {opt.position} outside 1..{len(spec.objects)}")
    entailed = [
        i for i, opt in enumerate(options)
        if all(sol[opt.obj] == opt.position for sol in solutions)
    ]
    if len(entailed) > 1:
        raise AmbiguousOptions(f"options {entailed} all hold in every solution")
    if not entailed:
        raise NoEntailedOption("no option holds in every solution")
    return Verdict(OPTION, option_index=entailed[0], steps=len(solutions))
