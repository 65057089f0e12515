"""Per-problem translation records: the unit metrics aggregate over."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..fol.terms import LogicProgram
from ..solver.csp import CSPSpec
from ..solver.verdict import Verdict

CORRECT = "Correct"
PARSE_ERROR = "ParseError"
EXEC_ERROR = "ExecError"
LOGIC_ERROR = "LogicError"

ERROR_CLASSES = (CORRECT, PARSE_ERROR, EXEC_ERROR, LOGIC_ERROR)

SpanKey = tuple[int, int, int]  # (unit, char start, char end)


@dataclass
class TranslationRecord:
    problem_id: str
    gold: str | int
    raw_output: str = ""
    program: LogicProgram | CSPSpec | None = None
    parse_error: str | None = None
    verdict: Verdict | None = None
    exec_error: str | None = None
    predicted: str | int | None = None
    # concept id -> the set of symbol expressions its surfaces mapped to
    alignment: dict[str, set[str]] = field(default_factory=dict)
    # expression ledger: rewritten-text span -> symbol expression
    span_symbols: dict[SpanKey, str] = field(default_factory=dict)
    alignment_misses: list[str] = field(default_factory=list)
    tokens_in: int = 0
    tokens_out: int = 0
    mental_trace: tuple = ()
    table_text: str = ""

    def __post_init__(self) -> None:
        if (self.program is None) == (self.parse_error is None):
            raise ValueError("exactly one of program / parse_error must be set")
        if self.predicted is not None and self.verdict is None:
            raise ValueError("a prediction requires a verdict")

    def is_consistent(self) -> bool:
        """Every aligned concept maps to at most one symbol expression."""
        return all(len(symbols) <= 1 for symbols in self.alignment.values())

    def has_drift(self) -> bool:
        return any(len(symbols) > 1 for symbols in self.alignment.values())
