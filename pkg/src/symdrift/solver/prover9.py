"""Prover9 input emission and a subprocess adapter around an external binary.

The emitter produces `formulas(assumptions)...end_of_list` /
`formulas(goals)...end_of_list` sections. The adapter writes that text to a
temp file, invokes the binary on it, and reads the proof marker from stdout;
a second run with the negated goal separates Disproved from Unknown.
"""

from __future__ import annotations

import re
import subprocess
import tempfile
from pathlib import Path

from ..errors import ExternalUnavailable
from ..fol.render import PROVER9, render_formula
from ..fol.terms import LogicProgram, Not, OPEN_WORLD
from .verdict import DISPROVED, PROVED, UNKNOWN, Verdict

PROOF_MARKER = "THEOREM PROVED"


def emit_prover9(p: LogicProgram) -> str:
    if p.semantics_mode != OPEN_WORLD:
        raise ValueError("prover input requires an open-world program")
    lines = ["formulas(assumptions)."]
    for premise in p.premises:
        lines.append(render_formula(premise, p.registry, PROVER9))
    lines.append("end_of_list.")
    lines.append("")
    lines.append("formulas(goals).")
    lines.append(render_formula(p.query, p.registry, PROVER9))
    lines.append("end_of_list.")
    return "\n".join(lines) + "\n"


def normalize_statement(line: str) -> str:
    """Map one emitted statement back into the canonical dialect."""
    return re.sub(r"(?<!<)-(?!>)", "~", line).strip()


def _invoke(binary_path: str, text: str, timeout_s: float) -> tuple[bool, bool]:
    """Returns (proved, timed_out)."""
    with tempfile.NamedTemporaryFile("w", suffix=".in", delete=False) as handle:
        handle.write(text)
        path = handle.name
    try:
        proc = subprocess.run(
            [binary_path, "-f", path],
            capture_output=True,
            text=True,
            timeout=timeout_s,
        )
    except FileNotFoundError as exc:
        raise ExternalUnavailable(f"prover binary not found: {binary_path}") from exc
    except subprocess.TimeoutExpired:
        return False, True
    finally:
        Path(path).unlink(missing_ok=True)
    return PROOF_MARKER in proc.stdout, False


def run_external_prover(p: LogicProgram, binary_path: str, timeout_s: float = 10.0) -> Verdict:
    if not binary_path or not Path(binary_path).exists():
        raise ExternalUnavailable(f"prover binary not found: {binary_path}")
    proved, timed_out = _invoke(binary_path, emit_prover9(p), timeout_s)
    if proved:
        return Verdict(PROVED, steps=1)
    if timed_out:
        return Verdict(UNKNOWN, steps=1, limit_hit=True)
    negated = LogicProgram(p.registry, p.premises, Not(p.query), p.semantics_mode)
    disproved, timed_out = _invoke(binary_path, emit_prover9(negated), timeout_s)
    if disproved:
        return Verdict(DISPROVED, steps=2)
    return Verdict(UNKNOWN, steps=2, limit_hit=timed_out)
