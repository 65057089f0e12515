"""Record (de)serialization for records.jsonl round trips."""

from __future__ import annotations

from ..fol.terms import LogicProgram
from ..metrics.records import TranslationRecord
from ..mental.translate import TraceEvent
from ..solver.csp import Constraint, CSPSpec
from ..solver.verdict import Verdict
from .datasets import program_from_json, program_to_json


def csp_to_json(spec: CSPSpec) -> dict:
    return {
        "objects": list(spec.objects),
        "constraints": [[c.kind, *c.args] for c in spec.constraints],
        "all_different": spec.all_different,
    }


def csp_from_json(data: dict) -> CSPSpec:
    constraints = [
        Constraint(kind, tuple(args)) for kind, *args in data.get("constraints", [])
    ]
    return CSPSpec(list(data["objects"]), constraints, data.get("all_different", True))


def record_to_json(r: TranslationRecord) -> dict:
    program = None
    if isinstance(r.program, LogicProgram):
        program = {"logic": program_to_json(r.program)}
    elif isinstance(r.program, CSPSpec):
        program = {"csp": csp_to_json(r.program)}
    verdict = None
    if r.verdict is not None:
        verdict = {
            "value": r.verdict.value,
            "option_index": r.verdict.option_index,
            "steps": r.verdict.steps,
            "limit_hit": r.verdict.limit_hit,
        }
    return {
        "problem_id": r.problem_id,
        "gold": r.gold,
        "raw_output": r.raw_output,
        "program": program,
        "parse_error": r.parse_error,
        "verdict": verdict,
        "exec_error": r.exec_error,
        "predicted": r.predicted,
        "alignment": {c: sorted(symbols) for c, symbols in sorted(r.alignment.items())},
        "span_symbols": [
            [unit, start, end, symbol]
            for (unit, start, end), symbol in sorted(r.span_symbols.items())
        ],
        "alignment_misses": list(r.alignment_misses),
        "tokens_in": r.tokens_in,
        "tokens_out": r.tokens_out,
        "trace": [
            [e.expression, e.decision, e.symbol, e.program_revisions]
            for e in r.mental_trace
        ],
        "table": r.table_text,
    }


def record_from_json(data: dict) -> TranslationRecord:
    program = None
    if data.get("program"):
        if "logic" in data["program"]:
            program = program_from_json(data["program"]["logic"])
        else:
            program = csp_from_json(data["program"]["csp"])
    verdict = None
    if data.get("verdict"):
        v = data["verdict"]
        verdict = Verdict(v["value"], v.get("option_index"), v.get("steps", 0),
                          v.get("limit_hit", False))
    record = TranslationRecord(
        problem_id=data["problem_id"],
        gold=data["gold"],
        raw_output=data.get("raw_output", ""),
        program=program,
        parse_error=data.get("parse_error"),
        tokens_in=data.get("tokens_in", 0),
        tokens_out=data.get("tokens_out", 0),
        table_text=data.get("table", ""),
    )
    record.verdict = verdict
    record.exec_error = data.get("exec_error")
    record.predicted = data.get("predicted")
    record.alignment = {
        c: set(symbols) for c, symbols in data.get("alignment", {}).items()
    }
    record.span_symbols = {
        (unit, start, end): symbol
        for unit, start, end, symbol in data.get("span_symbols", [])
    }
    record.alignment_misses = list(data.get("alignment_misses", []))
    record.mental_trace = tuple(
        TraceEvent(expr, decision, symbol, revisions)
        for expr, decision, symbol, revisions in data.get("trace", [])
    )
    return record
