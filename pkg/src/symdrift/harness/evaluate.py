"""Run orchestration: translate, solve, classify, aggregate, persist.

A run directory holds four artifacts: `config` (flat key=value snapshot),
`records.jsonl`, `report` (canonical JSON), and `traces.jsonl`. Everything
written there is byte-reproducible for deterministic translators; wall-clock
time is reported on stderr only, so reruns diff clean.
"""

from __future__ import annotations

import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from ..diversify.pipeline import DiversifyConfig, diversify_problem
from ..diversify.resources import Resources
from ..errors import (
    AlignmentIncomplete,
    EmptyConceptSet,
    EmptyDataset,
    FolError,
    MentalError,
    MissingGold,
    SolverError,
    SolverMismatch,
)
from ..fol.terms import CLOSED_WORLD, LogicProgram, OPEN_WORLD
from ..metrics.records import TranslationRecord
from ..metrics.sds import SdsResult, align_symbols, compute_sds
from ..metrics.taxonomy import accuracy, error_histogram
from ..problem import DiversifiedProblem, Problem
from ..solver.chaining import forward_chain_cwa
from ..solver.csp import CSPSpec, solve_csp
from ..solver.enumeration import enumerate_models
from ..solver.resolution import prove_resolution
from ..solver.verdict import Verdict
from .config import TranslatorConfig
from .serialize import record_to_json
from .translators import TranslatorOutput

CWA = "cwa"
RESOLUTION = "resolution"
CSP = "csp"
ENUMERATE = "enumerate"
AUTO = "auto"

# Dataset-to-engine pairings; the first entry is the `auto` choice.
ALLOWED_SOLVERS: dict[str, tuple[str, ...]] = {
    "proofwriter": (CWA, RESOLUTION, ENUMERATE),
    "prontoqa": (CWA,),
    "folio": (RESOLUTION, ENUMERATE),
    "proverqa": (RESOLUTION, ENUMERATE),
    "deduction": (CSP,),
}

BINARY_TASKS = ("proofwriter", "prontoqa")


@dataclass
class RunReport:
    run_id: str
    config: dict[str, str]
    records: list[TranslationRecord]
    accuracy: float
    sds: SdsResult | None
    histogram: dict[str, int]
    tokens_in: int
    tokens_out: int
    wall_clock_s: float


def solver_for(task_kind: str, solver: str) -> str:
    allowed = ALLOWED_SOLVERS.get(task_kind)
    if allowed is None:
        raise SolverMismatch(f"unknown task kind {task_kind!r}")
    if solver == AUTO:
        return allowed[0]
    if solver not in allowed:
        raise SolverMismatch(
            f"solver {solver!r} is not paired with {task_kind!r} (allowed: {allowed})"
        )
    return solver


def _solve(output: TranslatorOutput, problem: Problem, solver: str) -> Verdict:
    if solver == CSP:
        if not isinstance(output.program, CSPSpec):
            raise SolverMismatch("constraint solving needs a constraint spec")
        return solve_csp(output.program, output.options)
    program = output.program
    assert isinstance(program, LogicProgram)
    mode = CLOSED_WORLD if solver == CWA else OPEN_WORLD
    program = LogicProgram(program.registry, program.premises, program.query, mode).validate()
    if solver == CWA:
        return forward_chain_cwa(program)
    if solver == RESOLUTION:
        return prove_resolution(program)
    if solver == ENUMERATE:
        return enumerate_models(program)
    raise SolverMismatch(f"unknown solver {solver!r}")


def _predicted_label(verdict: Verdict, task_kind: str, solver: str) -> str | int:
    label = verdict.label()
    if solver == RESOLUTION and task_kind in BINARY_TASKS and label == "unknown":
        # Binary rule-base tasks read failure-to-prove as false.
        return "false"
    return label


def normalize_items(items: list[Problem | DiversifiedProblem],
                    resources: Resources | None = None) -> list[DiversifiedProblem]:
    """Wrap plain problems as zero-intensity diversifications so provenance
    (and therefore alignment) exists for every record."""
    out = []
    for item in items:
        if isinstance(item, DiversifiedProblem):
            out.append(item)
        else:
            out.append(diversify_problem(
                item, DiversifyConfig(intensity=0, resources=resources)
            ))
    return out


def evaluate_one(item: DiversifiedProblem, translator, solver: str) -> TranslationRecord:
    problem = item.problem
    engine = solver_for(problem.task_kind, solver)
    try:
        output = translator.translate(item)
    except (MentalError, MissingGold, FolError) as exc:
        output = TranslatorOutput(raw_output="", program=None, parse_error=str(exc))
    record = TranslationRecord(
        problem_id=problem.id,
        gold=problem.gold_answer,
        raw_output=output.raw_output,
        program=output.program,
        parse_error=output.parse_error,
        tokens_in=output.tokens_in,
        tokens_out=output.tokens_out,
        span_symbols=output.span_symbols,
        mental_trace=output.trace,
        table_text=output.table.render_text() if output.table else "",
    )
    if record.program is not None:
        try:
            verdict = _solve(output, problem, engine)
            record.verdict = verdict
            record.predicted = _predicted_label(verdict, problem.task_kind, engine)
        except (SolverError, FolError, SolverMismatch) as exc:
            record.exec_error = f"{type(exc).__name__}: {exc}"
        try:
            align_symbols(record, item, aligner="provenance")
        except AlignmentIncomplete:
            pass  # alignment stays empty; dispersion simply sees no concepts
    return record


def run_evaluation(dataset: list[Problem | DiversifiedProblem], translator,
                   translator_cfg: TranslatorConfig, solver: str,
                   out_dir: str | Path | None = None,
                   extra_config: dict[str, str] | None = None,
                   resources: Resources | None = None,
                   workers: int = 1) -> RunReport:
    if not dataset:
        raise EmptyDataset("no problems to evaluate")
    started = time.monotonic()
    items = normalize_items(dataset, resources)
    # Fail fast on a disallowed pairing before any translation work happens.
    for item in items:
        solver_for(item.problem.task_kind, solver)

    if workers > 1:
        # Problems are independent; records come back in dataset order so
        # the artifacts stay byte-reproducible.
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(
                lambda item: evaluate_one(item, translator, solver), items
            ))
    else:
        records = [evaluate_one(item, translator, solver) for item in items]

    config = dict(extra_config or {})
    config.update(translator_cfg.snapshot())
    config["solver"] = solver
    config["dataset.size"] = str(len(items))
    run_id = hashlib.sha256(
        json.dumps(config, sort_keys=True).encode("utf-8")
    ).hexdigest()[:12]

    try:
        sds = compute_sds(records)
    except EmptyConceptSet:
        sds = None
    report = RunReport(
        run_id=run_id,
        config=config,
        records=records,
        accuracy=accuracy(records),
        sds=sds,
        histogram=error_histogram(records),
        tokens_in=sum(r.tokens_in for r in records),
        tokens_out=sum(r.tokens_out for r in records),
        wall_clock_s=time.monotonic() - started,
    )
    if out_dir is not None:
        persist_run(Path(out_dir), report, items)
        print(f"run {run_id}: {report.wall_clock_s:.2f}s wall clock", file=sys.stderr)
    return report


def report_to_json(report: RunReport) -> dict:
    """Canonical report payload; volatile fields (wall clock) excluded so
    identical runs serialize byte-identically."""
    sds_payload = None
    if report.sds is not None:
        sds_payload = {
            "value": report.sds.value,
            "concepts": report.sds.concepts,
            "drifted_concepts": report.sds.drifted_concepts,
            "dropped_concepts": report.sds.dropped_concepts,
            "per_problem": report.sds.per_problem,
        }
    return {
        "run_id": report.run_id,
        "config": report.config,
        "n_records": len(report.records),
        "accuracy": report.accuracy,
        "sds": sds_payload,
        "histogram": report.histogram,
        "tokens_in": report.tokens_in,
        "tokens_out": report.tokens_out,
    }


def render_report_text(report: RunReport) -> str:
    lines = [
        f"run        {report.run_id}",
        f"records    {len(report.records)}",
        f"accuracy   {report.accuracy:.4f}",
        f"sds        {report.sds.value:.4f}" if report.sds else "sds        n/a",
        "errors     " + "  ".join(f"{k}={v}" for k, v in sorted(report.histogram.items())),
        f"tokens     in={report.tokens_in} out={report.tokens_out}",
    ]
    return "\n".join(lines)


def persist_run(out_dir: Path, report: RunReport,
                items: list[DiversifiedProblem]) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    config_lines = [f"{key} = {report.config[key]}" for key in sorted(report.config)]
    (out_dir / "config").write_text("\n".join(config_lines) + "\n", encoding="utf-8")
    with (out_dir / "records.jsonl").open("w", encoding="utf-8") as handle:
        for record in report.records:
            handle.write(json.dumps(record_to_json(record), sort_keys=True) + "\n")
    (out_dir / "report").write_text(
        json.dumps(report_to_json(report), sort_keys=True, indent=2) + "\n",
        encoding="utf-8",
    )
    # Single-line twin of the report for line-oriented aggregation.
    (out_dir / "metrics.jsonl").write_text(
        json.dumps(report_to_json(report), sort_keys=True) + "\n", encoding="utf-8"
    )
    with (out_dir / "traces.jsonl").open("w", encoding="utf-8") as handle:
        by_id = {item.problem.id: item for item in items}
        for record in report.records:
            if not record.mental_trace:
                continue
            item = by_id[record.problem_id]
            trace_rows = [
                [event.expression, event.decision, event.symbol, event.program_revisions]
                for event in record.mental_trace
            ]
            program_block = ""
            if isinstance(record.program, LogicProgram):
                from .translators import _render_program_block

                program_block = _render_program_block(record.program)
            handle.write(json.dumps({
                "problem_id": record.problem_id,
                "instruction": item.problem.text(),
                "table": record.table_text,
                "trace": trace_rows,
                "program": program_block,
                "gold": record.gold,
                "correct": record.predicted == record.gold,
            }, sort_keys=True) + "\n")
