"""Command-line interface.

Subcommands: generate, diversify, translate, solve, evaluate, sds, sweep,
compare, export-sft. Every subcommand accepts --seed, --config (flat
key=value file), and --out. Exit codes: 0 success, 1 usage error, 2 data
error, 3 remote-service error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .. import __version__
from ..diversify.pipeline import DiversifyConfig, diversify_problem
from ..diversify.resources import Resources
from ..errors import (
    ClientError,
    FormatError,
    HarnessError,
    OracleFailure,
    ResourceMissing,
    ScorerUnavailable,
    SymdriftError,
)
from ..metrics.records import TranslationRecord
from ..metrics.sds import compute_sds
from ..metrics.sweep import intensity_sweep, sweep_to_csv
from ..metrics.taxonomy import attribute_errors
from ..problem import DiversifiedProblem, Problem
from .client import HttpChatClient
from .config import (
    LLM,
    TranslatorConfig,
    llm_endpoint,
    read_config_file,
    synthetic_config_from,
    translator_config_from,
)
from .datasets import load_dataset, save_dataset
from .evaluate import (
    AUTO,
    evaluate_one,
    normalize_items,
    render_report_text,
    run_evaluation,
)
from .serialize import record_from_json, record_to_json
from .sft import export_sft_traces
from .synthetic import generate_synthetic
from .translators import make_translator

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_REMOTE = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symdrift",
        description="Induce, measure, and mitigate symbol drift in "
                    "language-to-logic translation.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--config", help="flat key=value config file")
        p.add_argument("--out", help="output path (file or run directory)")
        return p

    p = common(sub.add_parser("generate", help="emit synthetic rule-base problems"))
    p.add_argument("--n", type=int, help="number of problems")

    p = common(sub.add_parser("diversify", help="rewrite problems, logic-invariantly"))
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--theta", type=float, default=0.90)
    p.add_argument("--intensity", default="full",
                   help="'full', an absolute count, or a fraction like 0.5")
    p.add_argument("--scorer", default="fallback",
                   choices=("fallback", "vectors", "remote"))

    p = common(sub.add_parser("translate", help="translate problems to programs"))
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--translator", default="naive")
    p.add_argument("--mental", choices=("on", "off"), default="off")

    p = common(sub.add_parser("solve", help="run the solver over translated records"))
    p.add_argument("--records", required=True)
    p.add_argument("--problems", required=True)
    p.add_argument("--solver", default=AUTO)

    p = common(sub.add_parser("evaluate", help="full translate+solve+score run"))
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--translator", default="naive")
    p.add_argument("--mental", choices=("on", "off"), default="off")
    p.add_argument("--solver", default=AUTO)

    p = common(sub.add_parser("sds", help="symbol dispersion over saved records"))
    p.add_argument("--records", required=True)

    p = common(sub.add_parser("sweep", help="accuracy/SDS curve over intensity"))
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--translator", default="naive")
    p.add_argument("--mental", choices=("on", "off"), default="off")
    p.add_argument("--solver", default=AUTO)
    p.add_argument("--levels", default="0,0.25,0.5,0.75,1.0")

    p = common(sub.add_parser("compare", help="error attribution across two runs"))
    p.add_argument("--before", required=True)
    p.add_argument("--after", required=True)

    p = common(sub.add_parser("export-sft", help="successful traces as tuning data"))
    p.add_argument("--run", required=True)

    return parser


def _load_values(args) -> dict[str, str]:
    return read_config_file(args.config) if args.config else {}


def _translator_cfg(args, values: dict[str, str]) -> TranslatorConfig:
    merged = dict(values)
    if getattr(args, "translator", None):
        merged["translator.kind"] = args.translator
    if getattr(args, "mental", None):
        merged["translator.mental"] = args.mental
    return translator_config_from(merged)


def _make_translator(cfg: TranslatorConfig, resources: Resources):
    client = None
    if cfg.kind == LLM or cfg.oracle == "llm":
        endpoint, key = llm_endpoint()
        if not endpoint:
            raise ClientError("set SYMDRIFT_LLM_ENDPOINT to use a remote translator")
        client = HttpChatClient(endpoint, key)
    return make_translator(cfg, resources=resources, client=client)


def _resources(values: dict[str, str]) -> Resources:
    return Resources.load(
        synonyms_path=values.get("resources.synonyms"),
        paraphrases_path=values.get("resources.paraphrases"),
        derivations_path=values.get("resources.derivations"),
        vectors_path=values.get("resources.vectors"),
    )


def _require_out(args) -> Path:
    if not args.out:
        raise FormatError("--out is required for this subcommand")
    return Path(args.out)


def _cmd_generate(args) -> int:
    values = _load_values(args)
    cfg = synthetic_config_from(values, seed=args.seed)
    if args.n:
        cfg = synthetic_config_from({**values, "synthetic.n_problems": str(args.n)},
                                    seed=args.seed)
    problems = generate_synthetic(cfg)
    save_dataset(_require_out(args), problems)
    print(f"wrote {len(problems)} problems")
    return EXIT_OK


def _cmd_diversify(args) -> int:
    values = _load_values(args)
    resources = _resources(values)
    items = load_dataset(args.input)
    out = []
    for item in items:
        if isinstance(item, DiversifiedProblem):
            raise FormatError(f"{item.base_id} is already diversified")
        if args.intensity == "full":
            intensity = None
        else:
            value = float(args.intensity)
            intensity = int(value) if value >= 1 or value == 0 else round(
                value * len(item.sentences)
            )
        out.append(diversify_problem(item, DiversifyConfig(
            theta=args.theta, intensity=intensity, scorer=args.scorer,
            seed=args.seed, resources=resources,
        )))
    save_dataset(_require_out(args), out)
    changed = sum(1 for d in out if d.intensity > 0)
    print(f"diversified {len(out)} problems ({changed} with rewrites)")
    return EXIT_OK


def _cmd_translate(args) -> int:
    values = _load_values(args)
    resources = _resources(values)
    cfg = _translator_cfg(args, values)
    translator = _make_translator(cfg, resources)
    items = normalize_items(load_dataset(args.input), resources)
    records = []
    for item in items:
        output = translator.translate(item)
        records.append(TranslationRecord(
            problem_id=item.problem.id,
            gold=item.problem.gold_answer,
            raw_output=output.raw_output,
            program=output.program,
            parse_error=output.parse_error,
            tokens_in=output.tokens_in,
            tokens_out=output.tokens_out,
            span_symbols=output.span_symbols,
            mental_trace=output.trace,
            table_text=output.table.render_text() if output.table else "",
        ))
    with _require_out(args).open("w", encoding="utf-8") as handle:
        for record in records:
            handle.write(json.dumps(record_to_json(record), sort_keys=True) + "\n")
    parsed = sum(1 for r in records if r.program is not None)
    print(f"translated {len(records)} problems ({parsed} parsed)")
    return EXIT_OK


class _ReplayTranslator:
    """Feeds a saved record back through the solve/classify path."""

    def __init__(self, record: TranslationRecord):
        self._record = record

    def translate(self, _item):
        from .translators import TranslatorOutput

        r = self._record
        return TranslatorOutput(
            raw_output=r.raw_output, program=r.program,
            parse_error=r.parse_error, span_symbols=r.span_symbols,
            tokens_in=r.tokens_in, tokens_out=r.tokens_out,
        )


def _cmd_solve(args) -> int:
    values = _load_values(args)
    resources = _resources(values)
    items = {i.problem.id: i for i in normalize_items(load_dataset(args.problems), resources)}
    out_path = _require_out(args)
    rows = []
    solved = 0
    for lineno, line in enumerate(Path(args.records).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        record = record_from_json(json.loads(line))
        item = items.get(record.problem_id)
        if item is None:
            raise FormatError(f"no problem with id {record.problem_id!r}", line=lineno)
        solved_record = evaluate_one(item, _ReplayTranslator(record), args.solver)
        solved += solved_record.verdict is not None
        rows.append(json.dumps(record_to_json(solved_record), sort_keys=True))
    out_path.write_text("\n".join(rows) + "\n", encoding="utf-8")
    print(f"solved {solved} of {len(rows)} records")
    return EXIT_OK


def _cmd_evaluate(args) -> int:
    values = _load_values(args)
    resources = _resources(values)
    cfg = _translator_cfg(args, values)
    translator = _make_translator(cfg, resources)
    dataset = load_dataset(args.input)
    report = run_evaluation(dataset, translator, cfg, args.solver,
                            out_dir=_require_out(args),
                            extra_config={"seed": str(args.seed)},
                            resources=resources)
    print(render_report_text(report))
    return EXIT_OK


def _cmd_sds(args) -> int:
    records = []
    for line in Path(args.records).read_text(encoding="utf-8").splitlines():
        if line.strip():
            records.append(record_from_json(json.loads(line)))
    result = compute_sds(records)
    payload = {
        "sds": result.value,
        "concepts": result.concepts,
        "drifted_concepts": result.drifted_concepts,
        "dropped_concepts": result.dropped_concepts,
    }
    text = json.dumps(payload, indent=2, sort_keys=True)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    print(text)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    values = _load_values(args)
    resources = _resources(values)
    cfg = _translator_cfg(args, values)
    translator = _make_translator(cfg, resources)
    dataset = [p for p in load_dataset(args.input) if isinstance(p, Problem)]
    levels = [float(x) if "." in x else int(x) for x in args.levels.split(",")]
    points = intensity_sweep(dataset, translator, cfg, args.solver, levels,
                             seed=args.seed, resources=resources)
    csv_text = sweep_to_csv(points)
    if args.out:
        Path(args.out).write_text(csv_text, encoding="utf-8")
    print(csv_text, end="")
    return EXIT_OK


def _read_run_records(run_dir: str) -> list[TranslationRecord]:
    path = Path(run_dir) / "records.jsonl"
    if not path.exists():
        raise FormatError(f"no records.jsonl under {run_dir}")
    return [record_from_json(json.loads(line))
            for line in path.read_text(encoding="utf-8").splitlines() if line.strip()]


def _cmd_compare(args) -> int:
    counts = attribute_errors(_read_run_records(args.before), _read_run_records(args.after))
    text = json.dumps(counts, indent=2, sort_keys=True)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    print(text)
    return EXIT_OK


def _cmd_export_sft(args) -> int:
    count = export_sft_traces(args.run, _require_out(args))
    print(f"exported {count} training records")
    return EXIT_OK


_COMMANDS = {
    "generate": _cmd_generate,
    "diversify": _cmd_diversify,
    "translate": _cmd_translate,
    "solve": _cmd_solve,
    "evaluate": _cmd_evaluate,
    "sds": _cmd_sds,
    "sweep": _cmd_sweep,
    "compare": _cmd_compare,
    "export-sft": _cmd_export_sft,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse reports usage problems with status 2; remap per contract,
        # keeping 0 for --help/--version.
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except (ClientError, OracleFailure, ScorerUnavailable) as exc:
        print(f"remote service error: {exc}", file=sys.stderr)
        return EXIT_REMOTE
    except (FormatError, ResourceMissing, HarnessError, SymdriftError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
