"""Export successful table-guided translations as instruction-tuning data.

One JSONL training record per correctly solved problem: the instruction is
the problem text, the response is the rendered expression table followed by
the final program block.
"""

from __future__ import annotations

import json
from pathlib import Path

from ..errors import NoTraces


def export_sft_traces(run_dir: str | Path, out_path: str | Path) -> int:
    """Returns the number of exported records."""
    traces_file = Path(run_dir) / "traces.jsonl"
    if not traces_file.exists():
        raise NoTraces(f"no traces.jsonl under {run_dir}")
    rows = []
    for line in traces_file.read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        data = json.loads(line)
        if not data.get("correct"):
            continue
        response = data["table"] + "\n\n" + data["program"] if data["table"] else data["program"]
        rows.append(json.dumps({
            "instruction": data["instruction"],
            "response": response,
        }, sort_keys=True))
    if not rows:
        raise NoTraces(f"no successful table-guided translations in {run_dir}")
    Path(out_path).write_text("\n".join(rows) + "\n", encoding="utf-8")
    return len(rows)
