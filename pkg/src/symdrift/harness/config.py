"""Run configuration: translator settings, synthetic-generator settings, and
the flat key=value config-file format used by every CLI subcommand."""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from ..errors import FormatError

GOLD = "gold"
NAIVE = "naive"
SPLIT_ADVERSARY = "split-adversary"
LLM = "llm"

TRANSLATOR_KINDS = (GOLD, NAIVE, SPLIT_ADVERSARY, LLM)

ORACLE_LEXICON = "lexicon"
ORACLE_LLM = "llm"

ENDPOINT_ENV = "SYMDRIFT_LLM_ENDPOINT"
CREDENTIAL_ENV = "SYMDRIFT_LLM_API_KEY"
EMBED_ENDPOINT_ENV = "SYMDRIFT_EMBED_ENDPOINT"


@dataclass(frozen=True)
class TranslatorConfig:
    kind: str = NAIVE
    prompt_dir: str | None = None
    shots: int = 5
    temperature: float = 0.2
    mental: bool = False
    oracle: str = ORACLE_LEXICON

    def __post_init__(self) -> None:
        if self.kind not in TRANSLATOR_KINDS:
            raise ValueError(f"unknown translator kind {self.kind!r}")
        if self.shots < 0:
            raise ValueError("shots must be >= 0")
        if not (0.0 <= self.temperature <= 2.0):
            raise ValueError("temperature must be in [0, 2]")
        if self.oracle not in (ORACLE_LEXICON, ORACLE_LLM):
            raise ValueError(f"unknown oracle {self.oracle!r}")

    def requires_provenance(self) -> bool:
        return self.kind in (GOLD, SPLIT_ADVERSARY)

    def snapshot(self) -> dict[str, str]:
        return {
            "translator.kind": self.kind,
            "translator.shots": str(self.shots),
            "translator.temperature": repr(self.temperature),
            "translator.mental": "on" if self.mental else "off",
            "translator.oracle": self.oracle,
            "translator.prompt_dir": self.prompt_dir or "",
        }


@dataclass(frozen=True)
class SyntheticConfig:
    n_problems: int = 50
    depth: int = 5  # problems cycle through depths 1..depth
    n_constants: int = 3
    n_predicates: int = 8
    rule_branching: int = 2
    negation_rate: float = 0.25
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_problems <= 0 or self.n_constants <= 0 or self.n_predicates <= 0:
            raise ValueError("all counts must be positive")
        if not (1 <= self.depth <= 5):
            raise ValueError("depth must be within 1..5")
        if self.rule_branching < 0:
            raise ValueError("rule_branching must be >= 0")
        if not (0.0 <= self.negation_rate <= 1.0):
            raise ValueError("negation_rate must be a fraction")

    def snapshot(self) -> dict[str, str]:
        return {
            "synthetic.n_problems": str(self.n_problems),
            "synthetic.depth": str(self.depth),
            "synthetic.n_constants": str(self.n_constants),
            "synthetic.n_predicates": str(self.n_predicates),
            "synthetic.rule_branching": str(self.rule_branching),
            "synthetic.negation_rate": repr(self.negation_rate),
            "synthetic.seed": str(self.seed),
        }


def read_config_file(path: str | Path) -> dict[str, str]:
    """Flat `key = value` lines; `#` starts a comment."""
    p = Path(path)
    if not p.exists():
        raise FormatError(f"config file not found: {p}")
    out: dict[str, str] = {}
    for lineno, raw in enumerate(p.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise FormatError(f"expected key = value, got {line!r}", line=lineno)
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def write_config_file(path: str | Path, values: dict[str, str]) -> None:
    lines = [f"{key} = {values[key]}" for key in sorted(values)]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def translator_config_from(values: dict[str, str]) -> TranslatorConfig:
    return TranslatorConfig(
        kind=values.get("translator.kind", NAIVE),
        prompt_dir=values.get("translator.prompt_dir") or None,
        shots=int(values.get("translator.shots", "5")),
        temperature=float(values.get("translator.temperature", "0.2")),
        mental=values.get("translator.mental", "off") == "on",
        oracle=values.get("translator.oracle", ORACLE_LEXICON),
    )


def synthetic_config_from(values: dict[str, str], seed: int | None = None) -> SyntheticConfig:
    return SyntheticConfig(
        n_problems=int(values.get("synthetic.n_problems", "50")),
        depth=int(values.get("synthetic.depth", "5")),
        n_constants=int(values.get("synthetic.n_constants", "3")),
        n_predicates=int(values.get("synthetic.n_predicates", "8")),
        rule_branching=int(values.get("synthetic.rule_branching", "2")),
        negation_rate=float(values.get("synthetic.negation_rate", "0.25")),
        seed=seed if seed is not None else int(values.get("synthetic.seed", "0")),
    )


def llm_endpoint() -> tuple[str | None, str | None]:
    return os.environ.get(ENDPOINT_ENV), os.environ.get(CREDENTIAL_ENV)
