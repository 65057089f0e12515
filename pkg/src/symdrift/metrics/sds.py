"""Symbol dispersion: how many distinct symbols each concept scattered into.

The score averages (distinct symbols - 1) over concepts, pooled across the
whole record set; zero means every concept kept a single symbol. Concepts the
translator dropped entirely (no symbol at all) score zero drift but are
counted separately, since the raw formula would go negative on them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..errors import AlignmentIncomplete, EmptyConceptSet
from ..problem import DiversifiedProblem
from .records import TranslationRecord

PROVENANCE_ALIGNER = "provenance"
LLM_ALIGNER = "llm"


@dataclass(frozen=True)
class SdsResult:
    value: float
    concepts: int
    drifted_concepts: int
    dropped_concepts: int
    per_problem: dict[str, float] = field(default_factory=dict)

    def __float__(self) -> float:
        return self.value


def compute_sds(records: list[TranslationRecord]) -> SdsResult:
    total = 0
    drift_sum = 0
    drifted = 0
    dropped = 0
    per_problem: dict[str, float] = {}
    for record in records:
        problem_drift = 0
        problem_concepts = 0
        for symbols in record.alignment.values():
            total += 1
            problem_concepts += 1
            if not symbols:
                dropped += 1
                continue
            drift = len(symbols) - 1
            drift_sum += drift
            problem_drift += drift
            if drift > 0:
                drifted += 1
        if problem_concepts:
            per_problem[record.problem_id] = problem_drift / problem_concepts
    if total == 0:
        raise EmptyConceptSet("no aligned concepts in the record set")
    return SdsResult(
        value=drift_sum / total,
        concepts=total,
        drifted_concepts=drifted,
        dropped_concepts=dropped,
        per_problem=per_problem,
    )


def align_symbols(record: TranslationRecord, provenance: DiversifiedProblem | dict,
                  aligner: str = PROVENANCE_ALIGNER, client=None,
                  prompt_template: str | None = None) -> dict[str, set[str]]:
    """Fill `record.alignment` from the expression ledger (provenance mode) or
    a model-proposed mapping (llm mode, recorded on the record for audit)."""
    if record.program is None:
        raise AlignmentIncomplete("nothing to align: record has no program")
    prov_map = provenance.provenance if isinstance(provenance, DiversifiedProblem) else provenance
    if aligner == PROVENANCE_ALIGNER:
        alignment: dict[str, set[str]] = {}
        for concept_id, entries in prov_map.items():
            symbols: set[str] = set()
            for entry in entries:
                key = (entry.unit, entry.char_start, entry.char_end)
                symbol = record.span_symbols.get(key)
                if symbol is None:
                    record.alignment_misses.append(
                        f"{concept_id}:{entry.unit}:{entry.surface}"
                    )
                else:
                    symbols.add(symbol)
            alignment[concept_id] = symbols
        record.alignment = alignment
        return alignment
    if aligner == LLM_ALIGNER:
        if client is None or prompt_template is None:
            raise AlignmentIncomplete("llm aligner needs a client and a prompt template")
        concepts = sorted(prov_map)
        surfaces = {c: sorted({e.surface for e in prov_map[c]}) for c in concepts}
        prompt = prompt_template.format(
            concepts=json.dumps(surfaces), output=record.raw_output
        )
        reply = client.complete(prompt)
        record.raw_output += f"\n# aligner audit\n{reply.text}"
        try:
            mapping = json.loads(reply.text)
            alignment = {c: set(map(str, mapping.get(c, []))) for c in concepts}
        except (ValueError, AttributeError) as exc:
            raise AlignmentIncomplete(f"unusable aligner reply: {exc}") from exc
        record.alignment = alignment
        return alignment
    raise AlignmentIncomplete(f"unknown aligner {aligner!r}")
