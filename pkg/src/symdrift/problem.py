"""Reasoning-problem data model shared by diversification, translation, metrics.

A problem is an ordered list of premise sentences plus a question; text units
are addressed by index, with `QUESTION_UNIT` (-1) naming the question.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .fol.terms import LogicProgram
from .textproc import Token, tokenize

QUESTION_UNIT = -1

TASK_FOLIO = "folio"
TASK_PROOFWRITER = "proofwriter"
TASK_PRONTOQA = "prontoqa"
TASK_PROVERQA = "proverqa"
TASK_DEDUCTION = "deduction"

TASK_KINDS = (TASK_FOLIO, TASK_PROOFWRITER, TASK_PRONTOQA, TASK_PROVERQA, TASK_DEDUCTION)


@dataclass(frozen=True)
class TextUnit:
    text: str
    tokens: tuple[Token, ...]

    @staticmethod
    def from_text(text: str) -> "TextUnit":
        return TextUnit(text, tokenize(text))


@dataclass(frozen=True)
class Problem:
    id: str
    sentences: tuple[TextUnit, ...]
    question: TextUnit
    gold_answer: str | int
    task_kind: str
    options: tuple[str, ...] | None = None
    gold_logic: LogicProgram | None = None
    # (unit, token start, token end exclusive) -> concept id
    gold_concepts: dict[tuple[int, int, int], str] | None = None

    def unit(self, index: int) -> TextUnit:
        return self.question if index == QUESTION_UNIT else self.sentences[index]

    def units(self) -> list[tuple[int, TextUnit]]:
        out: list[tuple[int, TextUnit]] = list(enumerate(self.sentences))
        out.append((QUESTION_UNIT, self.question))
        return out

    def with_units(self, sentences: tuple[TextUnit, ...], question: TextUnit) -> "Problem":
        return replace(self, sentences=sentences, question=question)

    def text(self) -> str:
        return " ".join([u.text for u in self.sentences] + [self.question.text])


@dataclass(frozen=True)
class ConceptOccurrence:
    unit: int
    tok_start: int
    tok_end: int  # exclusive
    char_start: int
    char_end: int
    surface: str


@dataclass(frozen=True)
class ConceptEntry:
    concept_id: str  # canonical lemma sequence joined by spaces
    lemmas: tuple[str, ...]
    pos: tuple[str, ...]  # tags aligned with lemmas, from the first occurrence
    occurrences: tuple[ConceptOccurrence, ...]

    @property
    def frequency(self) -> int:
        return len(self.occurrences)


@dataclass
class ConceptInventory:
    entries: dict[str, ConceptEntry] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return bool(self.entries)

    def in_unit(self, unit: int) -> list[tuple[str, ConceptOccurrence]]:
        out = []
        for cid, entry in self.entries.items():
            for occ in entry.occurrences:
                if occ.unit == unit:
                    out.append((cid, occ))
        out.sort(key=lambda pair: (pair[1].tok_start, -(pair[1].tok_end)))
        return out


WORD_LEVEL = "word"
PHRASE_LEVEL = "phrase"
SENTENCE_LEVEL = "sentence"

SOURCE_SYNONYM = "synonym-lexicon"
SOURCE_PARAPHRASE = "paraphrase-table"
SOURCE_REWRITE = "rewrite-rule"
SOURCE_LLM = "llm"


@dataclass(frozen=True)
class Variant:
    text: str
    level: str  # WORD_LEVEL | PHRASE_LEVEL | SENTENCE_LEVEL
    source: str
    unit: int | None = None  # sentence-level variants apply to one unit only


VariantSet = dict[str, list[Variant]]


@dataclass(frozen=True)
class ProvenanceEntry:
    """One concept occurrence in the rewritten text."""
    unit: int
    char_start: int
    char_end: int
    surface: str


@dataclass
class DiversifiedProblem:
    base_id: str
    problem: Problem  # rewritten sentences/question, retokenized
    provenance: dict[str, list[ProvenanceEntry]]
    intensity: int  # premise sentences whose text changed
    no_repeats: bool = False  # the source problem had nothing to diversify

    def validate(self, base: Problem) -> "DiversifiedProblem":
        if len(self.problem.sentences) != len(base.sentences):
            raise ValueError("sentence count changed during diversification")
        changed = sum(
            1 for ours, theirs in zip(self.problem.sentences, base.sentences)
            if ours.text != theirs.text
        )
        if changed != self.intensity:
            raise ValueError(f"intensity {self.intensity} != changed count {changed}")
        for cid, entries in self.provenance.items():
            for e in entries:
                text = self.problem.unit(e.unit).text
                if text[e.char_start:e.char_end] != e.surface:
                    raise ValueError(
                        f"provenance span for {cid!r} does not match text: "
                        f"{text[e.char_start:e.char_end]!r} != {e.surface!r}"
                    )
        return self

    def surfaces_for(self, concept_id: str) -> list[str]:
        seen: dict[str, None] = {}
        for e in self.provenance.get(concept_id, []):
            seen.setdefault(e.surface.lower())
        return list(seen)
