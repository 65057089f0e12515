"""Repeated-concept identification: the anchor units for diversification.

Concepts are lemmatized n-grams (default n <= 3) occurring at least twice
across premises plus question. Grams made only of stopwords are dropped. The
inventory keeps overlapping entries (both "popular show" and "show"); the
longest-match rule is applied later, when rewrite sites are selected.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..problem import ConceptEntry, ConceptInventory, ConceptOccurrence, Problem
from ..textproc import STOPWORDS


@dataclass(frozen=True)
class ConceptConfig:
    max_n: int = 3
    stopwords: frozenset[str] = STOPWORDS


def identify_repeated(p: Problem, cfg: ConceptConfig | None = None) -> ConceptInventory:
    cfg = cfg or ConceptConfig()
    raw: dict[tuple[str, ...], list[ConceptOccurrence]] = {}
    tags: dict[tuple[str, ...], tuple[str, ...]] = {}
    for unit_index, unit in p.units():
        words = [(i, t) for i, t in enumerate(unit.tokens) if t.is_word]
        for start in range(len(words)):
            for n in range(1, cfg.max_n + 1):
                if start + n > len(words):
                    break
                window = words[start:start + n]
                # n-grams must be contiguous in token space (no gaps across
                # punctuation).
                if window[-1][0] - window[0][0] != n - 1:
                    break
                lemmas = tuple(t.lemma for _, t in window)
                if all(l in cfg.stopwords for l in lemmas):
                    continue
                first, last = window[0][1], window[-1][1]
                raw.setdefault(lemmas, []).append(ConceptOccurrence(
                    unit=unit_index,
                    tok_start=window[0][0],
                    tok_end=window[-1][0] + 1,
                    char_start=first.start,
                    char_end=last.end,
                    surface=unit.text[first.start:last.end],
                ))
                tags.setdefault(lemmas, tuple(t.pos for _, t in window))

    inventory = ConceptInventory()
    for lemmas in sorted(raw, key=lambda k: (len(k), k)):
        occurrences = raw[lemmas]
        if len(occurrences) < 2:
            continue
        cid = " ".join(lemmas)
        inventory.entries[cid] = ConceptEntry(cid, lemmas, tags[lemmas], tuple(occurrences))
    return inventory


def select_sites(occurrences: list[tuple[str, ConceptOccurrence]]
                 ) -> list[tuple[str, ConceptOccurrence]]:
    """Non-overlapping rewrite sites with longest-match precedence.

    Input pairs are (concept id, occurrence) within one unit; longer spans
    win, ties go to the earlier start.
    """
    ranked = sorted(
        occurrences,
        key=lambda pair: (-(pair[1].tok_end - pair[1].tok_start), pair[1].tok_start, pair[0]),
    )
    chosen: list[tuple[str, ConceptOccurrence]] = []
    taken: set[int] = set()
    for cid, occ in ranked:
        span = set(range(occ.tok_start, occ.tok_end))
        if span & taken:
            continue
        taken |= span
        chosen.append((cid, occ))
    chosen.sort(key=lambda pair: pair[1].tok_start)
    return chosen
