"""Candidate generation, minimum-repetition assembly, and the full pipeline.

Per sentence, candidates substitute filtered variants at the repeated-concept
sites (word/phrase in place, sentence rewrites wholesale); a similarity
threshold keeps only meaning-preserving candidates, and a greedy pass picks
one candidate per sentence while minimizing reuse of surface forms per
concept.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..problem import (
    ConceptInventory,
    DiversifiedProblem,
    Problem,
    ProvenanceEntry,
    QUESTION_UNIT,
    SENTENCE_LEVEL,
    TextUnit,
    VariantSet,
)
from ..textproc import match_surface, tokenize
from .concepts import ConceptConfig, identify_repeated, select_sites
from .resources import Resources
from .similarity import FALLBACK, make_scorer, score_similarity
from .variants import RuleRewriter, build_variants

MAX_CANDIDATES_PER_UNIT = 64


@dataclass(frozen=True)
class CandidateSite:
    concept_id: str
    surface: str
    char_start: int
    char_end: int


@dataclass(frozen=True)
class Candidate:
    text: str
    sites: tuple[CandidateSite, ...]


@dataclass(frozen=True)
class DiversifyConfig:
    theta: float = 0.90
    intensity: int | None = None  # None = rewrite everything
    scorer: str = FALLBACK
    seed: int = 0
    max_n: int = 3
    resources: Resources | None = None
    rewriter: object | None = None

    def __post_init__(self) -> None:
        if not (0.0 < self.theta <= 1.0):
            raise ValueError(f"theta must be in (0, 1], got {self.theta}")


def _splice(unit: TextUnit, chosen: list[tuple[str, object, str]]) -> Candidate:
    """Rebuild the sentence with per-site replacement surfaces.

    `chosen` rows are (concept id, occurrence, replacement surface); sites are
    non-overlapping and sorted by position.
    """
    text = unit.text
    out = []
    sites = []
    cursor = 0
    offset = 0
    for cid, occ, surface in chosen:
        out.append(text[cursor:occ.char_start])
        start = occ.char_start + offset
        out.append(surface)
        sites.append(CandidateSite(cid, surface, start, start + len(surface)))
        offset += len(surface) - (occ.char_end - occ.char_start)
        cursor = occ.char_end
    out.append(text[cursor:])
    return Candidate("".join(out), tuple(sites))


def _site_options(cid: str, occ, variants: VariantSet, pos: str) -> list[str]:
    """Replacement surfaces for one site: the original first, then word- and
    phrase-level variants adapted to the original's inflection and casing."""
    options = [occ.surface]
    for variant in variants.get(cid, []):
        if variant.level == SENTENCE_LEVEL:
            continue
        adapted = match_surface(variant.text, occ.surface, pos)
        if adapted.lower() != occ.surface.lower() and adapted not in options:
            options.append(adapted)
    return options


def _sentence_rewrite_candidates(unit: TextUnit, unit_index: int,
                                 inventory: ConceptInventory,
                                 variants: VariantSet) -> list[Candidate]:
    """Whole-sentence rewrites, with sites recovered by scanning the new text
    for each concept's lemma sequence (rewrites only move template glue)."""
    texts: list[str] = []
    for cid in sorted(variants):
        for variant in variants[cid]:
            if variant.level == SENTENCE_LEVEL and variant.unit == unit_index:
                if variant.text not in texts:
                    texts.append(variant.text)
    out = []
    expected = select_sites(inventory.in_unit(unit_index))
    for text in texts:
        tokens = tokenize(text)
        found: list[tuple[str, object, str]] = []
        ok = True
        used: set[int] = set()
        for cid, _occ in expected:
            lemmas = inventory.entries[cid].lemmas
            hit = None
            for i in range(len(tokens) - len(lemmas) + 1):
                if i in used:
                    continue
                window = tokens[i:i + len(lemmas)]
                if tuple(t.lemma for t in window) == lemmas and all(t.is_word for t in window):
                    hit = (i, window)
                    break
            if hit is None:
                ok = False
                break
            i, window = hit
            used.update(range(i, i + len(lemmas)))
            found.append((cid, window, text[window[0].start:window[-1].end]))
        if not ok:
            continue
        sites = tuple(
            CandidateSite(cid, surface, window[0].start, window[-1].end)
            for cid, window, surface in sorted(found, key=lambda row: row[1][0].start)
        )
        out.append(Candidate(text, sites))
    return out


def generate_candidates(unit: TextUnit, unit_index: int, inventory: ConceptInventory,
                        variants: VariantSet, theta: float, scorer) -> list[Candidate]:
    """Filtered candidate set for one text unit; the original is always first."""
    site_rows = select_sites(inventory.in_unit(unit_index))
    original = _splice(unit, [(cid, occ, occ.surface) for cid, occ in site_rows])

    combos: list[list[str]] = [[]]
    for cid, occ in site_rows:
        pos = inventory.entries[cid].pos[0]
        options = _site_options(cid, occ, variants, pos)
        combos = [prefix + [opt] for prefix in combos for opt in options]
        if len(combos) > MAX_CANDIDATES_PER_UNIT:
            combos = combos[:MAX_CANDIDATES_PER_UNIT]

    produced = [original]
    seen = {original.text}
    for combo in combos:
        candidate = _splice(unit, [
            (cid, occ, surface)
            for (cid, occ), surface in zip(site_rows, combo)
        ])
        if candidate.text not in seen:
            seen.add(candidate.text)
            produced.append(candidate)
    for candidate in _sentence_rewrite_candidates(unit, unit_index, inventory, variants):
        if candidate.text not in seen:
            seen.add(candidate.text)
            produced.append(candidate)

    kept = [original]
    for candidate in produced[1:]:
        if score_similarity(unit.text, candidate.text, scorer) >= theta:
            kept.append(candidate)
    return kept


@dataclass
class AssemblyResult:
    chosen: list[Candidate]
    provenance: dict[str, list[ProvenanceEntry]] = field(default_factory=dict)


def assemble(candidates: dict[int, list[Candidate]], rng_seed: int = 0) -> AssemblyResult:
    """Greedy pass in unit order, minimizing repeats of already-used surface
    forms per concept; ties break toward the lower candidate index.

    The seed is accepted for interface parity with randomized selectors; the
    greedy strategy itself is deterministic and ignores it.
    """
    del rng_seed
    used: dict[tuple[str, str], int] = {}
    result = AssemblyResult(chosen=[])
    for unit_index in sorted(candidates, key=lambda u: (u == QUESTION_UNIT, u)):
        options = candidates[unit_index]
        best_idx = 0
        best_cost = None
        for idx, candidate in enumerate(options):
            cost = sum(used.get((s.concept_id, s.surface.lower()), 0) for s in candidate.sites)
            if best_cost is None or cost < best_cost:
                best_cost = cost
                best_idx = idx
        chosen = options[best_idx]
        result.chosen.append(chosen)
        for s in chosen.sites:
            used[(s.concept_id, s.surface.lower())] = used.get((s.concept_id, s.surface.lower()), 0) + 1
            result.provenance.setdefault(s.concept_id, []).append(
                ProvenanceEntry(unit_index, s.char_start, s.char_end, s.surface)
            )
    return result


def eligible_units(p: Problem, inventory: ConceptInventory, k: int) -> set[int]:
    """The k premise sentences with the most repeated-concept occurrences
    (ties by sentence index). The question joins only at full intensity, so
    partial levels stress premise-side consistency progressively."""
    counts = {i: 0 for i in range(len(p.sentences))}
    for entry in inventory.entries.values():
        for occ in entry.occurrences:
            if occ.unit != QUESTION_UNIT:
                counts[occ.unit] += 1
    ranked = sorted(counts, key=lambda i: (-counts[i], i))
    chosen = set(ranked[:k])
    if k == len(p.sentences):
        chosen.add(QUESTION_UNIT)
    return chosen


def diversify_problem(p: Problem, cfg: DiversifyConfig) -> DiversifiedProblem:
    resources = cfg.resources or Resources.load()
    scorer = make_scorer(cfg.scorer, lexicon=resources.synonyms, vectors=resources.vectors)
    inventory = identify_repeated(p, ConceptConfig(max_n=cfg.max_n))
    k = len(p.sentences) if cfg.intensity is None else cfg.intensity
    if k > len(p.sentences):
        raise ValueError(f"intensity {k} exceeds sentence count {len(p.sentences)}")

    if not inventory or k == 0:
        return DiversifiedProblem(
            base_id=p.id, problem=p,
            provenance=_passthrough_provenance(p, inventory),
            intensity=0, no_repeats=not inventory,
        ).validate(p)

    variants = build_variants(p, inventory, resources.synonyms, resources.paraphrases,
                              cfg.rewriter or RuleRewriter())
    eligible = eligible_units(p, inventory, k)
    per_unit: dict[int, list[Candidate]] = {}
    for unit_index, unit in p.units():
        if unit_index in eligible:
            per_unit[unit_index] = generate_candidates(
                unit, unit_index, inventory, variants, cfg.theta, scorer
            )
        else:
            sites = select_sites(inventory.in_unit(unit_index))
            per_unit[unit_index] = [
                _splice(unit, [(cid, occ, occ.surface) for cid, occ in sites])
            ]

    assembly = assemble(per_unit, cfg.seed)
    by_unit = dict(zip(sorted(per_unit, key=lambda u: (u == QUESTION_UNIT, u)),
                       assembly.chosen))
    new_sentences = tuple(
        TextUnit.from_text(by_unit[i].text) for i in range(len(p.sentences))
    )
    new_question = TextUnit.from_text(by_unit[QUESTION_UNIT].text)
    intensity = sum(
        1 for ours, theirs in zip(new_sentences, p.sentences) if ours.text != theirs.text
    )
    rewritten = p.with_units(new_sentences, new_question)
    return DiversifiedProblem(
        base_id=p.id,
        problem=rewritten,
        provenance=assembly.provenance,
        intensity=intensity,
    ).validate(p)


def _passthrough_provenance(p: Problem, inventory: ConceptInventory
                            ) -> dict[str, list[ProvenanceEntry]]:
    """Provenance for the unchanged problem: original surfaces at the sites the
    rewrite pass would have used."""
    out: dict[str, list[ProvenanceEntry]] = {}
    for unit_index, _unit in p.units():
        for cid, occ in select_sites(inventory.in_unit(unit_index)):
            out.setdefault(cid, []).append(
                ProvenanceEntry(occ.unit, occ.char_start, occ.char_end, occ.surface)
            )
    return out
