"""Exploratory single-shot perturbations: four mild, meaning-preserving edits.

Unlike the full pipeline, these apply at most `budget` (1 or 2) localized
changes so translation stability can be probed under minimal variation:

  * third-person: a repeated named mention becomes a definite description
  * synonym: one lemma swapped from the lexicon
  * pos-shift: "is kind" becomes "shows kindness" via the derivation table
  * syntactic: active/passive alternation for simple transitive clauses
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..errors import NoApplicableSite
from ..problem import Problem, QUESTION_UNIT, TextUnit
from ..textproc import match_surface
from .resources import Resources

THIRD_PERSON = "third-person"
SYNONYM = "synonym"
POS_SHIFT = "pos-shift"
SYNTACTIC = "syntactic"

ALL_TYPES = (THIRD_PERSON, SYNONYM, POS_SHIFT, SYNTACTIC)


@dataclass(frozen=True)
class PerturbationSite:
    kind: str
    unit: int
    replacement_text: str  # full rewritten unit text
    note: str


def _units_in_order(p: Problem) -> list[tuple[int, TextUnit]]:
    return p.units()


def _third_person_sites(p: Problem, resources: Resources) -> list[PerturbationSite]:
    """Replace the second and later mentions of a repeated name with
    "the <category noun>" (hypernym column, else "the individual")."""
    mention_counts: dict[str, int] = {}
    order: list[tuple[str, int, int]] = []  # (lemma, unit, token index)
    for unit_index, unit in _units_in_order(p):
        for i, tok in enumerate(unit.tokens):
            if tok.pos == "PROPN":
                mention_counts[tok.lemma] = mention_counts.get(tok.lemma, 0) + 1
                order.append((tok.lemma, unit_index, i))
    sites = []
    seen: dict[str, int] = {}
    for lemma, unit_index, i in order:
        seen[lemma] = seen.get(lemma, 0) + 1
        if mention_counts[lemma] < 2 or seen[lemma] < 2:
            continue
        unit = p.unit(unit_index)
        tok = unit.tokens[i]
        hypernym = resources.synonyms.hypernym(lemma) or "individual"
        description = f"the {hypernym}"
        if tok.start == 0:
            description = "The " + hypernym
        text = unit.text[:tok.start] + description + unit.text[tok.end:]
        sites.append(PerturbationSite(
            THIRD_PERSON, unit_index, text, f"{tok.surface}<->{description}"
        ))
    return sites


def _synonym_sites(p: Problem, resources: Resources) -> list[PerturbationSite]:
    sites = []
    for unit_index, unit in _units_in_order(p):
        for tok in unit.tokens:
            if not tok.is_word:
                continue
            synonyms = resources.synonyms.synonyms(tok.lemma, tok.pos)
            if not synonyms:
                continue
            replacement = match_surface(synonyms[0], tok.surface, tok.pos)
            text = unit.text[:tok.start] + replacement + unit.text[tok.end:]
            sites.append(PerturbationSite(
                SYNONYM, unit_index, text, f"{tok.surface}->{replacement}"
            ))
    return sites


def _pos_shift_sites(p: Problem, resources: Resources) -> list[PerturbationSite]:
    """"X is kind" -> "X shows kindness" using an ADJ->NOUN derivation row."""
    sites = []
    for unit_index, unit in _units_in_order(p):
        toks = unit.tokens
        for i in range(len(toks) - 1):
            be, adj = toks[i], toks[i + 1]
            if be.lemma != "be" or adj.pos != "ADJ":
                continue
            noun = resources.derivations.derive(adj.lemma, "ADJ", "NOUN")
            if noun is None:
                continue
            verb = "shows" if be.surface.lower() in ("is", "was") else "show"
            text = unit.text[:be.start] + f"{verb} {noun}" + unit.text[adj.end:]
            sites.append(PerturbationSite(
                POS_SHIFT, unit_index, text, f"{be.surface} {adj.surface}->{verb} {noun}"
            ))
    return sites


def _syntactic_sites(p: Problem, resources: Resources) -> list[PerturbationSite]:
    """Active -> passive for "<Name> <verb>s <Name>"."""
    del resources
    sites = []
    for unit_index, unit in _units_in_order(p):
        toks = [t for t in unit.tokens if t.is_word]
        if len(toks) != 3:
            continue
        subj, verb, obj = toks
        if subj.pos != "PROPN" or verb.pos != "VERB" or obj.pos != "PROPN":
            continue
        if verb.lemma == "be":
            continue
        participle = verb.lemma + ("d" if verb.lemma.endswith("e") else "ed")
        text = unit.text[:subj.start] + (
            f"{obj.surface} is {participle} by {subj.surface}"
        ) + unit.text[toks[-1].end:]
        sites.append(PerturbationSite(
            SYNTACTIC, unit_index, text, f"{subj.surface} {verb.surface} {obj.surface}"
        ))
    return sites


_FINDERS = {
    THIRD_PERSON: _third_person_sites,
    SYNONYM: _synonym_sites,
    POS_SHIFT: _pos_shift_sites,
    SYNTACTIC: _syntactic_sites,
}


def perturb_with_sites(p: Problem, types: tuple[str, ...], budget: int, seed: int = 0,
                       resources: Resources | None = None
                       ) -> tuple[Problem, list[PerturbationSite]]:
    """Like perturb_exploratory, additionally returning the applied sites
    (each carries a note linking the original mention to its replacement)."""
    if budget not in (1, 2):
        raise ValueError(f"budget must be 1 or 2, got {budget}")
    unknown = set(types) - set(ALL_TYPES)
    if unknown:
        raise ValueError(f"unknown perturbation types: {sorted(unknown)}")
    resources = resources or Resources.load()
    sites: list[PerturbationSite] = []
    for kind in ALL_TYPES:
        if kind in types:
            sites.extend(_FINDERS[kind](p, resources))
    if not sites:
        raise NoApplicableSite(f"no sentence admits any of {sorted(types)}")

    rng = random.Random(seed)
    rng.shuffle(sites)
    new_units: dict[int, str] = {}
    applied: list[PerturbationSite] = []
    for site in sites:
        if len(applied) >= budget:
            break
        if site.unit in new_units:
            continue
        new_units[site.unit] = site.replacement_text
        applied.append(site)

    sentences = tuple(
        TextUnit.from_text(new_units[i]) if i in new_units else unit
        for i, unit in enumerate(p.sentences)
    )
    question = (
        TextUnit.from_text(new_units[QUESTION_UNIT])
        if QUESTION_UNIT in new_units else p.question
    )
    return p.with_units(sentences, question), applied


def perturb_exploratory(p: Problem, types: tuple[str, ...], budget: int, seed: int = 0,
                        resources: Resources | None = None) -> Problem:
    """Apply at most `budget` perturbations of the requested types.

    Sites are gathered deterministically and sampled with the seeded RNG; at
    most one perturbation lands per text unit.
    """
    perturbed, _ = perturb_with_sites(p, types, budget, seed, resources)
    return perturbed
