"""Variant construction: the parallel word / phrase / sentence scheme.

Word-level variants come from the synonym lexicon keyed by (lemma, pos),
phrase-level from the paraphrase table, sentence-level from a rewriter (rule
based by default, an LLM callable when configured). When the lexical tables
yield nothing for a concept, the rewriter is its fallback.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..problem import (
    ConceptInventory,
    PHRASE_LEVEL,
    Problem,
    SENTENCE_LEVEL,
    SOURCE_LLM,
    SOURCE_PARAPHRASE,
    SOURCE_REWRITE,
    SOURCE_SYNONYM,
    Variant,
    VariantSet,
    WORD_LEVEL,
)
from ..textproc import word_lemmas
from .resources import ParaphraseTable, SynonymLexicon

MAX_VARIANT_TOKENS = 4


@dataclass(frozen=True)
class RewriteRule:
    pattern: re.Pattern
    templates: tuple[str, ...]


# Controlled syntactic rewrites over the rule-sentence shapes that dominate
# rule-base benchmarks. Concept words sit inside the capture groups, so the
# rewrite never destroys them.
_RULES = (
    RewriteRule(
        re.compile(r"All (\w+) people are (\w+)\."),
        ("Every \\1 person is \\2.", "If someone is \\1, then they are \\2."),
    ),
    RewriteRule(
        re.compile(r"Every (\w+) person is (\w+)\."),
        ("All \\1 people are \\2.", "If someone is \\1, then they are \\2."),
    ),
    RewriteRule(
        re.compile(r"If someone is (\w+), then they are (\w+)\."),
        ("All \\1 people are \\2.", "Every \\1 person is \\2."),
    ),
)


class RuleRewriter:
    """Deterministic template-to-template sentence rewrites."""

    def rewrite(self, sentence: str) -> list[str]:
        out: list[str] = []
        for rule in _RULES:
            m = rule.pattern.fullmatch(sentence)
            if not m:
                continue
            for template in rule.templates:
                rewritten = m.expand(template)
                if rewritten != sentence:
                    out.append(rewritten)
        return out

    source = SOURCE_REWRITE


class LLMRewriter:
    """Sentence rewrites proposed by a chat client; one suggestion per line."""

    source = SOURCE_LLM

    def __init__(self, client, prompt_template: str):
        self._client = client
        self._template = prompt_template

    def rewrite(self, sentence: str) -> list[str]:
        reply = self._client.complete(self._template.format(sentence=sentence))
        lines = [l.strip() for l in reply.text.splitlines()]
        return [l for l in lines if l and l != sentence]


def build_variants(p: Problem, inv: ConceptInventory, synlex: SynonymLexicon,
                   paratab: ParaphraseTable, rewriter=None) -> VariantSet:
    """Per-concept variant lists; concepts the resources cannot cover get an
    empty list (callers treat that as the flagged no-variant case)."""
    rewriter = rewriter or RuleRewriter()
    out: VariantSet = {}
    for cid in sorted(inv.entries):
        entry = inv.entries[cid]
        variants: list[Variant] = []
        if len(entry.lemmas) == 1:
            for syn in synlex.synonyms(entry.lemmas[0], entry.pos[0]):
                if syn != entry.lemmas[0]:
                    variants.append(Variant(syn, WORD_LEVEL, SOURCE_SYNONYM))
        for text, _score in paratab.paraphrases(entry.lemmas):
            if len(word_lemmas(text)) <= MAX_VARIANT_TOKENS and text.lower() != cid:
                variants.append(Variant(text, PHRASE_LEVEL, SOURCE_PARAPHRASE))
        rewritten_units: set[int] = set()
        for occ in entry.occurrences:
            if occ.unit in rewritten_units:
                continue
            rewritten_units.add(occ.unit)
            for text in rewriter.rewrite(p.unit(occ.unit).text):
                variants.append(Variant(text, SENTENCE_LEVEL, rewriter.source, unit=occ.unit))
        # Drop anything identical to the canonical surface.
        surfaces = {occ.surface.lower() for occ in entry.occurrences}
        out[cid] = [v for v in variants if v.level == SENTENCE_LEVEL or v.text.lower() not in surfaces]
    return out
