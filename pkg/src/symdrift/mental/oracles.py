"""Equivalence/conflict oracles that drive table updates.

The deterministic lexicon oracle answers from synonym-group closure (extended
with derivation and hypernym links); the remote oracle asks a chat model and
caches every decision for determinism and cost control.
"""

from __future__ import annotations

from collections import Counter
from typing import Protocol

from ..errors import OracleFailure
from ..diversify.resources import DerivationTable, SynonymLexicon
from ..textproc import content_lemmas
from .table import normalize_expression


class EquivalenceOracle(Protocol):
    def equiv(self, e: str, expressions: tuple[str, ...]) -> bool: ...

    def conflict(self, e: str, expressions: tuple[str, ...]) -> tuple[str, str] | None:
        """Return (more atomic expression, modifier text), or None."""
        ...


class LexiconOracle:
    """Closure-based oracle: equivalence is equality of content-lemma
    multisets modulo synonym groups; conflict is strict single-modifier
    containment, keeping the shorter expression as the atomic one."""

    def __init__(self, synlex: SynonymLexicon, derivtab: DerivationTable | None = None):
        self._lexicon = _closure_with_links(synlex, derivtab)

    def _reps(self, e: str) -> Counter:
        return Counter(self._lexicon.representative(l) for l in content_lemmas(e))

    def equiv(self, e: str, expressions: tuple[str, ...]) -> bool:
        mine = self._reps(e)
        if not mine:
            return False
        return any(self._reps(other) == mine for other in expressions)

    def conflict(self, e: str, expressions: tuple[str, ...]) -> tuple[str, str] | None:
        mine = self._reps(e)
        for other in expressions:
            theirs = self._reps(other)
            if not mine or not theirs:
                continue
            if _single_modifier_superset(mine, theirs):
                modifier = _remainder_lemma(e, mine - theirs, self._lexicon)
                return other, modifier
            if _single_modifier_superset(theirs, mine):
                modifier = _remainder_lemma(other, theirs - mine, self._lexicon)
                return normalize_expression(e), modifier
        return None


def _single_modifier_superset(big: Counter, small: Counter) -> bool:
    if not (small <= big) or big == small:
        return False
    remainder = big - small
    return sum(remainder.values()) == 1


def _remainder_lemma(expression: str, remainder: Counter, lexicon: SynonymLexicon) -> str:
    (rep,) = remainder.keys()
    for lemma in content_lemmas(expression):
        if lexicon.representative(lemma) == rep:
            return lemma
    return rep


def _closure_with_links(synlex: SynonymLexicon, derivtab: DerivationTable | None) -> SynonymLexicon:
    closed = synlex.clone()
    if derivtab is not None:
        for lemma, form in derivtab.pairs():
            closed.link(lemma, form)
    # Hypernym links make a definite description match the name it replaced
    # ("the person" vs a repeated proper name). Only proper-noun rows link:
    # joining common vocabulary to shared hypernyms would collapse unrelated
    # concepts into one group.
    for lemma, pos in synlex.entries():
        if pos != "PROPN":
            continue
        hypernym = synlex.hypernym(lemma)
        if hypernym:
            closed.link(lemma, hypernym)
    return closed


def lexicon_oracle(synlex: SynonymLexicon, derivtab: DerivationTable | None = None) -> LexiconOracle:
    return LexiconOracle(synlex, derivtab)


class LLMOracle:
    """Yes/no prompts against a chat client, cached per (expression, entry
    contents) so re-queries of a settled pair never hit the endpoint again."""

    def __init__(self, client, equiv_template: str, conflict_template: str,
                 max_retries: int = 1):
        self._client = client
        self._equiv_template = equiv_template
        self._conflict_template = conflict_template
        self._max_retries = max_retries
        self._cache: dict[tuple, object] = {}

    @staticmethod
    def _first_token(text: str) -> str:
        parts = text.split()
        return parts[0].strip(".,:;").lower() if parts else ""

    def _ask(self, kind: str, e: str, expressions: tuple[str, ...], parse):
        key = (kind, normalize_expression(e), expressions)
        if key in self._cache:
            return self._cache[key]
        template = self._equiv_template if kind == "equiv" else self._conflict_template
        prompt = template.format(expression=e, entry=", ".join(expressions))
        for _ in range(self._max_retries + 1):
            reply = self._client.complete(prompt)
            parsed = parse(reply.text)
            if parsed is not None:
                self._cache[key] = parsed
                return parsed
        raise OracleFailure(f"unparseable {kind} reply for {e!r}")

    def equiv(self, e: str, expressions: tuple[str, ...]) -> bool:
        def parse(text: str):
            head = self._first_token(text)
            return head == "yes" if head in ("yes", "no") else None

        return self._ask("equiv", e, expressions, parse)

    def conflict(self, e: str, expressions: tuple[str, ...]) -> tuple[str, str] | None:
        def parse(text: str):
            head = self._first_token(text)
            if head == "no":
                return (None,)  # wrapped so the cache can hold a real value
            if head == "yes":
                # Expected shape: "yes <atomic expression> | <modifier>"
                parts = text.split(None, 1)
                rest = parts[1] if len(parts) > 1 else ""
                if "|" in rest:
                    atomic, modifier = rest.split("|", 1)
                    return (normalize_expression(atomic), modifier.strip().lower())
            return None

        result = self._ask("conflict", e, expressions, parse)
        return None if result == (None,) else result


def llm_oracle(client, equiv_template: str, conflict_template: str) -> LLMOracle:
    return LLMOracle(client, equiv_template, conflict_template)
