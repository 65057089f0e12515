"""Lexical resources: synonym lexicon, paraphrase table, derivation table,
word vectors.

File formats (all TSV, `#` comments allowed):

    synonyms.tsv     lemma <TAB> pos <TAB> syn1,syn2,... <TAB> hypernym?
    paraphrases.tsv  phrase <TAB> paraphrase <TAB> score
    derivations.tsv  lemma <TAB> pos_from <TAB> pos_to <TAB> form
    vectors.txt      token v1 v2 ... vd   (one line per token)

An empty synonym cell is written `-`. The bundled defaults cover the synthetic
generator's vocabulary; callers point at their own files for anything else.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources as importlib_resources
from pathlib import Path

from ..errors import ResourceMissing


def _read_rows(path: str | Path, n_cols: int, optional_last: bool = False) -> list[list[str]]:
    p = Path(path)
    if not p.exists():
        raise ResourceMissing(f"lexicon file not found: {p}")
    rows = []
    for raw in p.read_text(encoding="utf-8").splitlines():
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = line.split("\t")
        want = n_cols - 1 if optional_last else n_cols
        if len(cols) < want:
            raise ResourceMissing(f"malformed row in {p}: {line!r}")
        rows.append(cols)
    return rows


class SynonymLexicon:
    """Synonym rows plus the transitive closure over their groups.

    The closure (`representative`) treats two lemmas as equivalent when any
    chain of synonym rows connects them, regardless of part of speech.
    """

    def __init__(self) -> None:
        self._synonyms: dict[tuple[str, str], list[str]] = {}
        self._hypernyms: dict[str, str] = {}
        self._parent: dict[str, str] = {}

    @staticmethod
    def load(path: str | Path) -> "SynonymLexicon":
        from ..textproc import lemmatize

        lex = SynonymLexicon()
        for cols in _read_rows(path, 4, optional_last=True):
            lemma, pos = cols[0].strip().lower(), cols[1].strip().upper()
            syns = [s.strip().lower() for s in cols[2].split(",")
                    if s.strip() and s.strip() != "-"]
            lex._synonyms[(lemma, pos)] = syns
            for syn in syns:
                lex._union(lemma, syn)
                # Tokenizing a substituted synonym must land back in the same
                # group even when the suffix stripper shortens it.
                lex._union(syn, lemmatize(syn))
            lex._find(lemma)
            if len(cols) >= 4 and cols[3].strip():
                lex._hypernyms[lemma] = cols[3].strip().lower()
        return lex

    def _find(self, w: str) -> str:
        self._parent.setdefault(w, w)
        root = w
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[w] != root:
            self._parent[w], w = root, self._parent[w]
        return root

    def _union(self, a: str, b: str) -> None:
        ra, rb = self._find(a), self._find(b)
        if ra != rb:
            # Deterministic: smaller string wins as root.
            lo, hi = sorted((ra, rb))
            self._parent[hi] = lo

    def link(self, a: str, b: str) -> None:
        """Join two lemmas into one equivalence group (used for derivation
        and hypernym links when building oracles)."""
        self._union(a, b)

    def synonyms(self, lemma: str, pos: str) -> list[str]:
        return list(self._synonyms.get((lemma.lower(), pos.upper()), []))

    def hypernym(self, lemma: str) -> str | None:
        return self._hypernyms.get(lemma.lower())

    def representative(self, lemma: str) -> str:
        w = lemma.lower()
        if w not in self._parent:
            return w
        return self._find(w)

    def same_group(self, a: str, b: str) -> bool:
        return self.representative(a) == self.representative(b)

    def entries(self) -> list[tuple[str, str]]:
        return sorted(self._synonyms)

    def clone(self) -> "SynonymLexicon":
        out = SynonymLexicon()
        out._synonyms = dict(self._synonyms)
        out._hypernyms = dict(self._hypernyms)
        out._parent = dict(self._parent)
        return out


class ParaphraseTable:
    def __init__(self, rows: dict[tuple[str, ...], list[tuple[str, float]]]):
        self._rows = rows

    @staticmethod
    def load(path: str | Path) -> "ParaphraseTable":
        from ..textproc import word_lemmas

        rows: dict[tuple[str, ...], list[tuple[str, float]]] = {}
        for phrase, paraphrase, score in _read_rows(path, 3):
            key = tuple(word_lemmas(phrase))
            rows.setdefault(key, []).append((paraphrase.strip(), float(score)))
        for options in rows.values():
            options.sort(key=lambda pair: (-pair[1], pair[0]))
        return ParaphraseTable(rows)

    def paraphrases(self, lemmas: tuple[str, ...]) -> list[tuple[str, float]]:
        return list(self._rows.get(lemmas, []))


class DerivationTable:
    """Cross-category word forms, e.g. kind/ADJ -> kindness/NOUN."""

    def __init__(self, rows: dict[tuple[str, str, str], str]):
        self._rows = rows

    @staticmethod
    def load(path: str | Path) -> "DerivationTable":
        rows = {}
        for lemma, pos_from, pos_to, form in _read_rows(path, 4):
            rows[(lemma.strip().lower(), pos_from.strip().upper(), pos_to.strip().upper())] = (
                form.strip().lower()
            )
        return DerivationTable(rows)

    def derive(self, lemma: str, pos_from: str, pos_to: str) -> str | None:
        return self._rows.get((lemma.lower(), pos_from.upper(), pos_to.upper()))

    def pairs(self) -> list[tuple[str, str]]:
        return sorted((lemma, form) for (lemma, _, _), form in self._rows.items())


class WordVectors:
    def __init__(self, vectors: dict[str, tuple[float, ...]]):
        self._vectors = vectors

    @staticmethod
    def load(path: str | Path) -> "WordVectors":
        p = Path(path)
        if not p.exists():
            raise ResourceMissing(f"vector file not found: {p}")
        vectors: dict[str, tuple[float, ...]] = {}
        for line in p.read_text(encoding="utf-8").splitlines():
            if not line.strip():
                continue
            token, *values = line.split()
            vectors[token.lower()] = tuple(float(v) for v in values)
        return WordVectors(vectors)

    def get(self, token: str) -> tuple[float, ...] | None:
        return self._vectors.get(token.lower())

    @property
    def dim(self) -> int:
        return len(next(iter(self._vectors.values()), ()))


@dataclass
class Resources:
    synonyms: SynonymLexicon
    paraphrases: ParaphraseTable
    derivations: DerivationTable
    vectors: WordVectors | None = None

    @staticmethod
    def load(synonyms_path: str | Path | None = None,
             paraphrases_path: str | Path | None = None,
             derivations_path: str | Path | None = None,
             vectors_path: str | Path | None = None) -> "Resources":
        base = importlib_resources.files("symdrift") / "data"
        return Resources(
            synonyms=SynonymLexicon.load(synonyms_path or base / "synonyms.tsv"),
            paraphrases=ParaphraseTable.load(paraphrases_path or base / "paraphrases.tsv"),
            derivations=DerivationTable.load(derivations_path or base / "derivations.tsv"),
            vectors=WordVectors.load(vectors_path) if vectors_path else None,
        )
