"""Raw corpus and lemma-list ingestion.

The corpus is a plain UTF-8 text file with no assumed line structure; the
lemma list is one lemma per line. Tokenization splits on Unicode
whitespace and strips leading/trailing characters that are neither
letters nor digits, keeping interior punctuation (hyphens, apostrophes).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field


class CorpusError(Exception):
    """Unreadable or undecodable corpus input."""


@dataclass
class Corpus:
    """Immutable word-frequency index over a monolingual corpus.

    total_tokens counts every token surviving tokenization, including
    those later excluded from vocab by the min_count threshold.
    """

    vocab: dict[str, int]
    total_tokens: int
    words_by_length: dict[int, set[str]] = field(repr=False)

    def __contains__(self, word: str) -> bool:
        return word in self.vocab

    def count(self, word: str) -> int:
        return self.vocab.get(word, 0)

    def words_of_length(self, low: int, high: int) -> list[str]:
        """All vocab words with length in [low, high], sorted."""
        out: list[str] = []
        for length in range(max(low, 1), high + 1):
            out.extend(self.words_by_length.get(length, ()))
        out.sort()
        return out


@dataclass
class LemmaList:
    """Ordered, duplicate-free list of input lemmas."""

    lemmas: list[str]

    def __iter__(self):
        return iter(self.lemmas)

    def __len__(self) -> int:
        return len(self.lemmas)

    def __contains__(self, lemma: str) -> bool:
        return lemma in self._index()

    def _index(self) -> set[str]:
        cached = getattr(self, "_index_cache", None)
        if cached is None or len(cached) != len(self.lemmas):
            cached = set(self.lemmas)
            object.__setattr__(self, "_index_cache", cached)
        return cached


def _trim(token: str) -> str:
    start = 0
    end = len(token)
    while start < end and not (token[start].isalpha() or token[start].isdigit()):
        start += 1
    while end > start and not (token[end - 1].isalpha() or token[end - 1].isdigit()):
        end -= 1
    return token[start:end]


def tokenize(text: str, lowercase: bool = False) -> list[str]:
    """Whitespace-split, strip non-letter/digit boundaries, drop empties."""
    tokens = []
    for raw in text.split():
        tok = _trim(raw)
        if tok:
            tokens.append(tok.lower() if lowercase else tok)
    return tokens


def load_corpus(path: str, lowercase: bool = False, min_count: int = 1) -> Corpus:
    """Load and index a corpus file.

    Words with count < min_count are excluded from vocab but still
    contribute to total_tokens. Decoding errors are reported with the
    offending byte offset.
    """
    if min_count < 1:
        raise ValueError(f"min_count must be >= 1, got {min_count}")
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise CorpusError(f"cannot read corpus file {path}: {exc}") from exc
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CorpusError(
            f"corpus file {path} is not valid UTF-8 at byte offset {exc.start}"
        ) from exc
    counts = Counter(tokenize(text, lowercase=lowercase))
    total = sum(counts.values())
    vocab = {w: c for w, c in counts.items() if c >= min_count}
    by_length: dict[int, set[str]] = {}
    for word in vocab:
        by_length.setdefault(len(word), set()).add(word)
    return Corpus(vocab=vocab, total_tokens=total, words_by_length=by_length)


def load_lemmas(path: str) -> LemmaList:
    """Read one lemma per line; blanks skipped, duplicates keep first."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise CorpusError(f"cannot read lemma file {path}: {exc}") from exc
    seen: set[str] = set()
    lemmas: list[str] = []
    for line in lines:
        lemma = line.strip()
        if lemma and lemma not in seen:
            seen.add(lemma)
            lemmas.append(lemma)
    return LemmaList(lemmas)


def contains(corpus: Corpus, word: str) -> bool:
    """True iff `word` is a vocab key of `corpus`."""
    return word in corpus.vocab
