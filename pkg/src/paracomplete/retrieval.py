"""Candidate harvesting: steps 1 and 2 of the completion pipeline.

Step 1 pairs every input lemma with corpus words sharing a long common
substring, represents each pair as an edit tree, and keeps only trees
supported by enough distinct lemmas. Step 2 promotes corpus words to
pseudo-lemmas when enough retained trees map them onto corpus-attested
forms, growing the evidence base for slot discovery and training data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .corpus import Corpus, LemmaList, contains
from .edittree import EditTree, apply_tree, build_tree, longest_common_substring, tree_key

Triple = tuple[str, str, EditTree]  # (lemma, form, tree)


@dataclass
class RetrievalConfig:
    min_lcs_abs: int = 3
    min_lcs_ratio: float = 0.5
    tree_min_lemmas: int = 2
    pseudo_lemma_min_hits: int = 2
    max_form_len_delta: Optional[int] = 6  # None disables the length pruning

    def validate(self) -> None:
        if self.min_lcs_abs < 1:
            raise ValueError("min_lcs_abs must be >= 1")
        if not (0.0 < self.min_lcs_ratio <= 1.0):
            raise ValueError("min_lcs_ratio must be in (0, 1]")
        if self.tree_min_lemmas < 1:
            raise ValueError("tree_min_lemmas must be >= 1")
        if self.pseudo_lemma_min_hits < 1:
            raise ValueError("pseudo_lemma_min_hits must be >= 1")
        if self.max_form_len_delta is not None and self.max_form_len_delta < 1:
            raise ValueError("max_form_len_delta must be >= 1 or None")


@dataclass
class CandidateTable:
    """(lemma, form, tree) triples plus per-tree lemma-support counts."""

    triples: set[Triple] = field(default_factory=set)
    tree_counts: dict[str, int] = field(default_factory=dict)
    trees: dict[str, EditTree] = field(default_factory=dict)

    def recount(self) -> None:
        support: dict[str, set[str]] = {}
        trees: dict[str, EditTree] = {}
        for lemma, _form, tree in self.triples:
            key = tree_key(tree)
            support.setdefault(key, set()).add(lemma)
            trees[key] = tree
        self.tree_counts = {k: len(v) for k, v in support.items()}
        self.trees = trees

    def sorted_triples(self) -> list[Triple]:
        return sorted(self.triples, key=lambda t: (t[0], t[1], tree_key(t[2])))

    def lemma_set(self) -> set[str]:
        return {lemma for lemma, _, _ in self.triples}


def _lcs_threshold(lemma: str, cfg: RetrievalConfig) -> int:
    return max(cfg.min_lcs_abs, math.ceil(cfg.min_lcs_ratio * len(lemma)))


def retrieve_candidates(
    corpus: Corpus, lemmas: LemmaList, cfg: Optional[RetrievalConfig] = None
) -> CandidateTable:
    """Step 1: harvest candidate triples and filter trees by lemma support."""
    cfg = cfg or RetrievalConfig()
    cfg.validate()
    table = CandidateTable()
    max_word_len = max(corpus.words_by_length, default=0)
    for lemma in lemmas:
        if not lemma:
            continue
        need = _lcs_threshold(lemma, cfg)
        if cfg.max_form_len_delta is None:
            low, high = 1, max_word_len
        else:
            low = len(lemma) - cfg.max_form_len_delta
            high = len(lemma) + cfg.max_form_len_delta
        for word in corpus.words_of_length(low, min(high, max_word_len)):
            _i, _j, k = longest_common_substring(lemma, word)
            if k >= need:
                table.triples.add((lemma, word, build_tree(lemma, word)))
    table.recount()
    kept = {k for k, n in table.tree_counts.items() if n >= cfg.tree_min_lemmas}
    table.triples = {t for t in table.triples if tree_key(t[2]) in kept}
    table.recount()
    return table


def retrieve_additional_lemmas(
    corpus: Corpus,
    table: CandidateTable,
    lemmas: LemmaList,
    cfg: Optional[RetrievalConfig] = None,
) -> tuple[list[str], CandidateTable]:
    """Step 2: accept corpus words as pseudo-lemmas and add their triples.

    A word qualifies when at least `pseudo_lemma_min_hits` distinct
    retained trees map it to corpus-attested forms. Existing triples are
    never removed; support counts are recomputed over the union.
    """
    cfg = cfg or RetrievalConfig()
    cfg.validate()
    retained = [table.trees[k] for k in sorted(table.trees)]
    augmented = CandidateTable(triples=set(table.triples))
    pseudo: list[str] = []
    input_lemmas = set(lemmas)
    for word in sorted(corpus.vocab):
        if word in input_lemmas:
            continue
        hits: list[tuple[EditTree, str]] = []
        for tree in retained:
            out = apply_tree(tree, word)
            if out is not None and contains(corpus, out):
                hits.append((tree, out))
        if len(hits) >= cfg.pseudo_lemma_min_hits:
            pseudo.append(word)
            for tree, out in hits:
                augmented.triples.add((word, out, tree))
    augmented.recount()
    return pseudo, augmented


def dump_candidates(table: CandidateTable) -> str:
    """Diagnostic TSV: lemma, form, tree key, lemma-support count."""
    lines = []
    for lemma, form, tree in table.sorted_triples():
        key = tree_key(tree)
        lines.append(f"{lemma}\t{form}\t{key}\t{table.tree_counts[key]}")
    return "\n".join(lines) + ("\n" if lines else "")
