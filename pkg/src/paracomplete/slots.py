"""Paradigm slot discovery: map edit trees to numbered slots.

Works under two assumptions that become invariants of the output: a tree
realizes at most one slot, and within a slot a lemma has at most one
form. Potential slots (one per tree) are greedily merged by complementary
coverage, low-coverage slots are dropped, and the survivor count is the
discovered paradigm size.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .corpus import Corpus
from .edittree import EditTree, tree_key
from .retrieval import CandidateTable


@dataclass
class Slot:
    id: int
    trees: set[EditTree]
    coverage: dict[str, tuple[str, EditTree]]  # lemma -> (form, tree)


@dataclass
class SlotSystem:
    slots: list[Slot] = field(default_factory=list)

    @property
    def paradigm_size(self) -> int:
        return len(self.slots)

    def slot_by_id(self, slot_id: int) -> Slot:
        for slot in self.slots:
            if slot.id == slot_id:
                return slot
        raise KeyError(f"no slot with id {slot_id}")

    def attested(self, lemma: str, slot_id: int) -> Optional[str]:
        entry = self.slot_by_id(slot_id).coverage.get(lemma)
        return entry[0] if entry else None

    def check_invariants(self) -> None:
        seen_trees: set[str] = set()
        for slot in self.slots:
            for tree in slot.trees:
                key = tree_key(tree)
                if key in seen_trees:
                    raise AssertionError(f"tree {key} appears in two slots")
                seen_trees.add(key)
        ids = sorted(s.id for s in self.slots)
        if ids != list(range(1, len(self.slots) + 1)):
            raise AssertionError(f"slot ids not contiguous from 1: {ids}")


@dataclass
class DiscoveryConfig:
    min_slot_coverage: float = 0.1
    similarity_floor: float = 0.0

    def validate(self) -> None:
        if not (0.0 <= self.min_slot_coverage <= 1.0):
            raise ValueError("min_slot_coverage must be in [0, 1]")
        if not (0.0 <= self.similarity_floor <= 1.0):
            raise ValueError("similarity_floor must be in [0, 1]")


def initial_slots(table: CandidateTable, corpus: Optional[Corpus] = None) -> SlotSystem:
    """One potential slot per distinct tree, coverage from fired triples.

    Should a lemma carry several forms under one tree (possible only for
    tables built outside the retrieval pipeline), the most corpus-frequent
    form wins, ties by lexicographic order. `corpus` supplies the counts;
    without it ties fall back to lexicographic order alone.
    """
    per_tree: dict[str, dict[str, str]] = {}
    trees: dict[str, EditTree] = {}
    for lemma, form, tree in table.sorted_triples():
        key = tree_key(tree)
        trees[key] = tree
        forms = per_tree.setdefault(key, {})
        if lemma in forms and forms[lemma] != form:
            forms[lemma] = _preferred_form(forms[lemma], form, corpus)
        else:
            forms.setdefault(lemma, form)
    order = sorted(per_tree, key=lambda k: (-len(per_tree[k]), k))
    slots = []
    for slot_id, key in enumerate(order, start=1):
        coverage = {
            lemma: (form, trees[key]) for lemma, form in per_tree[key].items()
        }
        slots.append(Slot(id=slot_id, trees={trees[key]}, coverage=coverage))
    return SlotSystem(slots)


def _preferred_form(a: str, b: str, corpus: Optional[Corpus]) -> str:
    ca = corpus.count(a) if corpus else 0
    cb = corpus.count(b) if corpus else 0
    if ca != cb:
        return a if ca > cb else b
    return min(a, b)


def slot_similarity(a: Slot, b: Slot, all_lemmas: int) -> Optional[float]:
    """Complementary coverage score, or None when merging is forbidden.

    Slots sharing a lemma are incompatible: merging them would give that
    lemma two trees in one slot.
    """
    if a.coverage.keys() & b.coverage.keys():
        return None
    return (len(a.coverage) + len(b.coverage)) / all_lemmas


def merge_slots(
    sys: SlotSystem, cfg: Optional[DiscoveryConfig] = None, all_lemmas: int = 0
) -> SlotSystem:
    """Greedy agglomeration, coverage filter, renumbering.

    Repeatedly merges the compatible pair with the highest similarity
    strictly above the floor (ties to the smaller id pair), then drops
    slots covering less than min_slot_coverage of all lemmas and
    renumbers 1..N by descending coverage, ties to the smaller original
    id. N is the paradigm size.
    """
    cfg = cfg or DiscoveryConfig()
    cfg.validate()
    if all_lemmas <= 0:
        all_lemmas = max(
            1, len({lemma for s in sys.slots for lemma in s.coverage})
        )
    work = [
        Slot(id=s.id, trees=set(s.trees), coverage=dict(s.coverage))
        for s in sys.slots
    ]
    while True:
        best: Optional[tuple[float, int, int]] = None
        for x in range(len(work)):
            for y in range(x + 1, len(work)):
                a, b = work[x], work[y]
                score = slot_similarity(a, b, all_lemmas)
                if score is None or score <= cfg.similarity_floor:
                    continue
                lo, hi = min(a.id, b.id), max(a.id, b.id)
                if best is None or (-score, lo, hi) < (-best[0], best[1], best[2]):
                    best = (score, lo, hi)
        if best is None:
            break
        a = next(s for s in work if s.id in (best[1], best[2]))
        b = next(s for s in work if s.id in (best[1], best[2]) and s is not a)
        merged = Slot(
            id=min(a.id, b.id),
            trees=a.trees | b.trees,
            coverage={**a.coverage, **b.coverage},
        )
        work = [s for s in work if s is not a and s is not b] + [merged]
    kept = [
        s for s in work if len(s.coverage) / all_lemmas >= cfg.min_slot_coverage
    ]
    kept.sort(key=lambda s: (-len(s.coverage), s.id))
    return SlotSystem(
        [Slot(id=i, trees=s.trees, coverage=s.coverage) for i, s in enumerate(kept, 1)]
    )


def assign_slot_ids(sys: SlotSystem) -> dict[str, int]:
    """Total map from retained tree keys to final slot ids."""
    mapping: dict[str, int] = {}
    for slot in sys.slots:
        for tree in slot.trees:
            mapping[tree_key(tree)] = slot.id
    return mapping


def dump_slots(sys: SlotSystem) -> str:
    """Diagnostic TSV: slot id, tree key, coverage count."""
    lines = []
    for slot in sys.slots:
        for key in sorted(tree_key(t) for t in slot.trees):
            lines.append(f"{slot.id}\t{key}\t{len(slot.coverage)}")
    return "\n".join(lines) + ("\n" if lines else "")


def dump_coverage(sys: SlotSystem) -> str:
    """Full coverage TSV: lemma, slot id, form, tree key."""
    rows = []
    for slot in sys.slots:
        for lemma in sorted(slot.coverage):
            form, tree = slot.coverage[lemma]
            rows.append(f"{lemma}\t{slot.id}\t{form}\t{tree_key(tree)}")
    rows.sort()
    return "\n".join(rows) + ("\n" if rows else "")
