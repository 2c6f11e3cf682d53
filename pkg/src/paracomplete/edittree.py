"""Edit trees: recursive lemma-to-form transformations.

An edit tree encodes how an inflected form is obtained from a lemma. It is
built by recursive longest-common-substring decomposition: the shared
segment becomes a match node, the unmatched prefix/suffix pairs are
decomposed further, and pairs without common characters end in replace
leaves. The same tree applied to a new lemma yields the analogous form,
which is what makes trees countable, comparable inflection patterns.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union


@dataclass(frozen=True)
class Replace:
    """Leaf: rewrite exactly `source` into `target`."""

    source: str
    target: str


@dataclass(frozen=True)
class Match:
    """Inner node: keep a middle segment, transform prefix and suffix.

    `prefix_len` and `suffix_len` are measured on the lemma side; the
    middle segment between them is copied verbatim into the output.
    """

    prefix_len: int
    suffix_len: int
    left: "EditTree"
    right: "EditTree"


EditTree = Union[Replace, Match]


def longest_common_substring(a: str, b: str) -> tuple[int, int, int]:
    """Return (i, j, k): a[i:i+k] == b[j:j+k] with k maximal.

    Ties are broken by smallest i, then smallest j. Returns (0, 0, 0)
    when the strings share no character. Operates on Unicode scalar
    values (Python str indexing), not bytes.
    """
    if not a or not b:
        return (0, 0, 0)
    positions: dict[str, list[int]] = {}
    for j, ch in enumerate(b):
        positions.setdefault(ch, []).append(j)
    best_k = 0
    best_i = 0
    best_j = 0
    # Sparse suffix-length DP: prev maps j -> length of the common run
    # ending at (i-1, j-1). Matches complete in (end-row, end-col) order,
    # which for a fixed length is ascending (start i, start j), so the
    # first time a new maximum is seen it already satisfies the tie rule.
    prev: dict[int, int] = {}
    for i, ch in enumerate(a):
        cur: dict[int, int] = {}
        for j in positions.get(ch, ()):
            k = prev.get(j - 1, 0) + 1
            cur[j] = k
            if k > best_k:
                best_k = k
                best_i = i - k + 1
                best_j = j - k + 1
        prev = cur
    return (best_i, best_j, best_k)


def build_tree(lemma: str, form: str) -> EditTree:
    """Construct the canonical edit tree transforming `lemma` into `form`."""
    i, j, k = longest_common_substring(lemma, form)
    if k == 0:
        return Replace(lemma, form)
    return Match(
        i,
        len(lemma) - (i + k),
        build_tree(lemma[:i], form[:j]),
        build_tree(lemma[i + k :], form[j + k :]),
    )


def apply_tree(tree: EditTree, word: str) -> Optional[str]:
    """Apply `tree` to `word`; None signals the tree does not fit.

    A Replace leaf fires only on its exact source string. A Match node
    requires a non-empty middle segment after removing prefix and suffix,
    mirroring the non-empty shared segment that justified the node.
    """
    if isinstance(tree, Replace):
        return tree.target if word == tree.source else None
    p, s = tree.prefix_len, tree.suffix_len
    if len(word) - p - s < 1:
        return None
    left = apply_tree(tree.left, word[:p])
    if left is None:
        return None
    right = apply_tree(tree.right, word[len(word) - s :])
    if right is None:
        return None
    return left + word[p : len(word) - s] + right


def tree_key(tree: EditTree) -> str:
    """Canonical string key, stable across runs and usable in dump files.

    Injective for trees over strings free of '(', ')' and ','; corpus
    tokens virtually never contain these after boundary stripping.
    """
    if isinstance(tree, Replace):
        return f"R({tree.source},{tree.target})"
    return (
        f"M({tree.prefix_len},{tree.suffix_len},"
        f"{tree_key(tree.left)},{tree_key(tree.right)})"
    )


class TreeKeyError(ValueError):
    """Raised when a string cannot be parsed back into an edit tree."""


def parse_tree_key(key: str) -> EditTree:
    """Inverse of tree_key for well-formed keys.

    Strings containing top-level commas or unbalanced parentheses are
    ambiguous under this format; the first top-level comma is taken as
    the separator.
    """
    tree, rest = _parse_node(key)
    if rest:
        raise TreeKeyError(f"trailing characters in tree key: {rest!r}")
    return tree


def _parse_node(s: str) -> tuple[EditTree, str]:
    if s.startswith("R("):
        body, rest = _take_balanced(s[2:])
        a, b = _split_top(body, 2)
        return Replace(a, b), rest
    if s.startswith("M("):
        body, rest = _take_balanced(s[2:])
        p, q, subtrees = _split_top(body, 3)
        left, after = _parse_node(subtrees)
        if not after.startswith(","):
            raise TreeKeyError(f"expected ',' between subtrees in {body!r}")
        right, after = _parse_node(after[1:])
        if after:
            raise TreeKeyError(f"trailing characters in match body: {after!r}")
        return Match(int(p), int(q), left, right), rest
    raise TreeKeyError(f"expected R( or M( at {s!r}")


def _take_balanced(s: str) -> tuple[str, str]:
    """Split 'body)rest' at the parenthesis matching an already-consumed '('."""
    depth = 1
    for idx, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                return s[:idx], s[idx + 1 :]
    raise TreeKeyError(f"unbalanced parentheses in {s!r}")


def _split_top(body: str, parts: int) -> tuple[str, ...]:
    """Split on the first `parts`-1 top-level commas."""
    out = []
    depth = 0
    start = 0
    for idx, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0 and len(out) < parts - 1:
            out.append(body[start:idx])
            start = idx + 1
    out.append(body[start:])
    if len(out) != parts:
        raise TreeKeyError(f"expected {parts} fields in {body!r}")
    return tuple(out)
