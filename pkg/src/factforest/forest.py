"""Factorisation trees and their interconversion with ramseyan splits.

A tree node is either a leaf carrying one letter or an internal node with at
least two ordered children; the yield (leaves left to right) is the word.  A
tree is ramseyan when every internal node is binary or has all children
evaluating to one common idempotent.  Splits of interior cuts convert to trees
at a 3x height cost (two binary border layers plus one idempotent layer per
split level) and trees convert back to splits at no cost.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import SplitNotRamseyan, TreeNotRamseyan, UnknownLetter
from .labellings import (
    INTERIOR_CUTS,
    AdditiveLabelling,
    Split,
    is_ramseyan,
    labelling_from_word,
)
from .semigroups import FiniteSemigroup, Morphism
from .splits import ramseyan_split

__all__ = [
    "Leaf",
    "Node",
    "FactTree",
    "tree_height",
    "tree_yield",
    "is_ramseyan_tree",
    "split_to_tree",
    "tree_to_split",
    "factorisation_tree",
    "tree_to_json_dict",
    "tree_from_json_dict",
    "tree_to_paren",
]


@dataclass(frozen=True)
class Leaf:
    letter: str

    def __post_init__(self):
        if len(self.letter) != 1:
            raise ValueError(f"leaf letter must be a single character, got {self.letter!r}")


@dataclass(frozen=True)
class Node:
    children: tuple["FactTree", ...]

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("internal nodes need at least two children")


FactTree = Union[Leaf, Node]


def tree_height(t: FactTree) -> int:
    """Height with the convention that a single leaf has height 0."""
    if isinstance(t, Leaf):
        return 0
    return 1 + max(tree_height(c) for c in t.children)


def tree_yield(t: FactTree) -> str:
    if isinstance(t, Leaf):
        return t.letter
    return "".join(tree_yield(c) for c in t.children)


def _value(t: FactTree, phi: Morphism, s: FiniteSemigroup) -> int:
    if isinstance(t, Leaf):
        return phi(t.letter)
    return s.product(_value(c, phi, s) for c in t.children)


def is_ramseyan_tree(t: FactTree, phi: Morphism, s: FiniteSemigroup) -> bool:
    """Every node is a leaf, binary, or has all children mapped to one idempotent."""
    if isinstance(t, Leaf):
        phi(t.letter)
        return True
    vals = [_value(c, phi, s) for c in t.children]
    if len(t.children) > 2:
        e = vals[0]
        if s.table[e][e] != e or any(v != e for v in vals):
            return False
    return all(is_ramseyan_tree(c, phi, s) for c in t.children)


def split_to_tree(word: str, phi: Morphism, s: FiniteSemigroup, split: Split) -> FactTree:
    """Turn a ramseyan split of the word's interior cuts into a ramseyan tree.

    The split leaves the construction free; this one recurses on the lowest
    level present in a segment: its cuts chop the segment into border factors
    and middle factors, the middle factors (all mapped to the class idempotent)
    share one node, and two binary nodes attach the borders:

        node(left-border, node(middles..., right-border))

    which costs at most three tree levels per split level, so the height is
    bounded by 3 * height(split).
    """
    if len(word) < 1:
        raise UnknownLetter("empty word has no tree")
    if split.npositions != max(len(word) - 1, 0):
        raise SplitNotRamseyan("split does not match the word's interior cuts")
    if len(word) >= 2:
        lab = labelling_from_word(word, phi, s, INTERIOR_CUTS)
        check = is_ramseyan(split, lab)
        if not check:
            raise SplitNotRamseyan(f"split is not ramseyan, witness {check.witness}")

    levels = split.levels  # levels[i] belongs to interior cut i+1

    def build(lo: int, hi: int) -> FactTree:
        # Tree for word[lo:hi); every interior cut strictly inside.
        if hi - lo == 1:
            return Leaf(word[lo])
        cuts = range(lo + 1, hi)
        kmin = min(levels[c - 1] for c in cuts)
        kcuts = [c for c in cuts if levels[c - 1] == kmin]
        first, last = kcuts[0], kcuts[-1]
        left = build(lo, first)
        right = build(last, hi)
        if len(kcuts) == 1:
            return Node((left, right))
        middles = [build(kcuts[i], kcuts[i + 1]) for i in range(len(kcuts) - 1)]
        mid = middles[0] if len(middles) == 1 else Node(tuple(middles))
        return Node((left, Node((mid, right))))

    return build(0, len(word))


def tree_to_split(t: FactTree, phi: Morphism, s: FiniteSemigroup) -> Split:
    """Levels for the interior cuts of the yield: the depth (from the root,
    which is depth 1) of the node whose adjacent children the cut separates.
    Ramseyan trees give ramseyan splits of height <= tree height."""
    if not is_ramseyan_tree(t, phi, s):
        raise TreeNotRamseyan("tree is not ramseyan")
    n = len(tree_yield(t))
    levels = [0] * max(n - 1, 0)

    def walk(node: FactTree, offset: int, depth: int) -> int:
        if isinstance(node, Leaf):
            return offset + 1
        pos = offset
        for i, child in enumerate(node.children):
            pos = walk(child, pos, depth + 1)
            if i < len(node.children) - 1:
                levels[pos - 1] = depth
        return pos

    walk(t, 0, 1)
    return Split(tuple(levels))


def factorisation_tree(word: str, phi: Morphism, s: FiniteSemigroup) -> FactTree:
    """Ramseyan factorisation tree of height at most 3|S|."""
    if len(word) < 1:
        raise UnknownLetter("empty word has no tree")
    if len(word) == 1:
        phi(word[0])
        return Leaf(word[0])
    lab = labelling_from_word(word, phi, s, INTERIOR_CUTS)
    return split_to_tree(word, phi, s, ramseyan_split(lab))


def tree_to_json_dict(t: FactTree) -> dict:
    if isinstance(t, Leaf):
        return {"leaf": t.letter}
    return {"children": [tree_to_json_dict(c) for c in t.children]}


def tree_from_json_dict(d: dict) -> FactTree:
    if "leaf" in d:
        return Leaf(d["leaf"])
    return Node(tuple(tree_from_json_dict(c) for c in d["children"]))


def tree_to_paren(t: FactTree) -> str:
    """Nested parenthesised yield, human-diffable: (21(0 2)) style without spaces."""
    if isinstance(t, Leaf):
        return t.letter
    return "(" + "".join(tree_to_paren(c) for c in t.children) + ")"
