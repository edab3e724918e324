"""Prefix-determined forward-ramseyan splits of height at most |S|.

Same outer induction as the plain ramseyan construction, but every choice is
a function of the labelling restricted to [0, x]: anchors sit at block minima,
the L-class peeling inside a regular D-class follows the value of sigma from
the block minimum, and the min-closure is prefix-determined by construction.
The price is forward ramseyanity only: class values absorb later class values
on the right but need not coincide.
"""

from __future__ import annotations

from typing import Iterable

from .errors import InvalidElement, NotLClosed, NotSingleLClass
from .labellings import AdditiveLabelling, Split
from .semigroups import FiniteSemigroup, GreenData, green, lclass_to_group_projection
from .splits import _pair_values, min_dclasses, split_group_h

__all__ = [
    "det_split_lclass",
    "det_split_dclass",
    "det_ramseyan_split",
    "StreamingSplitBuilder",
]


def _lclass_split_levels(lab: AdditiveLabelling, positions: list[int],
                         g: GreenData, lidx: int) -> dict[int, int]:
    """Forward-ramseyan levels (1..|L|) for positions whose values lie in L-class lidx.

    The level of the minimum position is a function of the L-class alone (the
    rank of the chosen group identity, or a reserved 1), so it cannot depend
    on how many positions follow; that is what makes the construction
    prefix-determined.
    """
    if not positions:
        return {}
    s = lab.semigroup
    members = g.classes_L[lidx]
    h, f = lclass_to_group_projection(s, g, members)
    all_groups = all(g.group_H[g.hclass_of[a]] for a in members)
    shift = 0 if all_groups else 1
    levels: dict[int, int] = {}
    if not all_groups:
        levels[positions[0]] = 1
    if len(positions) == 1:
        if all_groups:
            e1 = next(a for a in h if s.table[a][a] == a)
            levels[positions[0]] = sorted(h).index(e1) + 1
        return levels
    sub = lab.restrict(positions)
    projected = AdditiveLabelling(s, [f[v] for v in sub.gaps])
    base = split_group_h(projected, anchor=0)
    start = 0 if all_groups else 1
    for p, lv in zip(positions[start:], base.levels[start:]):
        levels[p] = lv + shift
    return levels


def det_split_lclass(lab: AdditiveLabelling) -> Split:
    """Forward-ramseyan split, height <= |L|, values inside one L-class.

    Projects the labelling onto a group H-class of the L-class and anchors the
    group construction at the minimum position; if the L-class contains a
    non-group H-class, the minimum is parked alone at level 1.
    """
    n = lab.npositions
    if n == 1:
        return Split((1,))
    s = lab.semigroup
    g = green(s)
    vals = _pair_values(lab, range(n))
    lids = {g.lclass_of[v] for v in vals}
    if len(lids) != 1:
        raise NotSingleLClass("labelling values span several L-classes")
    if not g.regular_D[g.dclass_of[next(iter(vals))]]:
        raise NotSingleLClass("the enclosing D-class is not regular")
    levels = _lclass_split_levels(lab, list(range(n)), g, lids.pop())
    return Split(tuple(levels[p] for p in range(n)))


def _det_dclass_rec(lab: AdditiveLabelling, positions: list[int],
                    elems: frozenset[int], g: GreenData) -> dict[int, int]:
    """Induction over an L-closed subset of one regular D-class.

    Peels the L-class with the smallest minimum: positions reachable from the
    block minimum inside it stay at low levels, the others (plus the minimum
    itself) recurse on the remaining classes, shifted up by |L|.
    """
    if not positions:
        return {}
    lids = sorted({g.lclass_of[e] for e in elems}, key=lambda l: g.classes_L[l][0])
    if len(lids) == 1:
        return _lclass_split_levels(lab, positions, g, lids[0])
    lidx = lids[0]
    lset = frozenset(g.classes_L[lidx])
    head = positions[0]
    gamma = [head] + [x for x in positions[1:] if lab.sigma(head, x) not in lset]
    rest = [x for x in positions[1:] if lab.sigma(head, x) in lset]
    shift = len(lset)
    levels = _lclass_split_levels(lab, rest, g, lidx)
    for p, lv in _det_dclass_rec(lab, gamma, elems - lset, g).items():
        levels[p] = lv + shift
    return levels


def det_split_dclass(lab: AdditiveLabelling, elems: Iterable[int]) -> Split:
    """Forward-ramseyan split, height <= |elems|, for an L-closed subset of a
    regular D-class containing every pair value."""
    s = lab.semigroup
    g = green(s)
    eset = frozenset(elems)
    if not eset:
        raise NotLClosed("empty element set")
    for e in eset:
        if not (0 <= e < s.size):
            raise NotLClosed(f"element {e} outside the semigroup")
        if not set(g.classes_L[g.lclass_of[e]]) <= eset:
            raise NotLClosed(f"element set not L-closed at {e}")
    dids = {g.dclass_of[e] for e in eset}
    if len(dids) != 1 or not g.regular_D[next(iter(dids))]:
        raise NotLClosed("element set must sit inside one regular D-class")
    n = lab.npositions
    if n >= 2 and not _pair_values(lab, range(n)) <= eset:
        raise NotLClosed("some sigma value escapes the element set")
    levels = _det_dclass_rec(lab, list(range(n)), eset, g)
    return Split(tuple(levels[p] for p in range(n)))


def _det_dclosed_rec(lab: AdditiveLabelling, positions: list[int],
                     elems: frozenset[int], g: GreenData) -> dict[int, int]:
    """Deterministic variant of the D-closed induction; levels for positions[1:]."""
    if len(positions) <= 1:
        return {}
    s = lab.semigroup
    t = s.table
    didx = min_dclasses(g, elems)[0]
    dset = frozenset(g.classes_D[didx])

    gamma = [positions[0]]
    idx_of = {p: i for i, p in enumerate(positions)}
    while True:
        start = idx_of[gamma[-1]]
        acc = None
        nxt = None
        for j in range(start + 1, len(positions)):
            step = lab.sigma(positions[j - 1], positions[j])
            acc = step if acc is None else t[acc][step]
            if acc in dset:
                nxt = positions[j]
                break
        if nxt is None:
            break
        gamma.append(nxt)

    blocks: list[list[int]] = []
    bounds = [idx_of[p] for p in gamma] + [len(positions)]
    for i in range(len(gamma)):
        blocks.append(positions[bounds[i]:bounds[i + 1]])

    levels: dict[int, int] = {}
    if g.regular_D[didx]:
        for p, lv in _det_dclass_rec(lab, gamma, dset, g).items():
            if p != positions[0]:
                levels[p] = lv
        offset = len(dset)
    else:
        for p in gamma[1:]:
            levels[p] = 1
        offset = 1

    rest = elems - dset
    for block in blocks:
        for p, lv in _det_dclosed_rec(lab, block, rest, g).items():
            levels[p] = offset + lv
    return levels


def det_ramseyan_split(lab: AdditiveLabelling) -> Split:
    """Forward-ramseyan split of height <= |S| whose level at x depends only
    on the labelling restricted to [0, x]."""
    s = lab.semigroup
    ext = AdditiveLabelling(s, (0,) + lab.gaps)
    g = green(s)
    by_pos = _det_dclosed_rec(ext, list(range(ext.npositions)), frozenset(range(s.size)), g)
    return Split(tuple(by_pos[p] for p in range(1, ext.npositions)))


class StreamingSplitBuilder:
    """Feed consecutive sigma values; each extension reveals one position's level.

    Levels already emitted never change (prefix determinism of the batch
    construction); the builder recomputes the batch split per extension and
    checks that invariant.  Instances are single-owner: do not share across
    threads.
    """

    def __init__(self, semigroup: FiniteSemigroup):
        self.semigroup = semigroup
        self._gaps: list[int] = []
        self._levels: list[int] = list(
            det_ramseyan_split(AdditiveLabelling(semigroup, ())).levels)

    def extend(self, value: int) -> int:
        if not (0 <= value < self.semigroup.size):
            raise InvalidElement(f"{value} is not a semigroup element")
        self._gaps.append(value)
        fresh = det_ramseyan_split(AdditiveLabelling(self.semigroup, self._gaps))
        new_levels = list(fresh.levels)
        if new_levels[: len(self._levels)] != self._levels:
            raise AssertionError("determinism violated: an emitted level changed")
        self._levels = new_levels
        return new_levels[-1]

    @property
    def levels(self) -> tuple[int, ...]:
        return tuple(self._levels)
