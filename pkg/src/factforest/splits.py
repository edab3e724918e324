"""Constructive ramseyan splits of height at most |S| for finite orderings.

The construction follows the case analysis over Green's relations: a group
H-class is split by numbering group-extended sigma values from an anchor, a
regular D-class is partitioned by the group H-class attached to each position,
and a D-closed subset is peeled one minimal D-class at a time along the
min-closure of the ordering's minimum.  The top-level entry point prepends a
fresh minimum so that the D-closed construction (which covers everything but
the minimum) covers every original position.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import NotDClosed, NotInGroupHClass, NotRegularDClass
from .labellings import AdditiveLabelling, Split
from .semigroups import (
    FiniteSemigroup,
    GreenData,
    green,
    group_hclasses_in,
    group_identity,
    group_inverse,
)

__all__ = ["split_group_h", "split_regular_d", "split_dclosed", "ramseyan_split"]


def _pair_values(lab: AdditiveLabelling, positions: Sequence[int]) -> set[int]:
    """All sigma(x, y) over pairs of the given positions, by row accumulation."""
    t = lab.semigroup.table
    out: set[int] = set()
    for i in range(len(positions) - 1):
        acc = lab.sigma(positions[i], positions[i + 1])
        out.add(acc)
        for j in range(i + 2, len(positions)):
            acc = t[acc][lab.sigma(positions[j - 1], positions[j])]
            out.add(acc)
    return out


def min_dclasses(g: GreenData, elems: Iterable[int]) -> list[int]:
    """D-class indices that are <=_J-minimal among the classes of ``elems``."""
    dids = sorted({g.dclass_of[e] for e in elems},
                  key=lambda d: g.classes_D[d][0])
    minimal = []
    for d in dids:
        rep = g.classes_D[d][0]
        if any(d2 != d and g.leq_J[g.classes_D[d2][0]][rep] for d2 in dids):
            continue
        minimal.append(d)
    return minimal


def split_group_h(lab: AdditiveLabelling, anchor: int = 0) -> Split:
    """Ramseyan split of height <= |H| when all values lie in a group H-class.

    Extends sigma to all ordered pairs through the group structure
    (sigma(x,x) = identity, sigma(y,x) = sigma(x,y)^-1) and assigns each
    position the number of its extended value from the anchor; H is numbered
    by ascending element index.  Equal levels force sigma = identity between
    them, which makes every neighbourhood class idempotent-valued.
    """
    n = lab.npositions
    if not (0 <= anchor < n):
        raise NotInGroupHClass(f"anchor {anchor} outside positions")
    if n == 1:
        return Split((1,))
    s = lab.semigroup
    g = green(s)
    hidx = g.hclass_of[lab.gaps[0]]
    if not g.group_H[hidx]:
        raise NotInGroupHClass(f"H-class of {lab.gaps[0]} is not a group")
    for v in lab.gaps:
        if g.hclass_of[v] != hidx:
            raise NotInGroupHClass("labelling values span several H-classes")
    hmembers = g.classes_H[hidx]
    e = group_identity(s, hmembers)
    number = {h: i + 1 for i, h in enumerate(sorted(hmembers))}
    t = s.table

    values = [0] * n
    values[anchor] = e
    acc = e
    for x in range(anchor + 1, n):
        acc = t[acc][lab.gaps[x - 1]]
        values[x] = acc
    acc = e
    for x in range(anchor - 1, -1, -1):
        acc = t[lab.gaps[x]][acc]
        values[x] = group_inverse(s, hmembers, acc)
    return Split(tuple(number[v] for v in values))


def split_regular_d(lab: AdditiveLabelling) -> Split:
    """Ramseyan split of height <= |D| when all values lie in one regular D-class.

    Each position gets the H-class l(x) /\\ r(x) built from its incoming
    L-class and outgoing R-class (endpoints pick the group H-class with the
    smallest minimal element); positions sharing a group H-class H_k form a
    block split by the group construction, placed at levels
    (k-1)*N + 1 .. k*N for N the common H-class size.
    """
    n = lab.npositions
    if n == 1:
        return Split((1,))
    s = lab.semigroup
    g = green(s)
    t = s.table

    vals = _pair_values(lab, range(n))
    dids = {g.dclass_of[v] for v in vals}
    if len(dids) != 1:
        raise NotRegularDClass("labelling values span several D-classes")
    didx = dids.pop()
    if not g.regular_D[didx]:
        raise NotRegularDClass(f"D-class of {g.classes_D[didx][0]} is not regular")
    dmembers = g.classes_D[didx]

    # h(x) = l(x) /\ r(x) as an H-class index.
    h_at = {}
    for a in dmembers:
        h_at[(g.lclass_of[a], g.rclass_of[a])] = g.hclass_of[a]

    def group_pick(members: Iterable[int]) -> int:
        groups = group_hclasses_in(s, g, members)
        if not groups:
            raise NotRegularDClass("no group H-class available for an endpoint")
        return g.hclass_of[groups[0][0]]

    lcls = [0] * n
    rcls = [0] * n
    for x in range(n - 1):
        rcls[x] = g.rclass_of[lab.gaps[x]]
    for x in range(1, n):
        lcls[x] = g.lclass_of[lab.gaps[x - 1]]
    h_max = group_pick(g.classes_L[lcls[n - 1]])
    rcls[n - 1] = g.rclass_of[g.classes_H[h_max][0]]
    h_min = group_pick(g.classes_R[rcls[0]])
    lcls[0] = g.lclass_of[g.classes_H[h_min][0]]

    hclass_at = []
    for x in range(n):
        hidx = h_at.get((lcls[x], rcls[x]))
        if hidx is None or not g.group_H[hidx]:
            raise NotRegularDClass(f"position {x} is not attached to a group H-class")
        hclass_at.append(hidx)

    group_order = [g.hclass_of[cls[0]] for cls in group_hclasses_in(s, g, dmembers)]
    nsize = len(g.classes_H[group_order[0]])
    levels = [0] * n
    for k, hidx in enumerate(group_order):
        beta_k = [x for x in range(n) if hclass_at[x] == hidx]
        if not beta_k:
            continue
        sub = lab.restrict(beta_k)
        sk = split_group_h(sub, anchor=0)
        for pos, lv in zip(beta_k, sk.levels):
            levels[pos] = k * nsize + lv
    return Split(tuple(levels))


def _dclosed_rec(lab: AdditiveLabelling, positions: list[int],
                 elems: frozenset[int], g: GreenData) -> dict[int, int]:
    """Levels for ``positions`` minus its minimum; values of pairs must lie in elems."""
    if len(positions) <= 1:
        return {}
    s = lab.semigroup
    didx = min_dclasses(g, elems)[0]
    dset = frozenset(g.classes_D[didx])

    # Min-closure of the minimum under "next position reaching D".
    gamma = [positions[0]]
    idx_of = {p: i for i, p in enumerate(positions)}
    t = s.table
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

    # Blocks between consecutive closure points; each avoids D internally.
    blocks: list[list[int]] = []
    bounds = [idx_of[p] for p in gamma] + [len(positions)]
    for i in range(len(gamma)):
        blocks.append(positions[bounds[i]:bounds[i + 1]])

    levels: dict[int, int] = {}
    if g.regular_D[didx]:
        sub = lab.restrict(gamma)
        sg = split_regular_d(sub)
        for p, lv in zip(gamma, sg.levels):
            if p != positions[0]:
                levels[p] = lv
        offset = len(dset)
    else:
        # A non-regular minimal class admits at most two closure points.
        for p in gamma[1:]:
            levels[p] = 1
        offset = 1

    rest = elems - dset
    for block in blocks:
        for p, lv in _dclosed_rec(lab, block, rest, g).items():
            levels[p] = offset + lv
    return levels


def split_dclosed(lab: AdditiveLabelling, elems: Iterable[int]) -> Split:
    """Ramseyan split of the positions minus their minimum, height <= |elems|.

    ``elems`` must be closed under the D relation and contain every pair
    value; the returned levels correspond to positions 1..npositions-1.
    """
    s = lab.semigroup
    g = green(s)
    eset = frozenset(elems)
    for e in eset:
        if not (0 <= e < s.size):
            raise NotDClosed(f"element {e} outside the semigroup")
        if not set(g.classes_D[g.dclass_of[e]]) <= eset:
            raise NotDClosed(f"element set not D-closed at {e}")
    n = lab.npositions
    if n >= 2:
        stray = _pair_values(lab, range(n)) - eset
        if stray:
            raise NotDClosed(f"sigma value {min(stray)} outside the element set")
    by_pos = _dclosed_rec(lab, list(range(n)), eset, g)
    return Split(tuple(by_pos[p] for p in range(1, n)))


def ramseyan_split(lab: AdditiveLabelling) -> Split:
    """Ramseyan split of the whole ordering, height <= |S|.

    Prepends a fresh minimum labelled into the original minimum by a fixed
    element (index 0), applies the D-closed construction with the full
    semigroup, and drops the fresh position.
    """
    ext = AdditiveLabelling(lab.semigroup, (0,) + lab.gaps)
    return split_dclosed(ext, range(lab.semigroup.size))
