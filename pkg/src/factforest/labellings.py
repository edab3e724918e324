"""Additive labellings over finite ordered position sets and level splits.

A labelling stores only the consecutive values sigma(i, i+1); every other
sigma(x, y) is a product fold of those, so additivity holds by construction.
Word-level APIs label either all cuts of a word or only its interior cuts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

from .errors import WordTooShort
from .semigroups import FiniteSemigroup, Morphism

__all__ = [
    "ALL_CUTS",
    "INTERIOR_CUTS",
    "AdditiveLabelling",
    "Split",
    "CheckResult",
    "labelling_from_word",
    "k_neighbour_classes",
    "is_ramseyan",
    "is_forward_ramseyan",
]

ALL_CUTS = "all"
INTERIOR_CUTS = "interior"


class AdditiveLabelling:
    """Positions 0..m labelled by sigma(x, y) in a finite semigroup for x < y."""

    __slots__ = ("semigroup", "gaps", "_prefix", "_inv")

    def __init__(self, semigroup: FiniteSemigroup, gaps: Sequence[int]):
        for v in gaps:
            if not (0 <= v < semigroup.size):
                raise ValueError(f"gap value {v} outside the semigroup")
        self.semigroup = semigroup
        self.gaps = tuple(gaps)
        # Prefix-product cache; sound only with inverses, so groups only.
        self._prefix: Optional[tuple[int, ...]] = None
        self._inv: Optional[tuple[int, ...]] = None
        self._try_group_cache()

    def _try_group_cache(self):
        s = self.semigroup
        e = s.has_identity
        if e is None or len(self.gaps) < 4:
            return
        t = s.table
        inv = [-1] * s.size
        for a in range(s.size):
            for b in range(s.size):
                if t[a][b] == e and t[b][a] == e:
                    inv[a] = b
                    break
            else:
                return
        prefix = [e]
        for g in self.gaps:
            prefix.append(t[prefix[-1]][g])
        self._prefix = tuple(prefix)
        self._inv = tuple(inv)

    @property
    def npositions(self) -> int:
        return len(self.gaps) + 1

    @property
    def positions(self) -> range:
        return range(self.npositions)

    def sigma(self, x: int, y: int) -> int:
        if not (0 <= x < y < self.npositions):
            raise ValueError(f"sigma needs 0 <= x < y < {self.npositions}, got ({x}, {y})")
        if self._prefix is not None:
            t = self.semigroup.table
            return t[self._inv[self._prefix[x]]][self._prefix[y]]
        return self.semigroup.product(self.gaps[x:y])

    def restrict(self, positions: Sequence[int]) -> "AdditiveLabelling":
        """The sub-labelling on a strictly increasing subset of positions."""
        pos = list(positions)
        gaps = [self.sigma(pos[i], pos[i + 1]) for i in range(len(pos) - 1)]
        return AdditiveLabelling(self.semigroup, gaps)

    def __len__(self) -> int:
        return self.npositions

    def __repr__(self) -> str:
        return f"AdditiveLabelling(npositions={self.npositions})"


@dataclass(frozen=True)
class Split:
    """Level assignment positions -> [1..N]; height is the maximum level used."""

    levels: tuple[int, ...]

    def __post_init__(self):
        for lv in self.levels:
            if lv < 1:
                raise ValueError(f"split level {lv} < 1")

    @property
    def height(self) -> int:
        return max(self.levels, default=0)

    @property
    def npositions(self) -> int:
        return len(self.levels)

    def to_json_dict(self) -> dict:
        return {"height": self.height, "levels": list(self.levels)}


class CheckResult(NamedTuple):
    """Boolean predicate result carrying a counterexample witness when false."""

    ok: bool
    witness: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.ok


def labelling_from_word(word: str, phi: Morphism, s: FiniteSemigroup,
                        mode: str = ALL_CUTS) -> AdditiveLabelling:
    """The cut labelling of a word: sigma(i, j) = phi(word[i:j]).

    ALL_CUTS labels the |word|+1 cuts; INTERIOR_CUTS drops the two outer cuts
    (needs |word| >= 2) and is the domain used by the split/tree theorems.
    """
    if mode not in (ALL_CUTS, INTERIOR_CUTS):
        raise ValueError(f"unknown mode {mode!r}")
    if len(word) < 1:
        raise WordTooShort("need a nonempty word")
    if mode == INTERIOR_CUTS and len(word) < 2:
        raise WordTooShort("interior cuts need a word of length >= 2")
    letters = word if mode == ALL_CUTS else word[1:-1]
    return AdditiveLabelling(s, [phi(c) for c in letters])


def k_neighbour_classes(split: Split, k: int) -> list[tuple[int, ...]]:
    """Partition of the level-k positions into maximal k-neighbour classes.

    Two level-k positions are k-neighbours when every position between them
    has level >= k.
    """
    if not (1 <= k <= split.height):
        raise ValueError(f"k={k} outside [1, {split.height}]")
    classes: list[tuple[int, ...]] = []
    current: list[int] = []
    for pos, lv in enumerate(split.levels):
        if lv < k:
            if current:
                classes.append(tuple(current))
                current = []
        elif lv == k:
            current.append(pos)
    if current:
        classes.append(tuple(current))
    return classes


def is_ramseyan(split: Split, lab: AdditiveLabelling) -> CheckResult:
    """True iff every k-neighbour class maps under sigma to one idempotent.

    A false result carries a witness (k, x, y, x2, y2) of two class pairs that
    violate sigma(x,y) = sigma(x2,y2) = sigma(x,y)^2.  Within a class it is
    enough to compare consecutive members: equal consecutive values v with
    v*v = v force every pair to v.
    """
    if split.npositions != lab.npositions:
        raise ValueError("split and labelling have different position sets")
    t = lab.semigroup.table
    for k in range(1, split.height + 1):
        for cls in k_neighbour_classes(split, k):
            if len(cls) < 2:
                continue
            x0, y0 = cls[0], cls[1]
            v = lab.sigma(x0, y0)
            if t[v][v] != v:
                return CheckResult(False, (k, x0, y0, x0, y0))
            for i in range(1, len(cls) - 1):
                if lab.sigma(cls[i], cls[i + 1]) != v:
                    return CheckResult(False, (k, x0, y0, cls[i], cls[i + 1]))
    return CheckResult(True)


def is_forward_ramseyan(split: Split, lab: AdditiveLabelling) -> CheckResult:
    """True iff sigma(x,y) = sigma(x,y)*sigma(x2,y2) for k-neighbour pairs.

    The quantification runs over ordered pairs of pairs inside one class, so
    each class value is idempotent and the class values absorb each other on
    the right (they are L-equivalent idempotents).  Order matters: the check
    with the product reversed can fail on the same data.
    """
    if split.npositions != lab.npositions:
        raise ValueError("split and labelling have different position sets")
    t = lab.semigroup.table
    for k in range(1, split.height + 1):
        for cls in k_neighbour_classes(split, k):
            if len(cls) < 2:
                continue
            pairs = [(cls[i], cls[j], lab.sigma(cls[i], cls[j]))
                     for i in range(len(cls)) for j in range(i + 1, len(cls))]
            for x, y, u in pairs:
                for x2, y2, v in pairs:
                    if t[u][v] != u:
                        return CheckResult(False, (k, x, y, x2, y2))
    return CheckResult(True)
