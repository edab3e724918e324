"""Finite semigroups given by Cayley tables, word evaluation, and Green's relations.

Elements are dense 0-based indices; symbolic names exist only at the CLI
boundary.  All values here are immutable after construction and safe to share
between threads.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .errors import (
    EmptyWord,
    IndexOutOfRange,
    NotAssociative,
    NotRegular,
    UnknownLetter,
)

__all__ = [
    "FiniteSemigroup",
    "MonoidExtension",
    "Morphism",
    "GreenData",
    "make_semigroup",
    "adjoin_identity",
    "eval_word",
    "idempotents",
    "green",
    "lclass_to_group_projection",
]


@dataclass(frozen=True)
class FiniteSemigroup:
    """A finite semigroup: elements 0..size-1 with product ``table[a][b]``."""

    size: int
    table: tuple[tuple[int, ...], ...]
    has_identity: Optional[int] = None

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def product(self, elems: Iterable[int]) -> int:
        it = iter(elems)
        try:
            acc = next(it)
        except StopIteration:
            raise EmptyWord("product of zero elements is undefined")
        row = self.table
        for e in it:
            acc = row[acc][e]
        return acc

    @property
    def elements(self) -> range:
        return range(self.size)

    def __repr__(self) -> str:
        return f"FiniteSemigroup(size={self.size})"


def _find_identity(table: Sequence[Sequence[int]]) -> Optional[int]:
    n = len(table)
    for e in range(n):
        if all(table[e][a] == a and table[a][e] == a for a in range(n)):
            return e
    return None


def make_semigroup(table: Sequence[Sequence[int]]) -> FiniteSemigroup:
    """Validate a Cayley table and wrap it.

    Raises NotAssociative (with a witness triple) or IndexOutOfRange.
    """
    n = len(table)
    if n == 0:
        raise IndexOutOfRange("a semigroup needs at least one element")
    rows = []
    for row in table:
        if len(row) != n:
            raise IndexOutOfRange(f"table is not square: row of length {len(row)}, expected {n}")
        for v in row:
            if not (0 <= v < n):
                raise IndexOutOfRange(f"table entry {v} outside [0, {n - 1}]")
        rows.append(tuple(int(v) for v in row))
    t = tuple(rows)
    for a in range(n):
        for b in range(n):
            ab = t[a][b]
            row_a = t[a]
            for c in range(n):
                if t[ab][c] != row_a[t[b][c]]:
                    raise NotAssociative((a, b, c))
    return FiniteSemigroup(size=n, table=t, has_identity=_find_identity(t))


@dataclass(frozen=True)
class MonoidExtension:
    """S^1: the semigroup itself when it is a monoid, else S with a fresh identity.

    ``identity`` indexes into the extension; fresh identities get index
    ``base.size``.
    """

    base: FiniteSemigroup
    identity: int

    @property
    def size(self) -> int:
        return self.base.size + (1 if self.identity == self.base.size else 0)

    @property
    def is_fresh(self) -> bool:
        return self.identity == self.base.size

    def mul(self, a: int, b: int) -> int:
        if a == self.identity and self.is_fresh:
            return b
        if b == self.identity and self.is_fresh:
            return a
        return self.base.table[a][b]


def adjoin_identity(s: FiniteSemigroup) -> MonoidExtension:
    if s.has_identity is not None:
        return MonoidExtension(base=s, identity=s.has_identity)
    return MonoidExtension(base=s, identity=s.size)


@dataclass(frozen=True)
class Morphism:
    """A map from single-character letters into a semigroup.

    Any such map extends uniquely to a semigroup morphism on nonempty words.
    """

    alphabet: tuple[str, ...]
    image: Mapping[str, int]

    def __post_init__(self):
        if len(set(self.alphabet)) != len(self.alphabet):
            raise UnknownLetter("alphabet letters must be distinct")
        for a in self.alphabet:
            if a not in self.image:
                raise UnknownLetter(f"letter {a!r} has no image")

    def __call__(self, letter: str) -> int:
        try:
            return self.image[letter]
        except KeyError:
            raise UnknownLetter(f"letter {letter!r} not in alphabet") from None


def make_morphism(pairs: Mapping[str, int] | Iterable[tuple[str, int]],
                  s: Optional[FiniteSemigroup] = None) -> Morphism:
    image = dict(pairs)
    if s is not None:
        for a, v in image.items():
            if not (0 <= v < s.size):
                raise IndexOutOfRange(f"image of {a!r} is {v}, outside [0, {s.size - 1}]")
    return Morphism(alphabet=tuple(image), image=image)


def eval_word(phi: Morphism, s: FiniteSemigroup, word: str) -> int:
    """Image of a nonempty word: the left-to-right product of letter images."""
    if not word:
        raise EmptyWord("eval_word needs a nonempty word")
    acc = phi(word[0])
    t = s.table
    for ch in word[1:]:
        acc = t[acc][phi(ch)]
    return acc


def idempotents(s: FiniteSemigroup) -> frozenset[int]:
    return frozenset(e for e in range(s.size) if s.table[e][e] == e)


@dataclass(frozen=True)
class GreenData:
    """Green's relations of a finite semigroup, computed over S^1.

    ``leq_X[a][b]`` holds iff a <=_X b.  Partitions list classes as sorted
    tuples, ordered by their minimum element; ``x_class_of[a]`` gives the
    index of a's class in the matching partition.
    """

    leq_L: tuple[tuple[bool, ...], ...]
    leq_R: tuple[tuple[bool, ...], ...]
    leq_J: tuple[tuple[bool, ...], ...]
    classes_L: tuple[tuple[int, ...], ...]
    classes_R: tuple[tuple[int, ...], ...]
    classes_H: tuple[tuple[int, ...], ...]
    classes_D: tuple[tuple[int, ...], ...]
    lclass_of: tuple[int, ...]
    rclass_of: tuple[int, ...]
    hclass_of: tuple[int, ...]
    dclass_of: tuple[int, ...]
    regular_D: tuple[bool, ...]
    group_H: tuple[bool, ...]
    idempotents: frozenset[int]

    def dclass_elements(self, d: int) -> tuple[int, ...]:
        return self.classes_D[d]


def _classes_from_preorder(leq: Sequence[Sequence[bool]]) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    n = len(leq)
    class_of = [-1] * n
    classes: list[tuple[int, ...]] = []
    for a in range(n):
        if class_of[a] >= 0:
            continue
        members = tuple(b for b in range(n) if leq[a][b] and leq[b][a])
        idx = len(classes)
        classes.append(members)
        for b in members:
            class_of[b] = idx
    return tuple(classes), tuple(class_of)


@functools.lru_cache(maxsize=None)
def green(s: FiniteSemigroup) -> GreenData:
    """Full Green's-relations analysis (cached per semigroup).

    Preorders come from left/right/two-sided ideals over S^1 (two set passes),
    D is identified with J (finite case), a D-class is flagged regular iff it
    contains an idempotent, and an H-class is flagged as a group iff it is
    closed under the product.
    """
    n = s.size
    t = s.table
    ids = idempotents(s)

    # a <=_L b iff a in S^1 b; the identity contributes a == b.
    left_ideal = []
    right_ideal = []
    for b in range(n):
        left_ideal.append(frozenset([b]) | frozenset(t[c][b] for c in range(n)))
        right_ideal.append(frozenset([b]) | frozenset(t[b][c] for c in range(n)))
    two_sided = []
    for b in range(n):
        acc = set(left_ideal[b])
        for a in left_ideal[b]:
            acc.update(t[a][c] for c in range(n))
        two_sided.append(frozenset(acc))

    leq_L = tuple(tuple(a in left_ideal[b] for b in range(n)) for a in range(n))
    leq_R = tuple(tuple(a in right_ideal[b] for b in range(n)) for a in range(n))
    leq_J = tuple(tuple(a in two_sided[b] for b in range(n)) for a in range(n))

    classes_L, lclass_of = _classes_from_preorder(leq_L)
    classes_R, rclass_of = _classes_from_preorder(leq_R)
    classes_D, dclass_of = _classes_from_preorder(leq_J)

    # H = L intersect R.
    hkey = {}
    classes_H: list[tuple[int, ...]] = []
    hclass_of = [-1] * n
    for a in range(n):
        key = (lclass_of[a], rclass_of[a])
        if key not in hkey:
            members = tuple(b for b in range(a, n)
                            if lclass_of[b] == lclass_of[a] and rclass_of[b] == rclass_of[a])
            hkey[key] = len(classes_H)
            classes_H.append(members)
        hclass_of[a] = hkey[key]

    regular_D = tuple(any(e in ids for e in cls) for cls in classes_D)
    group_H = tuple(all(t[a][b] in cls for a in cls for b in cls) for cls in classes_H)

    return GreenData(
        leq_L=leq_L,
        leq_R=leq_R,
        leq_J=leq_J,
        classes_L=classes_L,
        classes_R=classes_R,
        classes_H=tuple(classes_H),
        classes_D=classes_D,
        lclass_of=lclass_of,
        rclass_of=rclass_of,
        hclass_of=tuple(hclass_of),
        dclass_of=dclass_of,
        regular_D=regular_D,
        group_H=group_H,
        idempotents=ids,
    )


def group_hclasses_in(s: FiniteSemigroup, g: GreenData, members: Iterable[int]) -> list[tuple[int, ...]]:
    """Group H-classes contained in a set of elements, ordered by min element."""
    seen = set()
    out = []
    for a in sorted(members):
        h = g.hclass_of[a]
        if h in seen:
            continue
        seen.add(h)
        if g.group_H[h]:
            out.append(g.classes_H[h])
    return out


def group_identity(s: FiniteSemigroup, hclass: Sequence[int]) -> int:
    """The unique idempotent of a group H-class."""
    for e in hclass:
        if s.table[e][e] == e:
            return e
    raise NotRegular(f"H-class {tuple(hclass)} has no idempotent, so it is not a group")


def group_inverse(s: FiniteSemigroup, hclass: Sequence[int], a: int) -> int:
    e = group_identity(s, hclass)
    for b in hclass:
        if s.table[a][b] == e:
            return b
    raise NotRegular(f"{a} has no inverse inside {tuple(hclass)}")


def lclass_to_group_projection(
    s: FiniteSemigroup, g: GreenData, lclass: Iterable[int]
) -> tuple[tuple[int, ...], dict[int, int]]:
    """A group H-class H inside an L-class and a projection f: L -> H.

    f satisfies f(ab) = f(a)f(b) whenever a, b and ab all lie in the L-class,
    and restricts to a bijection from every H-class of L onto H.  On the union
    of the group H-classes, f is left multiplication by the identity e1 of H
    (right multiplication by e1 fixes the whole L-class, so it cannot work).
    Each non-group H-class equals a0 * L' for its minimum a0 and L' the union
    of group H-classes, which pins f there as f(a0*y) = e1*y up to the free
    choice f(a0) = e1.  When several group H-classes are available, the one
    containing the smallest element wins.
    """
    members = tuple(sorted(set(lclass)))
    if not members:
        raise NotRegular("empty L-class")
    lidx = g.lclass_of[members[0]]
    if tuple(g.classes_L[lidx]) != members:
        raise NotRegular(f"{members} is not an L-class")
    didx = g.dclass_of[members[0]]
    if not g.regular_D[didx]:
        raise NotRegular(f"the D-class of {members} is not regular")
    t = s.table
    groups = group_hclasses_in(s, g, members)
    h = groups[0]
    e1 = group_identity(s, h)
    group_union = [y for cls in groups for y in cls]
    f: dict[int, int] = {y: t[e1][y] for y in group_union}
    seen_h = {g.hclass_of[y] for y in group_union}
    for a in members:
        hidx = g.hclass_of[a]
        if hidx in seen_h:
            continue
        seen_h.add(hidx)
        a0 = min(g.classes_H[hidx])
        f[a0] = e1
        for y in group_union:
            f[t[a0][y]] = t[e1][y]
    # Defensive check of the two defining conditions; cheap at our scales.
    mset = set(members)
    for a in members:
        for b in members:
            ab = t[a][b]
            if ab in mset and f[ab] != t[f[a]][f[b]]:
                raise NotRegular(f"projection not multiplicative at ({a}, {b})")
    for cls in (g.classes_H[i] for i in {g.hclass_of[a] for a in members}):
        if sorted(f[a] for a in cls) != sorted(h):
            raise NotRegular(f"projection not bijective on H-class {cls}")
    return h, f
