"""Compaction: encode an additive labelling into per-position records.

Each position carries its split level plus "left summaries" l_k (and, for the
complete variant, "right summaries" r_k): l_k(x) is sigma from the last
level-k position before x, r_k(x) is sigma to the first level-k position
after x.  Those unary records suffice to reconstruct sigma(x, y) exactly for
every pair.  The deterministic variant rides on the prefix-determined
forward-ramseyan split, so records are stable under extension of the
labelling; the complete variant rides on the plain ramseyan split and decodes
through ascending / descending walks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .det_splits import det_ramseyan_split
from .errors import InvalidPositions
from .labellings import AdditiveLabelling, Split
from .semigroups import FiniteSemigroup, adjoin_identity
from .splits import ramseyan_split

__all__ = [
    "DETERMINISTIC",
    "COMPLETE",
    "CompactedWord",
    "compact_det",
    "compact_complete",
    "decode_det",
    "decode_complete",
    "det_bit_budget",
    "complete_bit_budget",
]

DETERMINISTIC = "deterministic"
COMPLETE = "complete"

FILLER = 0  # stored in l_k / r_k slots no valid decode ever reads


def _ceil_log2(n: int) -> int:
    return (n - 1).bit_length() if n > 1 else 0


def det_bit_budget(size: int) -> int:
    """ceil((2|S|+1) * log2 |S|): the theorem's record width, deterministic case."""
    import math
    return math.ceil((2 * size + 1) * math.log2(size)) if size > 1 else 0


def complete_bit_budget(size: int) -> int:
    """ceil((6|S|+2) * log2 |S|): the theorem's record width, complete case."""
    import math
    return math.ceil((6 * size + 2) * math.log2(size)) if size > 1 else 0


@dataclass(frozen=True)
class CompactedWord:
    """Fixed-width packed records, one per position.

    Layout per record, low bits first: level-1 (level_bits), then the left
    summaries l_1..l_n (elem_bits each), then for the complete variant the
    right summaries r_1..r_n.  n is the semigroup size; unused summary slots
    hold the filler element and are never read back by the decoders.
    """

    variant: str
    semigroup: FiniteSemigroup
    npositions: int
    level_bits: int
    elem_bits: int
    bit_width: int
    packed: tuple[int, ...]

    def level(self, x: int) -> int:
        return (self.packed[x] & ((1 << self.level_bits) - 1)) + 1

    def left_summary(self, x: int, k: int) -> int:
        off = self.level_bits + (k - 1) * self.elem_bits
        return (self.packed[x] >> off) & ((1 << self.elem_bits) - 1) if self.elem_bits else FILLER

    def right_summary(self, x: int, k: int) -> int:
        if self.variant != COMPLETE:
            raise InvalidPositions("right summaries exist only in the complete variant")
        n = self.semigroup.size
        off = self.level_bits + (n + k - 1) * self.elem_bits
        return (self.packed[x] >> off) & ((1 << self.elem_bits) - 1) if self.elem_bits else FILLER

    def unpack(self, x: int) -> tuple:
        n = self.semigroup.size
        rec = [self.level(x)] + [self.left_summary(x, k) for k in range(1, n + 1)]
        if self.variant == COMPLETE:
            rec += [self.right_summary(x, k) for k in range(1, n + 1)]
        return tuple(rec)

    def to_json_dict(self) -> dict:
        width = max(1, (self.bit_width + 3) // 4)
        return {
            "variant": self.variant,
            "bit_width": self.bit_width,
            "bits": [format(p, f"0{width}x") for p in self.packed],
            "size": self.semigroup.size,
            "table": [list(r) for r in self.semigroup.table],
        }


def _summaries(lab: AdditiveLabelling, split: Split, with_right: bool):
    """l_k(x) = sigma(max level-k position < x, x); r_k symmetric; FILLER when none."""
    n = lab.semigroup.size
    npos = lab.npositions
    levels = split.levels
    left = [[FILLER] * (n + 1) for _ in range(npos)]
    last_at = [None] * (n + 1)
    for x in range(npos):
        for k in range(1, n + 1):
            if last_at[k] is not None:
                left[x][k] = lab.sigma(last_at[k], x)
        last_at[levels[x]] = x
    right = None
    if with_right:
        right = [[FILLER] * (n + 1) for _ in range(npos)]
        next_at = [None] * (n + 1)
        for x in range(npos - 1, -1, -1):
            for k in range(1, n + 1):
                if next_at[k] is not None:
                    right[x][k] = lab.sigma(x, next_at[k])
            next_at[levels[x]] = x
    return left, right


def _pack(lab: AdditiveLabelling, split: Split, variant: str) -> CompactedWord:
    n = lab.semigroup.size
    elem_bits = _ceil_log2(n)
    level_bits = max(1, _ceil_log2(n))
    left, right = _summaries(lab, split, variant == COMPLETE)
    packed = []
    for x in range(lab.npositions):
        word = split.levels[x] - 1
        off = level_bits
        for k in range(1, n + 1):
            word |= left[x][k] << off
            off += elem_bits
        if variant == COMPLETE:
            for k in range(1, n + 1):
                word |= right[x][k] << off
                off += elem_bits
        packed.append(word)
    slots = n if variant == DETERMINISTIC else 2 * n
    return CompactedWord(
        variant=variant,
        semigroup=lab.semigroup,
        npositions=lab.npositions,
        level_bits=level_bits,
        elem_bits=elem_bits,
        bit_width=level_bits + slots * elem_bits,
        packed=tuple(packed),
    )


def compact_det(lab: AdditiveLabelling) -> CompactedWord:
    """Records over the deterministic forward-ramseyan split.

    Records at a position depend only on the labelling up to it, so two
    labellings agreeing on a prefix produce identical packed bits there.
    """
    return _pack(lab, det_ramseyan_split(lab), DETERMINISTIC)


def compact_complete(lab: AdditiveLabelling) -> CompactedWord:
    """Records over the plain ramseyan split (height <= |S|), with both sides."""
    return _pack(lab, ramseyan_split(lab), COMPLETE)


def decode_det(c: CompactedWord, x: int, y: int) -> int:
    """Reconstruct sigma(x, y) from deterministic records.

    Recursion on the level n: the level-n positions of [x, y) contribute
    nothing (empty), a final hop (singleton z: value to z times l_n(y)), or a
    first hop plus one class-internal step plus a final hop; multiplication
    happens in S with an identity adjoined as neutral filler.
    """
    if not (0 <= x < y < c.npositions):
        raise InvalidPositions(f"need 0 <= x < y < {c.npositions}")
    ext = adjoin_identity(c.semigroup)
    one = ext.identity
    size = c.semigroup.size
    levels = [c.level(p) for p in range(c.npositions)]

    def walk(n: int, lo: int, hi: int) -> int:
        if n == size + 1:
            return one
        zs = [z for z in range(lo, hi) if levels[z] == n]
        if not zs:
            return walk(n + 1, lo, hi)
        if len(zs) == 1:
            return ext.mul(walk(n + 1, lo, zs[0]), c.left_summary(hi, n))
        head = walk(n + 1, lo, zs[0])
        return ext.mul(ext.mul(head, c.left_summary(zs[1], n)), c.left_summary(hi, n))

    out = walk(1, x, y)
    if out == one and ext.is_fresh:
        raise InvalidPositions("decode fell through to the neutral filler")
    return out


def decode_complete(c: CompactedWord, x: int, y: int) -> int:
    """Reconstruct sigma(x, y) from complete records.

    Ascending case (level rises, nothing lower in between) reads left
    summaries at level s(x); descending is the mirror with right summaries;
    otherwise split at a minimal-level interior position and compose.
    """
    if c.variant != COMPLETE:
        raise InvalidPositions("decode_complete needs a complete compaction")
    if not (0 <= x < y < c.npositions):
        raise InvalidPositions(f"need 0 <= x < y < {c.npositions}")
    levels = [c.level(p) for p in range(c.npositions)]
    t = c.semigroup.table

    def asc(lo: int, hi: int) -> int:
        k = levels[lo]
        inner = [z for z in range(lo + 1, hi) if levels[z] == k]
        if not inner:
            return c.left_summary(hi, k)
        z = inner[-1]
        return t[c.left_summary(z, k)][c.left_summary(hi, k)]

    def desc(lo: int, hi: int) -> int:
        k = levels[hi]
        inner = [z for z in range(lo + 1, hi) if levels[z] == k]
        if not inner:
            return c.right_summary(lo, k)
        z = inner[0]
        return t[c.right_summary(lo, k)][c.right_summary(z, k)]

    lo_level = min(levels[x:y + 1])
    if levels[x] <= levels[y] and lo_level >= levels[x]:
        return asc(x, y)
    if levels[x] > levels[y] and lo_level >= levels[y]:
        return desc(x, y)
    z = min(range(x + 1, y), key=lambda p: (levels[p], p))
    return t[desc(x, z)][asc(z, y)]
