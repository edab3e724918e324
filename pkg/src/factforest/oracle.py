"""Brute-force ground truth at desk scale.

Everything here re-derives its answers from first definitions (quantifier
searches, exhaustive enumerations) without reusing the constructive modules'
logic, so agreement between the two sides is evidence, not tautology.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Optional, Sequence

from . import _kernels
from .compaction import COMPLETE, compact_complete, compact_det, decode_complete, decode_det
from .errors import TooLarge
from .labellings import AdditiveLabelling
from .rexp import RExpr, matches
from .semigroups import FiniteSemigroup, GreenData, make_semigroup

__all__ = [
    "min_ramseyan_height",
    "enumerate_semigroups",
    "green_bruteforce",
    "language_upto",
    "verify_compaction",
    "deterministic_ramseyan_scheme_exists",
]

MAX_POSITIONS = 10
MAX_CAP = 4
MAX_ENUM = 3
MAX_WORDLEN = 10


def _own_sigma_matrix(lab: AdditiveLabelling) -> list[int]:
    """Pairwise values recomputed directly from the gap vector."""
    t = lab.semigroup.table
    m = lab.npositions
    flat = [0] * (m * m)
    gaps = lab.gaps
    for x in range(m - 1):
        acc = gaps[x]
        flat[x * m + x + 1] = acc
        for y in range(x + 2, m):
            acc = t[acc][gaps[y - 1]]
            flat[x * m + y] = acc
    return flat


def _idem_mask(s: FiniteSemigroup) -> int:
    mask = 0
    for e in range(s.size):
        if s.table[e][e] == e:
            mask |= 1 << e
    return mask


def min_ramseyan_height(lab: AdditiveLabelling, cap: int) -> Optional[int]:
    """Least height <= cap of any ramseyan split, by exhaustive level search."""
    if lab.npositions > MAX_POSITIONS:
        raise TooLarge(f"oracle limited to {MAX_POSITIONS} positions")
    if cap > MAX_CAP:
        raise TooLarge(f"oracle limited to cap {MAX_CAP}")
    if lab.npositions == 0:
        return 0
    flat = _own_sigma_matrix(lab)
    got = _kernels.min_ramseyan_height(lab.npositions, flat, _idem_mask(lab.semigroup), cap)
    return got if got else None


def enumerate_semigroups(n: int) -> Iterator[FiniteSemigroup]:
    """All associative Cayley tables on n labelled elements (no isomorphism dedup)."""
    if n > MAX_ENUM:
        raise TooLarge(f"enumeration limited to size {MAX_ENUM}")
    for flat in itertools.product(range(n), repeat=n * n):
        if _kernels.assoc_witness(n, list(flat)) == -1:
            table = [list(flat[i * n:(i + 1) * n]) for i in range(n)]
            yield make_semigroup(table)


def _partition(n: int, related) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    classes: list[tuple[int, ...]] = []
    class_of = [-1] * n
    for a in range(n):
        if class_of[a] >= 0:
            continue
        members = tuple(b for b in range(n) if related(a, b))
        for b in members:
            class_of[b] = len(classes)
        classes.append(members)
    return tuple(classes), tuple(class_of)


def green_bruteforce(s: FiniteSemigroup) -> GreenData:
    """Green's data by literal quantifier search over the definitions."""
    n = s.size
    t = s.table
    rng = range(n)

    def leq_l(a: int, b: int) -> bool:
        return a == b or any(t[c][b] == a for c in rng)

    def leq_r(a: int, b: int) -> bool:
        return a == b or any(t[b][c] == a for c in rng)

    def leq_j(a: int, b: int) -> bool:
        if a == b:
            return True
        for c in rng:
            if t[c][b] == a or t[b][c] == a:
                return True
        return any(t[t[c][b]][c2] == a for c in rng for c2 in rng)

    leq_L = tuple(tuple(leq_l(a, b) for b in rng) for a in rng)
    leq_R = tuple(tuple(leq_r(a, b) for b in rng) for a in rng)
    leq_J = tuple(tuple(leq_j(a, b) for b in rng) for a in rng)

    classes_L, lclass_of = _partition(n, lambda a, b: leq_L[a][b] and leq_L[b][a])
    classes_R, rclass_of = _partition(n, lambda a, b: leq_R[a][b] and leq_R[b][a])
    classes_H, hclass_of = _partition(
        n, lambda a, b: leq_L[a][b] and leq_L[b][a] and leq_R[a][b] and leq_R[b][a])
    classes_D, dclass_of = _partition(n, lambda a, b: leq_J[a][b] and leq_J[b][a])

    idem = frozenset(e for e in rng if t[e][e] == e)
    regular_D = tuple(any(e in idem for e in cls) for cls in classes_D)
    group_H = tuple(all(t[a][b] in cls for a in cls for b in cls) for cls in classes_H)

    return GreenData(
        leq_L=leq_L, leq_R=leq_R, leq_J=leq_J,
        classes_L=classes_L, classes_R=classes_R,
        classes_H=classes_H, classes_D=classes_D,
        lclass_of=lclass_of, rclass_of=rclass_of,
        hclass_of=hclass_of, dclass_of=dclass_of,
        regular_D=regular_D, group_H=group_H, idempotents=idem,
    )


def language_upto(e: RExpr, alphabet: Sequence[str], maxlen: int) -> set[str]:
    """{w : 1 <= |w| <= maxlen, matches(e, w)} by plain enumeration."""
    if maxlen > MAX_WORDLEN:
        raise TooLarge(f"enumeration limited to length {MAX_WORDLEN}")
    out = set()
    for ln in range(1, maxlen + 1):
        for tup in itertools.product(alphabet, repeat=ln):
            w = "".join(tup)
            if matches(e, w):
                out.add(w)
    return out


def verify_compaction(lab: AdditiveLabelling, variant: str) -> dict:
    """Compact, then decode every pair against an independently folded sigma."""
    m = lab.npositions
    flat = _own_sigma_matrix(lab)
    if variant == COMPLETE:
        comp = compact_complete(lab)
        decode = decode_complete
    else:
        comp = compact_det(lab)
        decode = decode_det
    mismatches = []
    pairs = 0
    for x in range(m):
        for y in range(x + 1, m):
            pairs += 1
            got = decode(comp, x, y)
            want = flat[x * m + y]
            if got != want:
                mismatches.append({"x": x, "y": y, "expected": want, "decoded": got})
    return {
        "variant": comp.variant,
        "pairs": pairs,
        "mismatches": mismatches,
        "ok": not mismatches,
        "bit_width": comp.bit_width,
    }


def _ramseyan_by_definition(levels: Sequence[int], flat: list[int], m: int,
                            idem_mask: int) -> bool:
    """Quantifier-literal ramseyanity check used by the scheme search."""
    height = max(levels, default=0)
    for k in range(1, height + 1):
        for x in range(m):
            if levels[x] != k:
                continue
            for y in range(x + 1, m):
                if levels[y] != k:
                    continue
                if any(levels[z] < k for z in range(x, y + 1)):
                    continue
                v = flat[x * m + y]
                if not (idem_mask >> v) & 1:
                    return False
                for x2 in range(m):
                    if levels[x2] != k:
                        continue
                    for y2 in range(x2 + 1, m):
                        if levels[y2] != k:
                            continue
                        if any(levels[z] < k for z in range(min(x, x2), max(y, y2) + 1)):
                            continue
                        if flat[x2 * m + y2] != v:
                            return False
    return True


def deterministic_ramseyan_scheme_exists(s: FiniteSemigroup, gap_elems: Sequence[int],
                                         height: int, max_gaps: int) -> bool:
    """Does any prefix-determined level scheme stay ramseyan on all inputs?

    A scheme maps every gap prefix (length 0..max_gaps) to a level in
    [1..height]; it induces a split on every labelling whose gaps come from
    ``gap_elems``.  Exhaustive search with backtracking over the prefix tree
    in breadth-first order; each assignment completes exactly one labelling,
    which is checked by definition.
    """
    if height > 3 or len(gap_elems) ** max_gaps > 200000:
        raise TooLarge("scheme search limited to height 3 and small prefix trees")
    prefixes: list[tuple[int, ...]] = []
    for ln in range(max_gaps + 1):
        prefixes.extend(itertools.product(gap_elems, repeat=ln))
    level_of: dict[tuple[int, ...], int] = {}
    idem = _idem_mask(s)

    def check_complete(prefix: tuple[int, ...]) -> bool:
        lab = AdditiveLabelling(s, prefix)
        m = lab.npositions
        flat = _own_sigma_matrix(lab)
        levels = [level_of[prefix[:i]] for i in range(m)]
        return _ramseyan_by_definition(levels, flat, m, idem)

    def assign(i: int) -> bool:
        if i == len(prefixes):
            return True
        p = prefixes[i]
        for lv in range(1, height + 1):
            level_of[p] = lv
            if check_complete(p) and assign(i + 1):
                return True
        del level_of[p]
        return False

    return assign(0)
