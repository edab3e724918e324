"""Pure-Python kernels; signature-identical twin of the Cython module.

Selected at import time by the package __init__ when the compiled extension
is unavailable or FACTFOREST_PURE is set.
"""

from __future__ import annotations

IMPL_NAME = "python"


def assoc_witness(n: int, flat: list[int]) -> int:
    """-1 when the flat n*n table is associative, else a*n*n + b*n + c."""
    rng = range(n)
    for a in rng:
        an = a * n
        for b in rng:
            ab_n = flat[an + b] * n
            bn = b * n
            for c in rng:
                if flat[ab_n + c] != flat[an + flat[bn + c]]:
                    return (a * n + b) * n + c
    return -1


def span_match(kinds, arg_a, arg_b, flat, masks, word_len: int) -> int:
    """Evaluate a flattened expression DAG over subword spans of one word.

    Per node, rows[i] is the bitmask of cuts j >= i with span (i, j) in the
    node's language; the diagonal bit (i, i) stands for the empty word.
    kinds: 0 empty, 1 atom (arg_a: mask slot), 2 union (arg_a: offset into
    flat, arg_b: count), 3 concat (arg_a/arg_b: children), 4 star = the
    reflexive-transitive span closure of its child (arg_a), 5 eps (diagonal
    only).  Returns the root's (0, word_len) bit.
    """
    cuts = word_len + 1
    rows_all = []
    for i, kind in enumerate(kinds):
        if kind == 0:
            rows = [0] * cuts
        elif kind == 5:
            rows = [1 << p for p in range(cuts)]
        elif kind == 1:
            m = masks[arg_a[i]]
            rows = [((m >> p) & 1) << (p + 1) for p in range(word_len)]
            rows.append(0)
        elif kind == 2:
            rows = [0] * cuts
            off = arg_a[i]
            for ci in flat[off:off + arg_b[i]]:
                child = rows_all[ci]
                for p in range(cuts):
                    rows[p] |= child[p]
        elif kind == 3:
            lrows = rows_all[arg_a[i]]
            rrows = rows_all[arg_b[i]]
            rows = []
            for p in range(cuts):
                lm = lrows[p]
                acc = 0
                while lm:
                    lsb = lm & -lm
                    acc |= rrows[lsb.bit_length() - 1]
                    lm ^= lsb
                rows.append(acc)
        else:  # star: reflexive-transitive closure; spans grow, so log2 rounds do
            base = rows_all[arg_a[i]]
            acc = [base[p] | (1 << p) for p in range(cuts)]
            for _ in range(max(1, (word_len - 1).bit_length())):
                nxt = []
                for p in range(cuts):
                    m = acc[p]
                    r = m
                    while m:
                        lsb = m & -m
                        r |= acc[lsb.bit_length() - 1]
                        m ^= lsb
                    nxt.append(r)
                acc = nxt
            rows = acc
        rows_all.append(rows)
    return (rows_all[-1][0] >> word_len) & 1


def min_ramseyan_height(npos: int, pairs: list[int], idem_mask: int, cap: int) -> int:
    """Least N <= cap admitting a ramseyan split of N levels, else 0.

    Exhaustive backtracking over level assignments.  The open class of each
    level carries its member list and its forced sigma value; a position
    joining level k must extend the class with pairwise values equal to the
    class idempotent, and closes every class above k.
    """
    if npos <= 0:
        return 0

    def search(nlev: int) -> bool:
        counts = [0] * (nlev + 1)
        vals = [-1] * (nlev + 1)
        members: list[list[int]] = [[] for _ in range(nlev + 1)]

        def rec(p: int) -> bool:
            if p == npos:
                return True
            for k in range(1, nlev + 1):
                ms = members[k]
                newval = vals[k]
                if counts[k] == 1:
                    v = pairs[ms[0] * npos + p]
                    if not (idem_mask >> v) & 1:
                        continue
                    newval = v
                elif counts[k] >= 2:
                    v = vals[k]
                    bad = False
                    for i in ms:
                        if pairs[i * npos + p] != v:
                            bad = True
                            break
                    if bad:
                        continue
                saved = [(counts[j], vals[j], members[j]) for j in range(k + 1, nlev + 1)]
                for j in range(k + 1, nlev + 1):
                    counts[j] = 0
                    vals[j] = -1
                    members[j] = []
                oldval = vals[k]
                ms.append(p)
                counts[k] += 1
                vals[k] = newval
                if rec(p + 1):
                    return True
                ms.pop()
                counts[k] -= 1
                vals[k] = oldval
                for j, st in zip(range(k + 1, nlev + 1), saved):
                    counts[j], vals[j], members[j] = st
            return False

        return rec(0)

    for nlev in range(1, cap + 1):
        if search(nlev):
            return nlev
    return 0
