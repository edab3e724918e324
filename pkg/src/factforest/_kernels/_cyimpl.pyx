# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; signature-identical twin of pyimpl."""

from libc.stdlib cimport malloc, free
from libc.string cimport memset

IMPL_NAME = "cython"


def assoc_witness(int n, flat):
    """-1 when the flat n*n table is associative, else a*n*n + b*n + c."""
    cdef int total = n * n
    cdef int *t = <int *> malloc(total * sizeof(int))
    if t == NULL:
        raise MemoryError()
    cdef int i, a, b, c, ab_n, an, bn
    try:
        for i in range(total):
            t[i] = flat[i]
        for a in range(n):
            an = a * n
            for b in range(n):
                ab_n = t[an + b] * n
                bn = b * n
                for c in range(n):
                    if t[ab_n + c] != t[an + t[bn + c]]:
                        return (a * n + b) * n + c
        return -1
    finally:
        free(t)


def span_match(kinds, arg_a, arg_b, flat, masks, int word_len):
    """See pyimpl.span_match; rows are uint64 bitmasks (word_len <= 62)."""
    cdef int n_nodes = len(kinds)
    cdef int cuts = word_len + 1
    cdef int i, p, q, steps, r
    cdef unsigned long long lm, accm, lsb, bit
    if word_len > 62:
        raise ValueError("span_match kernel supports words up to 62 letters")
    cdef unsigned long long *rows = <unsigned long long *> malloc(
        n_nodes * cuts * sizeof(unsigned long long))
    cdef unsigned long long *tmp = <unsigned long long *> malloc(
        cuts * sizeof(unsigned long long))
    if rows == NULL or tmp == NULL:
        if rows != NULL:
            free(rows)
        if tmp != NULL:
            free(tmp)
        raise MemoryError()
    cdef int kind, a1, b1, off, cnt, ci
    cdef unsigned long long m
    cdef unsigned long long out
    try:
        for i in range(n_nodes):
            kind = kinds[i]
            a1 = arg_a[i]
            b1 = arg_b[i]
            base = i * cuts
            if kind == 0:
                for p in range(cuts):
                    rows[base + p] = 0
            elif kind == 5:
                for p in range(cuts):
                    rows[base + p] = (<unsigned long long> 1) << p
            elif kind == 1:
                m = masks[a1]
                for p in range(word_len):
                    rows[base + p] = ((m >> p) & 1) << (p + 1)
                rows[base + word_len] = 0
            elif kind == 2:
                for p in range(cuts):
                    rows[base + p] = 0
                off = a1
                for ci in flat[off:off + b1]:
                    for p in range(cuts):
                        rows[base + p] |= rows[ci * cuts + p]
            elif kind == 3:
                for p in range(cuts):
                    lm = rows[a1 * cuts + p]
                    accm = 0
                    while lm:
                        lsb = lm & (~lm + 1)
                        q = 0
                        bit = lsb
                        while bit > 1:
                            bit >>= 1
                            q += 1
                        accm |= rows[b1 * cuts + q]
                        lm ^= lsb
                    rows[base + p] = accm
            else:
                for p in range(cuts):
                    rows[base + p] = rows[a1 * cuts + p] | ((<unsigned long long> 1) << p)
                steps = 1
                while (1 << steps) < word_len:
                    steps += 1
                for r in range(steps):
                    for p in range(cuts):
                        lm = rows[base + p]
                        accm = lm
                        while lm:
                            lsb = lm & (~lm + 1)
                            q = 0
                            bit = lsb
                            while bit > 1:
                                bit >>= 1
                                q += 1
                            accm |= rows[base + q]
                            lm ^= lsb
                        tmp[p] = accm
                    for p in range(cuts):
                        rows[base + p] = tmp[p]
        out = rows[(n_nodes - 1) * cuts]
        return <int> ((out >> word_len) & 1)
    finally:
        free(rows)
        free(tmp)


DEF MAXPOS = 24
DEF MAXLEV = 9


def min_ramseyan_height(int npos, pairs, unsigned long long idem_mask, int cap):
    """See pyimpl.min_ramseyan_height; exhaustive, npos <= 23, cap <= 8."""
    if npos <= 0:
        return 0
    if npos >= MAXPOS or cap >= MAXLEV:
        raise ValueError("kernel limits: npos < 24 and cap < 9")
    cdef int pairbuf[MAXPOS * MAXPOS]
    cdef int i, nlev
    for i in range(npos * npos):
        pairbuf[i] = pairs[i]
    for nlev in range(1, cap + 1):
        if _search(npos, pairbuf, idem_mask, nlev):
            return nlev
    return 0


cdef bint _search(int npos, int *pairs, unsigned long long idem_mask, int nlev):
    cdef int counts[MAXLEV]
    cdef int vals[MAXLEV]
    cdef int members[MAXLEV][MAXPOS]
    cdef int k
    for k in range(nlev + 1):
        counts[k] = 0
        vals[k] = -1
    return _rec(0, npos, pairs, idem_mask, nlev, counts, vals, members)


cdef bint _rec(int p, int npos, int *pairs, unsigned long long idem_mask, int nlev,
               int *counts, int *vals, int members[MAXLEV][MAXPOS]):
    cdef int k, j, v, i, newval, oldval
    cdef bint bad
    cdef int saved_counts[MAXLEV]
    cdef int saved_vals[MAXLEV]
    cdef int saved_members[MAXLEV][MAXPOS]
    if p == npos:
        return True
    for k in range(1, nlev + 1):
        newval = vals[k]
        if counts[k] == 1:
            v = pairs[members[k][0] * npos + p]
            if not (idem_mask >> v) & 1:
                continue
            newval = v
        elif counts[k] >= 2:
            v = vals[k]
            bad = False
            for i in range(counts[k]):
                if pairs[members[k][i] * npos + p] != v:
                    bad = True
                    break
            if bad:
                continue
        for j in range(k + 1, nlev + 1):
            saved_counts[j] = counts[j]
            saved_vals[j] = vals[j]
            for i in range(counts[j]):
                saved_members[j][i] = members[j][i]
            counts[j] = 0
            vals[j] = -1
        oldval = vals[k]
        members[k][counts[k]] = p
        counts[k] += 1
        vals[k] = newval
        if _rec(p + 1, npos, pairs, idem_mask, nlev, counts, vals, members):
            return True
        counts[k] -= 1
        vals[k] = oldval
        for j in range(k + 1, nlev + 1):
            counts[j] = saved_counts[j]
            vals[j] = saved_vals[j]
            for i in range(counts[j]):
                members[j][i] = saved_members[j][i]
    return False
