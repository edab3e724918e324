"""Star-restricted regular expressions built from a morphism into a finite semigroup.

Expressions are hash-consed into a global DAG: structurally identical
subexpressions are one node, unions are flattened, atom sets merged, children
ordered by a deterministic structural digest, and summands whose language a
sibling provably contains are dropped.  Stars are standard Kleene stars, so a
starred node is the only place the empty word appears; membership of nonempty
words is what all language-level claims quantify over.

`build_ramseyan_expr` iterates the level construction

    E[0][x]   = letters mapping to x
    E[k+1][x] = E[k][x] + sum_{yz=x} E[k][y]E[k][z] + (x idempotent: E[k][x]*)

for 3|S| rounds (words with factorisation trees of height k are exactly
level k's language, so the factorisation forest theorem makes the last level
the full preimage).  Every star child denotes a subset of one idempotent's
preimage, which makes the result ramseyan for the morphism by construction.
"""

from __future__ import annotations

import hashlib
import threading
from typing import Iterable, Optional

from .errors import ElementOutOfRange, EmptyWord, UnknownLetter
from .semigroups import FiniteSemigroup, Morphism, idempotents
from . import _kernels

__all__ = [
    "RExpr",
    "EMPTY",
    "atom",
    "union",
    "concat",
    "star",
    "build_ramseyan_expr",
    "image",
    "is_phi_ramseyan",
    "matches",
    "expr_stats",
    "parse",
    "to_string",
]


class RExpr:
    """A hash-consed node; equality is identity.  Create only via factories."""

    __slots__ = ("kind", "letters", "children", "digest", "seq")

    def __init__(self, kind: str, letters: Optional[frozenset[str]],
                 children: tuple["RExpr", ...], digest: bytes, seq: int):
        self.kind = kind            # empty | eps | atom | union | concat | star
        self.letters = letters
        self.children = children
        self.digest = digest
        self.seq = seq

    def __repr__(self) -> str:
        return f"RExpr<{to_string(self)}>"


_LOCK = threading.Lock()
_POOL: dict = {}
_SEQ = [0]
_NULLABLE: dict = {}
_SUBSUMES: dict = {}


def _digest(kind: str, parts: Iterable[bytes]) -> bytes:
    h = hashlib.blake2b(digest_size=16)
    h.update(kind.encode())
    for p in parts:
        h.update(p)
    return h.digest()


def _intern(key, kind, letters, children, parts) -> RExpr:
    with _LOCK:
        node = _POOL.get(key)
        if node is None:
            _SEQ[0] += 1
            node = RExpr(kind, letters, children, _digest(kind, parts), _SEQ[0])
            _POOL[key] = node
        return node


EMPTY: RExpr = _intern(("empty",), "empty", None, (), ())
EPS: RExpr = _intern(("eps",), "eps", None, (), ())


def atom(letters: Iterable[str]) -> RExpr:
    lset = frozenset(letters)
    for a in lset:
        if len(a) != 1:
            raise UnknownLetter(f"atom letters are single characters, got {a!r}")
    if not lset:
        return EMPTY
    return _intern(("atom", lset), "atom", lset, (),
                   [a.encode() for a in sorted(lset)])


def _nullable(e: RExpr) -> bool:
    got = _NULLABLE.get(e.seq)
    if got is None:
        if e.kind in ("empty", "atom"):
            got = False
        elif e.kind == "eps":
            got = True
        elif e.kind == "union":
            got = any(_nullable(c) for c in e.children)
        elif e.kind == "concat":
            got = _nullable(e.children[0]) and _nullable(e.children[1])
        else:  # star: zero or more repetitions
            got = True
        _NULLABLE[e.seq] = got
    return got


def _subsumes(a: RExpr, b: RExpr) -> bool:
    """Sound, incomplete syntactic test for L(a) <= L(b)."""
    if a is b or a is EMPTY:
        return True
    key = (a.seq, b.seq)
    got = _SUBSUMES.get(key)
    if got is not None:
        return got
    _SUBSUMES[key] = False  # cut off any accidental re-entry pessimistically
    if a.kind == "eps":
        got = _nullable(b)
    elif a.kind == "union":
        got = all(_subsumes(c, b) for c in a.children)
    elif b.kind == "union":
        got = any(_subsumes(a, c) for c in b.children)
    elif b.kind == "star":
        inner = b.children[0]
        if _subsumes(a, inner):
            got = True
        elif a.kind == "concat":
            got = _subsumes(a.children[0], b) and _subsumes(a.children[1], b)
        elif a.kind == "star":
            got = _subsumes(a.children[0], b)
        else:
            got = False
    elif a.kind == "atom" and b.kind == "atom":
        got = a.letters <= b.letters
    elif a.kind == "concat" and b.kind == "concat":
        got = (_subsumes(a.children[0], b.children[0])
               and _subsumes(a.children[1], b.children[1]))
    else:
        got = False
    _SUBSUMES[key] = got
    return got


def union(children: Iterable[RExpr]) -> RExpr:
    flat: list[RExpr] = []
    letter_pool: set[str] = set()
    saw_atom = False
    stack = list(children)[::-1]
    while stack:
        c = stack.pop()
        if c.kind == "union":
            stack.extend(reversed(c.children))
        elif c is EMPTY:
            continue
        elif c.kind == "atom":
            saw_atom = True
            letter_pool.update(c.letters)
        else:
            flat.append(c)
    if saw_atom:
        flat.append(atom(letter_pool))
    # Dedupe, order by digest, and drop summands a sibling subsumes.
    seen = set()
    uniq = []
    for c in sorted(flat, key=lambda n: n.digest):
        if c.seq not in seen:
            seen.add(c.seq)
            uniq.append(c)
    kept = []
    for i, c in enumerate(uniq):
        dominated = False
        for j, d in enumerate(uniq):
            if i == j:
                continue
            if _subsumes(c, d) and (not _subsumes(d, c) or j < i):
                dominated = True
                break
        if not dominated:
            kept.append(c)
    if not kept:
        return EMPTY
    if len(kept) == 1:
        return kept[0]
    key = ("union", tuple(c.seq for c in kept))
    return _intern(key, "union", None, tuple(kept), [c.digest for c in kept])


def concat(left: RExpr, right: RExpr) -> RExpr:
    if left is EMPTY or right is EMPTY:
        return EMPTY
    if left is EPS:
        return right
    if right is EPS:
        return left
    key = ("concat", left.seq, right.seq)
    return _intern(key, "concat", None, (left, right), [left.digest, right.digest])


def star(child: RExpr) -> RExpr:
    # Standard Kleene star: zero or more repetitions, so the empty word is in.
    if child is EMPTY or child is EPS:
        return EPS
    if child.kind == "star":
        return child
    key = ("star", child.seq)
    return _intern(key, "star", None, (child,), [child.digest])


# --- construction ------------------------------------------------------------

def build_ramseyan_expr(phi: Morphism, s: FiniteSemigroup, x: int) -> RExpr:
    """Expression for phi^-1(x) whose stars all sit on idempotent-pure languages.

    Runs the level construction for 3|S| rounds (enough for every preimage by
    the factorisation forest theorem), stopping sooner if the canonical forms
    reach a syntactic fixpoint, which the subsumption pruning makes reachable
    for degenerate semigroups.  Returns EMPTY when the preimage has no word.
    """
    n = s.size
    if not (0 <= x < n):
        raise ElementOutOfRange(f"{x} is not an element of the semigroup")
    t = s.table
    idem = idempotents(s)
    pairs: dict[int, list[tuple[int, int]]] = {tgt: [] for tgt in range(n)}
    for y in range(n):
        for z in range(n):
            pairs[t[y][z]].append((y, z))

    cur = {tgt: atom([a for a in phi.alphabet if phi(a) == tgt]) for tgt in range(n)}
    for _ in range(3 * n):
        nxt = {}
        for tgt in range(n):
            summands = [cur[tgt]]
            summands.extend(concat(cur[y], cur[z]) for (y, z) in pairs[tgt])
            if tgt in idem:
                summands.append(star(cur[tgt]))
            nxt[tgt] = union(summands)
        stable = all(nxt[tgt] is cur[tgt] for tgt in range(n))
        cur = nxt
        if stable:
            break
    return cur[x]


# --- analysis ----------------------------------------------------------------

def image(e: RExpr, phi: Morphism, s: FiniteSemigroup) -> frozenset[int]:
    """phi applied to every nonempty word of the language, by abstract evaluation."""
    t = s.table
    memo: dict[int, frozenset[int]] = {}

    def go(node: RExpr) -> frozenset[int]:
        got = memo.get(node.seq)
        if got is not None:
            return got
        if node.kind in ("empty", "eps"):
            out = frozenset()
        elif node.kind == "atom":
            out = frozenset(phi(a) for a in node.letters)
        elif node.kind == "union":
            out = frozenset().union(*(go(c) for c in node.children))
        elif node.kind == "concat":
            l, r = node.children
            lv, rv = go(l), go(r)
            out = frozenset(t[u][v] for u in lv for v in rv)
            # A nullable factor lets the other side's words through alone.
            if _nullable(r):
                out |= lv
            if _nullable(l):
                out |= rv
        else:  # star: close the child's image under product with itself
            base = go(node.children[0])
            closed = set(base)
            frontier = set(base)
            while frontier:
                nxt = {t[u][v] for u in closed for v in base} - closed
                closed |= nxt
                frontier = nxt
            out = frozenset(closed)
        memo[node.seq] = out
        return out

    return go(e)


def is_phi_ramseyan(e: RExpr, phi: Morphism, s: FiniteSemigroup) -> bool:
    """Every starred sublanguage maps to a single idempotent."""
    seen = set()
    stack = [e]
    while stack:
        node = stack.pop()
        if node.seq in seen:
            continue
        seen.add(node.seq)
        if node.kind == "star":
            img = image(node.children[0], phi, s)
            if len(img) != 1:
                return False
            (v,) = img
            if s.table[v][v] != v:
                return False
        stack.extend(node.children)
    return True


def _toposort(e: RExpr) -> list[RExpr]:
    order: list[RExpr] = []
    seen: set[int] = set()
    stack: list[tuple[RExpr, bool]] = [(e, False)]
    while stack:
        node, done = stack.pop()
        if done:
            order.append(node)
            continue
        if node.seq in seen:
            continue
        seen.add(node.seq)
        stack.append((node, True))
        stack.extend((c, False) for c in node.children)
    return order


_PROGRAMS: dict[int, tuple] = {}


def _program(e: RExpr) -> tuple:
    """Flattened instruction list for the span evaluator; cached per node."""
    got = _PROGRAMS.get(e.seq)
    if got is not None:
        return got
    order = _toposort(e)
    index = {node.seq: i for i, node in enumerate(order)}
    kinds = []
    arg_a = []
    arg_b = []
    flat: list[int] = []
    atoms: list[frozenset[str]] = []
    for node in order:
        if node.kind == "empty":
            kinds.append(0); arg_a.append(0); arg_b.append(0)
        elif node.kind == "eps":
            kinds.append(5); arg_a.append(0); arg_b.append(0)
        elif node.kind == "atom":
            kinds.append(1); arg_a.append(len(atoms)); arg_b.append(0)
            atoms.append(node.letters)
        elif node.kind == "union":
            kinds.append(2); arg_a.append(len(flat)); arg_b.append(len(node.children))
            flat.extend(index[c.seq] for c in node.children)
        elif node.kind == "concat":
            kinds.append(3)
            arg_a.append(index[node.children[0].seq])
            arg_b.append(index[node.children[1].seq])
        else:  # star
            kinds.append(4); arg_a.append(index[node.children[0].seq]); arg_b.append(0)
    prog = (tuple(kinds), tuple(arg_a), tuple(arg_b), tuple(flat), tuple(atoms))
    _PROGRAMS[e.seq] = prog
    return prog


def matches(e: RExpr, word: str) -> bool:
    """Membership by dynamic programming over subword spans (stars unroll as
    1..span repetitions)."""
    if len(word) < 1:
        raise EmptyWord("matches needs a nonempty word")
    kinds, arg_a, arg_b, flat, atoms = _program(e)
    masks = [0] * len(atoms)
    for slot, letters in enumerate(atoms):
        m = 0
        for i, ch in enumerate(word):
            if ch in letters:
                m |= 1 << i
        masks[slot] = m
    return bool(_kernels.span_match(kinds, arg_a, arg_b, flat, masks, len(word)))


def expr_stats(e: RExpr) -> dict:
    """Weighted height (+ counts 0; concat, star and constants count 1) and
    node counts over the shared DAG."""
    order = _toposort(e)
    height: dict[int, int] = {}
    for node in order:
        if not node.children:
            height[node.seq] = 1
        else:
            m = max(height[c.seq] for c in node.children)
            height[node.seq] = m if node.kind == "union" else m + 1
    return {
        "weighted_height": height[e.seq],
        "distinct_subexpressions": len(order),
        "distinct_non_union_rooted": sum(1 for n in order if n.kind != "union"),
    }


# --- concrete syntax ---------------------------------------------------------

_SPECIALS = set("+*()")


def parse(text: str) -> RExpr:
    """Parse `+`, juxtaposition, postfix `*`, parentheses, one-char letters."""
    pos = [0]

    def peek() -> Optional[str]:
        return text[pos[0]] if pos[0] < len(text) else None

    def take() -> str:
        ch = text[pos[0]]
        pos[0] += 1
        return ch

    def parse_union() -> RExpr:
        terms = [parse_concat()]
        while peek() == "+":
            take()
            terms.append(parse_concat())
        return union(terms)

    def parse_concat() -> RExpr:
        factors = [parse_factor()]
        while peek() is not None and peek() not in "+)":
            factors.append(parse_factor())
        out = factors[0]
        for f in factors[1:]:
            out = concat(out, f)
        return out

    def parse_factor() -> RExpr:
        ch = peek()
        if ch is None:
            raise UnknownLetter("unexpected end of expression")
        if ch == "(":
            take()
            inner = parse_union()
            if peek() != ")":
                raise UnknownLetter("missing closing parenthesis")
            take()
            node = inner
        elif ch not in _SPECIALS:
            node = atom([take()])
        else:
            raise UnknownLetter(f"unexpected {ch!r}")
        while peek() == "*":
            take()
            node = star(node)
        return node

    out = parse_union()
    if pos[0] != len(text):
        raise UnknownLetter(f"trailing input at offset {pos[0]}")
    return out


def to_string(e: RExpr) -> str:
    """Parenthesised concrete syntax matching `parse`."""

    def prec(node: RExpr) -> int:
        if node.kind == "union" or (node.kind == "atom" and len(node.letters) > 1):
            return 0
        if node.kind == "concat":
            return 1
        return 2

    def go(node: RExpr, min_prec: int) -> str:
        if node.kind == "empty":
            body = "<empty>"
        elif node.kind == "eps":
            body = "<eps>"
        elif node.kind == "atom":
            body = "+".join(sorted(node.letters))
        elif node.kind == "union":
            body = "+".join(go(c, 1) for c in node.children)
        elif node.kind == "concat":
            body = go(node.children[0], 1) + go(node.children[1], 1)
        else:
            body = go(node.children[0], 2) + "*"
        if prec(node) < min_prec:
            return "(" + body + ")"
        return body

    return go(e, 0)
