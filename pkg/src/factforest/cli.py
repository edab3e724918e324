"""Command-line surface.

File formats: a semigroup file holds n on the first line then n rows of n
0-based indices (row a, column b gives a*b); a morphism file holds one
`<letter>=<index>` line per letter.  Words are raw argument strings of
single-character letters.  All machine output is JSON on stdout with sorted
keys; diagnostics go to stderr.  Exit codes: 0 success, 1 a verification
predicate failed (witness in the JSON), 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import compaction, det_splits, forest, labellings, oracle, rexp, splits
from .errors import FactForestError, NotAssociative
from .labellings import ALL_CUTS, INTERIOR_CUTS, Split, labelling_from_word
from .semigroups import FiniteSemigroup, Morphism, eval_word, green, make_morphism, make_semigroup


class _InputError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n")


def _load_semigroup(path: str) -> FiniteSemigroup:
    try:
        with open(path) as fh:
            tokens = fh.read().split()
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc}")
    if not tokens:
        raise _InputError(f"{path}: empty semigroup file")
    try:
        n = int(tokens[0])
        vals = [int(v) for v in tokens[1:]]
    except ValueError as exc:
        raise _InputError(f"{path}: {exc}")
    if len(vals) != n * n:
        raise _InputError(f"{path}: expected {n * n} entries, found {len(vals)}")
    try:
        return make_semigroup([vals[i * n:(i + 1) * n] for i in range(n)])
    except NotAssociative as exc:
        sys.stderr.write(json.dumps(
            {"error": "not_associative", "witness": list(exc.witness)}) + "\n")
        raise _InputError(f"{path}: table is not associative")
    except FactForestError as exc:
        raise _InputError(f"{path}: {exc}")


def _load_morphism(path: str, s: FiniteSemigroup) -> Morphism:
    pairs = {}
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc}")
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if len(line) < 3 or line[1] != "=":
            raise _InputError(f"{path}: bad morphism line {line!r}")
        try:
            pairs[line[0]] = int(line[2:])
        except ValueError:
            raise _InputError(f"{path}: bad image in {line!r}")
    try:
        return make_morphism(pairs, s)
    except FactForestError as exc:
        raise _InputError(f"{path}: {exc}")


def _interior_split(word: str, phi: Morphism, s: FiniteSemigroup, det: bool) -> Split:
    if len(word) < 2:
        return Split(())
    lab = labelling_from_word(word, phi, s, INTERIOR_CUTS)
    return det_splits.det_ramseyan_split(lab) if det else splits.ramseyan_split(lab)


def _green_dict(s: FiniteSemigroup) -> dict:
    g = green(s)
    return {
        "size": s.size,
        "identity": s.has_identity,
        "leq_L": [[int(v) for v in row] for row in g.leq_L],
        "leq_R": [[int(v) for v in row] for row in g.leq_R],
        "leq_J": [[int(v) for v in row] for row in g.leq_J],
        "classes_L": [list(c) for c in g.classes_L],
        "classes_R": [list(c) for c in g.classes_R],
        "classes_H": [list(c) for c in g.classes_H],
        "classes_D": [list(c) for c in g.classes_D],
        "regular_D": [bool(v) for v in g.regular_D],
        "group_H": [bool(v) for v in g.group_H],
        "idempotents": sorted(g.idempotents),
    }


def _cmd_green(args) -> int:
    _emit(_green_dict(_load_semigroup(args.semigroup)))
    return 0


def _cmd_split(args, det: bool) -> int:
    s = _load_semigroup(args.semigroup)
    phi = _load_morphism(args.morphism, s)
    sp = _interior_split(args.word, phi, s, det)
    out = sp.to_json_dict()
    if det:
        out["forward_ramseyan"] = True
    _emit(out)
    return 0


def _cmd_tree(args) -> int:
    s = _load_semigroup(args.semigroup)
    phi = _load_morphism(args.morphism, s)
    t = forest.factorisation_tree(args.word, phi, s)
    _emit({
        "tree": forest.tree_to_json_dict(t),
        "paren": forest.tree_to_paren(t),
        "height": forest.tree_height(t),
        "ramseyan": forest.is_ramseyan_tree(t, phi, s),
    })
    return 0


def _cmd_rexpr(args) -> int:
    s = _load_semigroup(args.semigroup)
    phi = _load_morphism(args.morphism, s)
    try:
        x = int(args.element)
    except ValueError:
        raise _InputError(f"element {args.element!r} is not an index")
    e = rexp.build_ramseyan_expr(phi, s, x)
    _emit({
        "element": x,
        "expression": None if e is rexp.EMPTY else rexp.to_string(e),
        "phi_ramseyan": rexp.is_phi_ramseyan(e, phi, s),
        "stats": rexp.expr_stats(e),
    })
    return 0


def _cmd_compact(args) -> int:
    s = _load_semigroup(args.semigroup)
    phi = _load_morphism(args.morphism, s)
    lab = labelling_from_word(args.word, phi, s, ALL_CUTS)
    comp = (compaction.compact_det(lab) if args.variant == "det"
            else compaction.compact_complete(lab))
    _emit(comp.to_json_dict())
    return 0


def _cmd_decode(args) -> int:
    try:
        with open(args.compacted) as fh:
            data = json.load(fh)
        s = make_semigroup(data["table"])
        elem_bits = (s.size - 1).bit_length() if s.size > 1 else 0
        comp = compaction.CompactedWord(
            variant=data["variant"],
            semigroup=s,
            npositions=len(data["bits"]),
            level_bits=max(1, elem_bits),
            elem_bits=elem_bits,
            bit_width=data["bit_width"],
            packed=tuple(int(b, 16) for b in data["bits"]),
        )
    except (OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
        raise _InputError(f"{args.compacted}: {exc}")
    decode = (compaction.decode_complete if comp.variant == compaction.COMPLETE
              else compaction.decode_det)
    value = decode(comp, args.x, args.y)
    _emit({"x": args.x, "y": args.y, "value": value})
    return 0


def _cmd_verify(args) -> int:
    s = _load_semigroup(args.semigroup)
    phi = _load_morphism(args.morphism, s)
    word = args.word
    report: dict = {"word": word, "size": s.size, "checks": {}}
    checks = report["checks"]
    ok = True

    def record(name: str, passed: bool, **extra) -> None:
        nonlocal ok
        checks[name] = {"ok": bool(passed), **extra}
        ok = ok and bool(passed)

    eval_word(phi, s, word)
    if len(word) >= 2:
        lab = labellings.labelling_from_word(word, phi, s, INTERIOR_CUTS)
        sp = splits.ramseyan_split(lab)
        res = labellings.is_ramseyan(sp, lab)
        record("ramseyan_split", res.ok and sp.height <= s.size,
               height=sp.height, bound=s.size,
               witness=list(res.witness) if res.witness else None)
        dsp = det_splits.det_ramseyan_split(lab)
        fres = labellings.is_forward_ramseyan(dsp, lab)
        record("det_split_forward_ramseyan", fres.ok and dsp.height <= s.size,
               height=dsp.height, bound=s.size,
               witness=list(fres.witness) if fres.witness else None)
    tree = forest.factorisation_tree(word, phi, s)
    record("tree", forest.tree_yield(tree) == word
           and forest.is_ramseyan_tree(tree, phi, s)
           and forest.tree_height(tree) <= 3 * s.size,
           height=forest.tree_height(tree), bound=3 * s.size)
    all_lab = labellings.labelling_from_word(word, phi, s, ALL_CUTS)
    for variant in ("deterministic", "complete"):
        rep = oracle.verify_compaction(all_lab, variant)
        budget = (compaction.det_bit_budget(s.size) if variant == "deterministic"
                  else compaction.complete_bit_budget(s.size))
        record(f"compaction_{variant}",
               rep["ok"] and rep["bit_width"] <= max(budget, 1),
               bit_width=rep["bit_width"], budget=max(budget, 1),
               mismatches=rep["mismatches"][:3])
    report["ok"] = ok
    _emit(report)
    return 0 if ok else 1


def _cmd_oracle(args) -> int:
    if args.oracle_cmd == "minheight":
        s = _load_semigroup(args.semigroup)
        phi = _load_morphism(args.morphism, s)
        mode = INTERIOR_CUTS if args.cuts == "interior" else ALL_CUTS
        lab = labelling_from_word(args.word, phi, s, mode)
        got = oracle.min_ramseyan_height(lab, args.cap)
        _emit({"cap": args.cap, "min_height": got})
        return 0
    if args.oracle_cmd == "enumerate":
        count = sum(1 for _ in oracle.enumerate_semigroups(args.n))
        _emit({"n": args.n, "count": count})
        return 0
    if args.oracle_cmd == "green":
        s = _load_semigroup(args.semigroup)
        g = oracle.green_bruteforce(s)
        lib = green(s)
        _emit({"agrees_with_library": g == lib, "green": _green_dict(s)})
        return 0 if g == lib else 1
    if args.oracle_cmd == "langupto":
        e = rexp.parse(args.expression)
        words = sorted(oracle.language_upto(e, list(args.alphabet), args.maxlen))
        _emit({"count": len(words), "words": words})
        return 0
    if args.oracle_cmd == "verifycompaction":
        s = _load_semigroup(args.semigroup)
        phi = _load_morphism(args.morphism, s)
        lab = labelling_from_word(args.word, phi, s, ALL_CUTS)
        variant = "complete" if args.variant == "complete" else "deterministic"
        rep = oracle.verify_compaction(lab, variant)
        _emit(rep)
        return 0 if rep["ok"] else 1
    raise _InputError(f"unknown oracle subcommand {args.oracle_cmd!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="factforest", description=__doc__)
    sub = p.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("green", help="Green's relations of a semigroup file")
    g.add_argument("semigroup")

    for name, hlp in (("split", "ramseyan split of a word's interior cuts"),
                      ("detsplit", "deterministic forward-ramseyan split"),
                      ("tree", "ramseyan factorisation tree"),
                      ("verify", "run every predicate and bound for the word")):
        q = sub.add_parser(name, help=hlp)
        q.add_argument("semigroup")
        q.add_argument("morphism")
        q.add_argument("word")

    r = sub.add_parser("rexpr", help="star-restricted expression for a preimage")
    r.add_argument("semigroup")
    r.add_argument("morphism")
    r.add_argument("element")

    c = sub.add_parser("compact", help="pack per-position records for a word")
    c.add_argument("semigroup")
    c.add_argument("morphism")
    c.add_argument("word")
    c.add_argument("--variant", choices=("det", "complete"), default="det")

    d = sub.add_parser("decode", help="decode sigma(x, y) from a compacted file")
    d.add_argument("compacted")
    d.add_argument("x", type=int)
    d.add_argument("y", type=int)

    o = sub.add_parser("oracle", help="brute-force ground truth")
    osub = o.add_subparsers(dest="oracle_cmd", required=True)
    m = osub.add_parser("minheight")
    m.add_argument("semigroup")
    m.add_argument("morphism")
    m.add_argument("word")
    m.add_argument("--cap", type=int, default=4)
    m.add_argument("--cuts", choices=("interior", "all"), default="interior")
    e = osub.add_parser("enumerate")
    e.add_argument("n", type=int)
    gg = osub.add_parser("green")
    gg.add_argument("semigroup")
    lu = osub.add_parser("langupto")
    lu.add_argument("expression")
    lu.add_argument("alphabet")
    lu.add_argument("maxlen", type=int)
    vc = osub.add_parser("verifycompaction")
    vc.add_argument("semigroup")
    vc.add_argument("morphism")
    vc.add_argument("word")
    vc.add_argument("--variant", choices=("det", "complete"), default="det")
    return p


_DISPATCH = {
    "green": _cmd_green,
    "split": lambda a: _cmd_split(a, det=False),
    "detsplit": lambda a: _cmd_split(a, det=True),
    "tree": _cmd_tree,
    "rexpr": _cmd_rexpr,
    "compact": _cmd_compact,
    "decode": _cmd_decode,
    "verify": _cmd_verify,
    "oracle": _cmd_oracle,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.cmd](args)
    except _InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except FactForestError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
