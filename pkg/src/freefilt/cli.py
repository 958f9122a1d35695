"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 budget exceeded.  Reports go to stdout, timings and diagnostics to stderr.
The group-size cap can be raised with ``FREEFILT_GROUP_CAP``.
"""

from __future__ import annotations

import argparse
import json
import string
import sys

from .criteria import FiltrationKind, membership_violation
from .finite_series import FiniteGroupTable, filtration_series_finite
from .kerint import (
    KerIntError,
    cross_validate,
    cross_validate_words,
    kerint_finite,
    kerint_witness,
    random_words,
)
from .rings import RingError, parse_ring, prime_field
from .series import SeriesError, format_monomial, magnus_expand
from .unipotent import BudgetError, FullUnipotent, MatrixError, gnp
from .words import Alphabet, WordError, parse

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
DEFAULT_SEED = 0


class UsageError(Exception):
    pass


def _alphabet(spec: str | None, *exprs: str) -> Alphabet:
    if spec:
        return Alphabet.from_spec(spec)
    # default: a, b, ... up to the last lowercase letter mentioned
    used = [c.lower() for e in exprs for c in e if c.isalpha()]
    top = max(used, default="a")
    return Alphabet.standard(string.ascii_lowercase.index(top) + 1)


def _kind(args) -> FiltrationKind:
    return FiltrationKind(args.kind, args.p if args.kind != "lcs" else None)


def _emit(args, text: str, payload) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _group(args):
    if args.group == "Gnp":
        if args.p is None:
            raise UsageError("--group Gnp needs --p")
        return gnp(args.n, args.p)
    if args.group == "U":
        ring = parse_ring(args.ring) if args.ring else (prime_field(args.p) if args.p else None)
        if ring is None:
            raise UsageError("--group U needs --ring or --p")
        return FullUnipotent(ring, args.n)
    raise UsageError(f"unknown group {args.group!r}")


def _default_kind(desc, args) -> FiltrationKind:
    if args.kind:
        return _kind(args)
    if args.group == "Gnp":
        return FiltrationKind("lpc", args.p)
    ring = desc.ring
    if ring.variant == "F":
        return FiltrationKind("zass", ring.p)
    return FiltrationKind("lcs")


def cmd_expand(args) -> int:
    alphabet = _alphabet(args.gens, args.word)
    w = parse(alphabet, args.word)
    f = magnus_expand(w, parse_ring(args.ring), args.degree)
    _emit(args, str(f), f.to_json())
    return EXIT_OK


def cmd_member(args) -> int:
    alphabet = _alphabet(args.gens, args.word)
    kind = _kind(args)
    w = parse(alphabet, args.word)
    v = membership_violation(w, kind, args.n)
    if v is None:
        _emit(args, "member", {"member": True, "word": str(w), "kind": str(kind), "n": args.n})
        return EXIT_OK
    mono = format_monomial(v.index, alphabet)
    where = "0" if v.modulus == 0 else f"{v.modulus}Z"
    text = f"non-member, violation at I=({mono}): {v.value} ∉ {where}"
    _emit(args, text, {
        "member": False, "word": str(w), "kind": str(kind), "n": args.n,
        "violation": {"index": mono, "value": str(v.value), "modulus": v.modulus},
    })
    return EXIT_OK


def cmd_kerint(args) -> int:
    alphabet = _alphabet(args.gens, args.word)
    w = parse(alphabet, args.word)
    if args.group == "witness":
        if not args.kind:
            raise UsageError("--group witness needs --kind")
        chain = _kind(args).chain(args.n)
        target = f"witnesses of {chain}"
        killed = True if args.n == 1 else kerint_witness(w, chain)
    else:
        desc = _group(args)
        target = str(desc)
        killed = kerint_finite(w, desc)
    text = f"{w}: {'in' if killed else 'not in'} KerInt(S, {target})"
    _emit(args, text, {"word": str(w), "target": target, "killed": killed})
    return EXIT_OK


def _series(args):
    desc = _group(args)
    kind = _default_kind(desc, args)
    G = FiniteGroupTable.from_descriptor(desc)
    return desc, kind, filtration_series_finite(G, kind, name=str(desc))


def cmd_series(args) -> int:
    desc, kind, res = _series(args)
    _emit(args, f"{kind} series of {desc}: term sizes {res.sizes}", res.to_json())
    return EXIT_OK


def cmd_verify_series(args) -> int:
    desc, kind, res = _series(args)
    ok = res.trivial_by(args.n)
    payload = dict(res.to_json(), trivial_by_n=ok, n=args.n)
    status = "PASS" if ok else "FAIL"
    _emit(args, f"{status} {kind} series of {desc}: term sizes {res.sizes}", payload)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify_kerint(args) -> int:
    kind = _kind(args)
    alphabet = Alphabet.from_spec(args.gens)
    if args.random:
        words = random_words(alphabet, args.random, args.max_len, seed=args.seed)
        report = cross_validate_words(kind, args.n, words, args.mode)
        report.max_len = args.max_len
    else:
        report = cross_validate(kind, args.n, alphabet, args.max_len, args.mode)
    print(f"elapsed {report.elapsed:.3f}s", file=sys.stderr)
    if args.format == "json":
        print(report.to_json(timing=False))
    else:
        print(("PASS " if report.ok else "FAIL ") + report.summary())
        for ex in report.exemplars:
            print(f"  disagreement: {ex}")
    return EXIT_OK if report.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="freefilt", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--gens", help="generator names 'a,b' or a count '2'")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="Magnus expansion of a word")
    p.add_argument("--word", required=True)
    p.add_argument("--ring", default="Z")
    p.add_argument("--degree", type=int, required=True, help="truncation bound N")
    p.set_defaults(func=cmd_expand)

    def kind_args(q, required=True):
        q.add_argument("--kind", choices=("lcs", "zass", "lpc"), required=required)
        q.add_argument("--p", type=int)
        q.add_argument("--n", type=int, required=True)

    p = sub.add_parser("member", parents=[common], help="filtration membership by Magnus coefficients")
    kind_args(p)
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_member)

    def group_args(q):
        q.add_argument("--group", required=True, help="U, Gnp (or witness for kerint)")
        q.add_argument("--ring", help="ring for --group U, e.g. F2 or Z/4")

    p = sub.add_parser("kerint", parents=[common], help="kernel intersection for one word")
    kind_args(p, required=False)
    group_args(p)
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_kerint)

    p = sub.add_parser("series", parents=[common], help="filtration series of a finite group")
    kind_args(p, required=False)
    group_args(p)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("verify", help="verification harness")
    vsub = p.add_subparsers(dest="target", required=True)
    q = vsub.add_parser("kerint", parents=[common], help="Magnus criterion vs kernel intersection")
    kind_args(q)
    q.add_argument("--max-len", type=int, default=6)
    q.add_argument("--mode", choices=("exhaustive", "witness"), default="exhaustive")
    q.add_argument("--random", type=int, default=0, help="test this many random words instead")
    q.add_argument("--seed", type=int, default=DEFAULT_SEED)
    q.set_defaults(func=cmd_verify_kerint, gens="2")
    q = vsub.add_parser("series", parents=[common], help="series reaches 1 by term n")
    kind_args(q, required=False)
    group_args(q)
    q.set_defaults(func=cmd_verify_series)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "kind", None) in ("zass", "lpc") and args.p is None:
        print(f"error: --kind {args.kind} needs --p", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, WordError, RingError, SeriesError, MatrixError, KerIntError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
