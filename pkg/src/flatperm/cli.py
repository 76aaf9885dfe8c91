"""Command-line front end.

Commands
--------
distribution   occurrence distribution for one n (enumeration or recurrence)
gpoly          the polynomial g_n, or g_n(1k) with --k
ctable         the polynomials c_{r,0..r}
rational       the rational closed form of G_r
witness        extremal and witness words with their occurrence counts
average        exact mean number of occurrences
avoiders       number of pattern-avoiding flattened permutations
verify         run a named verification suite

All big integers are emitted as decimal strings.  JSON output is
deterministic (sorted keys).  Exit status: 0 success, 1 a verification
failure, 2 usage or limit errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import perms
from .algebra import ConsistencyError, poly_json, xvpoly_json
from .checks import SUITE_NAMES, run_suite
from .genfun import Pipeline
from .recurrence import (
    avoider_count,
    average_occurrences,
    harmonic,
    shared_table,
)

RECURRENCE_NMAX = 30

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


class UsageError(ValueError):
    pass


def _parse_prefix(text: str) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad prefix {text!r}: expected comma-separated integers") from exc


def _emit(payload, args, csv_rows=None) -> None:
    if args.format == "csv":
        if csv_rows is None:
            raise UsageError("csv output is only available for scalar tables")
        buf = io.StringIO()
        writer = csv.writer(buf)
        for row in csv_rows:
            writer.writerow(row)
        text = buf.getvalue()
    else:
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_distribution(args) -> int:
    n = args.n
    prefix = _parse_prefix(args.prefix)
    if n < 1:
        raise UsageError("--n must be >= 1")
    if n <= args.limit:
        source = "oracle"
        if args.parallel:
            table = perms.distribution_parallel(n, prefix, args.limit)
        else:
            table = perms.distribution(n, prefix, args.limit)
        counts = table.counts
    elif n <= RECURRENCE_NMAX:
        source = "recurrence"
        t = shared_table(n)
        if prefix in ((), (1,)):
            poly = t.g(n)
        elif len(prefix) == 2 and prefix[0] == 1 and 2 <= prefix[1] <= n:
            poly = t.g1k(n, prefix[1])
        else:
            raise UsageError(
                f"prefix {list(prefix)} needs enumeration, but n={n} exceeds the limit {args.limit}"
            )
        counts = {r: c for r, c in enumerate(poly.coeffs) if c}
    else:
        raise UsageError(f"n={n} exceeds both the enumeration limit and the recurrence cap {RECURRENCE_NMAX}")
    payload = {
        "command": "distribution",
        "n": n,
        "prefix": list(prefix),
        "source": source,
        "counts": {str(r): str(c) for r, c in sorted(counts.items())},
        "total": str(sum(counts.values())),
    }
    rows = [("r", "count")] + [(r, c) for r, c in sorted(counts.items())]
    _emit(payload, args, csv_rows=rows)
    return EXIT_OK


def _cmd_gpoly(args) -> int:
    n = args.n
    if n < 1:
        raise UsageError("--n must be >= 1")
    if n > RECURRENCE_NMAX:
        raise UsageError(f"n={n} exceeds the recurrence cap {RECURRENCE_NMAX}")
    t = shared_table(n)
    if args.k is None:
        poly = t.g(n)
    else:
        if not 2 <= args.k <= n:
            raise UsageError(f"--k must lie in [2, {n}]")
        poly = t.g1k(n, args.k)
    payload = {"command": "gpoly", "n": n, "k": args.k, **poly_json(poly, "q")}
    _emit(payload, args)
    return EXIT_OK


def _cmd_ctable(args) -> int:
    r = args.r
    if r < 1:
        raise UsageError("--r must be >= 1")
    pipeline = Pipeline(r_max=r, order=args.order)
    ct = pipeline.c_table(r)
    payload = {
        "command": "ctable",
        "r": r,
        "polys": [poly_json(p, "x") for p in ct.polys],
    }
    _emit(payload, args)
    return EXIT_OK


def _cmd_rational(args) -> int:
    r = args.r
    if r < 0:
        raise UsageError("--r must be >= 0")
    pipeline = Pipeline(r_max=max(r, 1), order=args.order)
    gf = pipeline.rational_gf(r)
    payload = {
        "command": "rational",
        "r": r,
        "numerator": xvpoly_json(gf.numerator),
        "denominator": {
            "factor_1_minus_x_power": gf.s_power,
            "factor_1_minus_2x_power": gf.t_power,
        },
        "verified_order": pipeline.order,
    }
    _emit(payload, args)
    return EXIT_OK


def _cmd_witness(args) -> int:
    if (args.n is None) == (args.r is None):
        raise UsageError("give exactly one of --n (extremal word) or --r [--i] (witness word)")
    if args.n is not None:
        word = perms.max_pattern_perm(args.n)
        payload = {
            "command": "witness",
            "kind": "extremal",
            "n": args.n,
            "word": list(word),
            "occurrences": str(perms.count_13_2(word)),
            "maximum": str(perms.max_occurrences(args.n)),
        }
    else:
        i = args.r if args.i is None else args.i
        word = perms.witness_perm(args.r, i)
        payload = {
            "command": "witness",
            "kind": "prefix-witness",
            "r": args.r,
            "i": i,
            "word": list(word),
            "occurrences": str(perms.count_13_2(word)),
        }
    _emit(payload, args)
    return EXIT_OK


def _cmd_average(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    value = average_occurrences(args.n, shared_table(args.n))
    payload = {
        "command": "average",
        "n": args.n,
        "average": str(value),
        "harmonic_number": str(harmonic(args.n)),
    }
    _emit(payload, args)
    return EXIT_OK


def _cmd_avoiders(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    payload = {"command": "avoiders", "n": args.n, "count": str(avoider_count(args.n))}
    _emit(payload, args, csv_rows=[("n", "count"), (args.n, avoider_count(args.n))])
    return EXIT_OK


def _cmd_verify(args) -> int:
    results = run_suite(args.suite, oracle_nmax=args.n, r_max=args.rmax)
    for res in results:
        line = f"{'PASS' if res.passed else 'FAIL'}  {res.name}"
        if res.detail:
            line += f"  [{res.detail}]"
        print(line)
    passed = all(r.passed for r in results)
    payload = {
        "command": "verify",
        "suite": args.suite,
        "passed": passed,
        "checks": [
            {"name": r.name, "passed": r.passed, "detail": r.detail} for r in results
        ],
    }
    rows = [("name", "passed")] + [(r.name, r.passed) for r in results]
    if args.out or args.format == "csv":
        _emit(payload, args, csv_rows=rows)
    print(f"{'OK' if passed else 'FAILED'}: {sum(r.passed for r in results)}/{len(results)} checks passed")
    return EXIT_OK if passed else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flatperm",
        description="Exact distributions of the vincular pattern 13-2 in flattened permutations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", help="write the output to this path instead of stdout")

    p = sub.add_parser("distribution", help="occurrence distribution over S_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--prefix", default="", help="comma-separated flattened-word prefix, e.g. 1,3")
    p.add_argument("--limit", type=int, default=perms.DEFAULT_ENUM_LIMIT,
                   help="largest n enumerated exhaustively (hard error beyond)")
    p.add_argument("--parallel", action="store_true", help="enumerate across processes")
    common(p)
    p.set_defaults(fn=_cmd_distribution)

    p = sub.add_parser("gpoly", help="the polynomial g_n or g_n(1k)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    common(p)
    p.set_defaults(fn=_cmd_gpoly)

    p = sub.add_parser("ctable", help="the polynomials c_{r,0..r}")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--order", type=int, help="truncation order override")
    common(p)
    p.set_defaults(fn=_cmd_ctable)

    p = sub.add_parser("rational", help="rational closed form of G_r")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--order", type=int, help="truncation order override")
    common(p)
    p.set_defaults(fn=_cmd_rational)

    p = sub.add_parser("witness", help="extremal word (--n) or prefix witness (--r, --i)")
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--i", type=int)
    common(p)
    p.set_defaults(fn=_cmd_witness)

    p = sub.add_parser("average", help="exact mean occurrence count for S_n")
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(fn=_cmd_average)

    p = sub.add_parser("avoiders", help="count of 13-2-avoiding flattened permutations")
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(fn=_cmd_avoiders)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=SUITE_NAMES, default="all")
    p.add_argument("--n", type=int, default=7, help="bound for enumeration-backed checks")
    p.add_argument("--rmax", type=int, default=4, help="bound for pipeline checks")
    common(p)
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (UsageError, perms.EnumerationLimitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConsistencyError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
