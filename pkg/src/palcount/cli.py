"""Command-line front end for palcount."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .charsum import I_count, I_total, default_tolerance
from .classgroup import ClassLabel, decompose, default_group
from .errors import CountOverflowError, ExactRangeError, IntegralityError, SearchSpaceError
from .ffpoly import FieldSpec, parse_poly
from .sripm import S_count, SrimQuery, bounds
from .tables import FORMATS, TableSpec, render_table
from .verify import SUITES, run_suite

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_INTEGRALITY, EXIT_GUARD = 0, 1, 2, 3, 4


def _vector(text: str | None) -> tuple[int, ...]:
    if not text:
        return ()
    return tuple(int(v) for v in text.split(","))


def _dump(obj) -> None:
    print(json.dumps(obj, separators=(",", ":")))


def cmd_count(args) -> int:
    field = FieldSpec.of_order(args.q)
    leading = _vector(args.leading)
    if args.kind == "sripm":
        res = S_count(SrimQuery(field, args.n, leading), tol=args.tolerance)
        ending: tuple[int, ...] = ()
    else:
        ending = _vector(args.ending)
        if leading or ending:
            G = default_group(field, len(leading), len(ending))
            res = I_count(G, args.n, ClassLabel(leading, ending), tol=args.tolerance)
        else:
            res = I_total(field, args.n)
    _dump(
        {
            "q": args.q,
            "n": args.n,
            "ell": len(leading),
            "t": len(ending),
            "leading": list(leading),
            "ending": list(ending),
            "count": res.count,
            "residual": res.residual,
        }
    )
    return EXIT_OK


def cmd_table(args) -> int:
    sys.stdout.write(render_table(TableSpec(args.id, args.max_n), args.format, args.annotate))
    return EXIT_OK


def cmd_verify(args) -> int:
    scope = {}
    if args.suite == "tables":
        scope["max_n"] = args.max_n or 20
    else:
        scope["q"] = args.q
        if args.max_n:
            scope["max_n"] = args.max_n
        if args.suite == "oracle" and args.max_2n:
            scope["max_2n"] = args.max_2n
    report = run_suite(args.suite, **scope)
    _dump(report.to_json())
    return EXIT_OK if report.passed else EXIT_MISMATCH


def cmd_bounds(args) -> int:
    _dump(bounds(FieldSpec.of_order(args.q), args.n, args.ell).to_json())
    return EXIT_OK


def cmd_group(args) -> int:
    field = FieldSpec.of_order(args.q)
    gens = [parse_poly(g, field) for g in args.gens.split(",")] if args.gens else None
    G = decompose(field, args.ell, args.t, gens) if gens else default_group(field, args.ell, args.t)
    _dump(G.to_json())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="palcount",
        description="Exact counts of self-reciprocal irreducible polynomials and of irreducibles with prescribed coefficients.",
    )
    parser.add_argument(
        "--tolerance",
        type=float,
        default=None,
        help="integrality tolerance (default 1e-6, or $PALCOUNT_TOLERANCE)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count one instance")
    p.add_argument("kind", choices=["sripm", "irr"])
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True, help="half-degree for sripm, degree for irr")
    p.add_argument("--leading", help="comma-separated leading coefficients")
    p.add_argument("--ending", help="comma-separated ending coefficients b0,b1,... (irr only)")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("table", help="recompute one of the seven reference tables")
    p.add_argument("--id", type=int, required=True, choices=range(1, 8))
    p.add_argument("--max-n", type=int, default=20)
    p.add_argument("--format", choices=FORMATS, default="csv")
    p.add_argument("--annotate", action="store_true", help="add a note column for known printing errors")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--max-n", type=int)
    p.add_argument("--max-2n", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="error bounds and positivity threshold")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("group", help="show the cyclic decomposition of E^{l,t}")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--gens", help="comma-separated generator literals, e.g. 11,1012")
    p.set_defaults(func=cmd_group)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    saved = os.environ.get("PALCOUNT_TOLERANCE")
    try:
        # table and verify read the tolerance from the environment
        if args.tolerance is not None:
            os.environ["PALCOUNT_TOLERANCE"] = repr(args.tolerance)
        args.tolerance = default_tolerance()
        return args.func(args)
    except IntegralityError as exc:
        print(f"palcount: {exc}", file=sys.stderr)
        return EXIT_INTEGRALITY
    except (ExactRangeError, CountOverflowError, SearchSpaceError, OverflowError) as exc:
        print(f"palcount: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ValueError, ZeroDivisionError) as exc:
        print(f"palcount: {exc}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        if saved is None:
            os.environ.pop("PALCOUNT_TOLERANCE", None)
        else:
            os.environ["PALCOUNT_TOLERANCE"] = saved


if __name__ == "__main__":
    sys.exit(main())
