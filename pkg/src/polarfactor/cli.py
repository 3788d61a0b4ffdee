"""Command-line surface: decompose, enriques, matrix, verify, scan.

Class input uses the grammar "n:m1,m2,..." everywhere.  Exit codes:
0 success, 1 a verification found a mismatch, 2 invalid input.
JSON output is deterministic (insertion-ordered keys, indent 2) and
round-trips byte-identically through json.loads/json.dumps.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .classify import scan
from .cluster import polar_cluster, render, singularity_cluster
from .decompose import PolarBranch, decompose
from .eqclass import EqClass, InvalidClassError, TheoremViolation, validate
from .intersect import intersection_report, verify_classes
from .oracle_series import verify_class

__all__ = ["main", "parse_class_spec"]


def parse_class_spec(text: str) -> EqClass:
    """Parse 'n:m1,m2,...' into a validated class."""
    head, sep, tail = text.partition(":")
    try:
        if not sep:
            raise ValueError
        n = int(head)
        ms = [int(x) for x in tail.split(",")]
    except ValueError:
        raise InvalidClassError(
            f"malformed class spec {text!r}: expected 'n:m1,m2,...'"
        ) from None
    return validate(n, ms)


def _class_payload(E: EqClass) -> dict:
    return {
        "multiplicity": E.multiplicity,
        "exponents": list(E.exponents),
        "gcds": list(E.gcds),
        "descents": list(E.descents),
        "genus": E.genus,
        "semigroup": list(E.semigroup),
        "conductor": E.conductor,
    }


def _branch_payload(b: PolarBranch) -> dict:
    return {
        "package": b.package,
        "depth": b.depth,
        "copy": b.copy,
        "p": b.p,
        "q": b.q,
        "case": b.case,
        "multiplicity": b.multiplicity,
        "genus": b.genus,
        "exponents": list(b.exponents),
        "canonical": (
            [b.canonical.multiplicity, *b.canonical.exponents]
            if b.canonical is not None
            else [1]
        ),
    }


def _intersections_payload(E: EqClass) -> dict:
    rep = intersection_report(E)
    size = len(rep.branches)
    pairs = [
        {"a": a, "b": c, "value": rep.matrix[a][c]}
        for a in range(size)
        for c in range(a + 1, size)
    ]
    return {
        "pairs": pairs,
        "with_curve": list(rep.with_curve),
        "total": rep.total,
    }


def _decompose_payload(E: EqClass) -> dict:
    return {
        "class": _class_payload(E),
        "packages": [
            {
                "index": pkg.index,
                "multiplicity": pkg.multiplicity,
                "polar_quotient": {
                    "num": pkg.quotient.numerator,
                    "den": pkg.quotient.denominator,
                },
                "branches": [_branch_payload(b) for b in pkg.branches],
            }
            for pkg in decompose(E).packages
        ],
        "intersections": _intersections_payload(E),
    }


def _print_decomposition_text(E: EqClass, matrix_only: bool) -> None:
    rep = intersection_report(E)
    names = [f"[{b.package},{b.depth},{b.copy}]" for b in rep.branches]
    if not matrix_only:
        print(
            f"{E}  multiplicity {E.multiplicity}  genus {E.genus}  "
            f"conductor {E.conductor}"
        )
        for pkg in decompose(E).packages:
            print(
                f"package {pkg.index}: multiplicity {pkg.multiplicity}, "
                f"polar quotient {pkg.quotient}, "
                f"{len(pkg.branches)} branch(es)"
            )
            for b in pkg.branches:
                body = str(b.canonical) if b.canonical is not None else "smooth"
                print(
                    f"  xi[{b.package},{b.depth},{b.copy}]  {body}  "
                    f"(p,q)=({b.p},{b.q})  raw {b.exponents}  "
                    f"mult {b.multiplicity}  genus {b.genus}"
                )
    for a in range(len(names)):
        for c in range(a + 1, len(names)):
            print(f"I({names[a]}, {names[c]}) = {rep.matrix[a][c]}")
    with_curve = ", ".join(
        f"{name}: {val}" for name, val in zip(names, rep.with_curve)
    )
    print(f"with curve: {with_curve}")
    print(
        f"total curve-polar intersection = {rep.total} "
        f"(milnor {E.milnor} + multiplicity {E.multiplicity} - 1)"
    )


def _cmd_decompose(args: argparse.Namespace) -> int:
    E = parse_class_spec(args.cls)
    if args.json:
        payload = (
            _intersections_payload(E)
            if args.matrix_only
            else _decompose_payload(E)
        )
        print(json.dumps(payload, indent=2))
    else:
        _print_decomposition_text(E, args.matrix_only)
    return 0


def _cmd_enriques(args: argparse.Namespace) -> int:
    E = parse_class_spec(args.cls)
    C = polar_cluster(E) if args.which == "polar" else singularity_cluster(E)
    print(render(C, "dot" if args.dot else "text"), end="")
    return 0


def _cmd_verify_cluster(args: argparse.Namespace) -> int:
    def progress(done: int) -> None:
        print(f"  ... {done} classes checked", file=sys.stderr)

    report = verify_classes(args.max_n, args.max_m, args.genus, progress)
    print(report.summary())
    return 0 if report.ok else 1


def _cmd_verify_series(args: argparse.Namespace) -> int:
    E = parse_class_spec(args.cls)
    try:
        report = verify_class(E, seed=args.seed, retries=args.retries)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(report.summary())
    return 0 if report.matched else 1


def _cmd_scan(args: argparse.Namespace) -> int:
    hits = list(scan(args.max_n, args.max_m, args.genus, args.predicate))
    if args.json:
        payload = {
            "predicate": args.predicate,
            "hits": [
                {
                    "class": hit.eqclass.notation(),
                    "lambda": hit.lam,
                    "max_branch_genus": hit.max_genus_of_branches,
                }
                for hit in hits
            ],
        }
        print(json.dumps(payload, indent=2))
    else:
        for hit in hits:
            print(
                f"{hit.eqclass.notation()}\t{hit.lam}\t{hit.max_genus_of_branches}"
            )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polarfactor",
        description=(
            "Equisingularity-type factorization of the general polar "
            "curve of an irreducible plane curve singularity."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    dec = sub.add_parser(
        "decompose",
        help="packages, branches, quotients and all intersection numbers",
    )
    dec.add_argument("cls", metavar="CLASS", help="class as 'n:m1,m2,...'")
    group = dec.add_mutually_exclusive_group()
    group.add_argument("--json", action="store_true", help="JSON output")
    group.add_argument("--text", action="store_true", help="text output (default)")
    dec.add_argument(
        "--matrix-only",
        action="store_true",
        help="emit only the intersection data",
    )
    dec.set_defaults(func=_cmd_decompose)

    mat = sub.add_parser("matrix", help="alias for decompose --matrix-only")
    mat.add_argument("cls", metavar="CLASS")
    group = mat.add_mutually_exclusive_group()
    group.add_argument("--json", action="store_true")
    group.add_argument("--text", action="store_true")
    mat.set_defaults(func=_cmd_decompose, matrix_only=True)

    enr = sub.add_parser("enriques", help="cluster diagram of the curve or polar")
    enr.add_argument("cls", metavar="CLASS")
    enr.add_argument(
        "--which",
        choices=("curve", "polar"),
        default="curve",
        help="which valuations to show (default: curve)",
    )
    enr.add_argument("--polar", dest="which", action="store_const", const="polar")
    group = enr.add_mutually_exclusive_group()
    group.add_argument("--dot", action="store_true", help="DOT graph output")
    group.add_argument("--text", action="store_true", help="text output (default)")
    enr.set_defaults(func=_cmd_enriques)

    ver = sub.add_parser("verify", help="run one of the verification oracles")
    vsub = ver.add_subparsers(dest="mode", required=True)
    vc = vsub.add_parser(
        "cluster",
        help="exhaustive closed-form vs Noether-oracle sweep over a bound",
    )
    vc.add_argument("--max-n", type=int, required=True)
    vc.add_argument("--max-m", type=int, default=60, help="bound on m_r (default 60)")
    vc.add_argument("--genus", type=int, default=None)
    vc.set_defaults(func=_cmd_verify_cluster)
    vs = vsub.add_parser("series", help="symbolic check of one class")
    vs.add_argument("cls", metavar="CLASS")
    vs.add_argument("--seed", type=int, default=None)
    vs.add_argument("--retries", type=int, default=5)
    vs.set_defaults(func=_cmd_verify_series)

    sc = sub.add_parser("scan", help="classes whose polar branches drop genus")
    sc.add_argument("predicate", choices=("genus-drop", "smooth"))
    sc.add_argument("--max-n", type=int, required=True)
    sc.add_argument("--max-m", type=int, required=True)
    sc.add_argument("--genus", type=int, default=None)
    sc.add_argument("--json", action="store_true", help="JSON instead of TSV")
    sc.set_defaults(func=_cmd_scan)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidClassError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TheoremViolation as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
