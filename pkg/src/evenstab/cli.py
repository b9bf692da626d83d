"""Command-line front end.

Subcommands::

    evenstab distance FILE            exact [[n,k,d]]_q parameters
    evenstab convert  FILE --to-h H   change the field, reporting d/d' bounds
    evenstab verify   FILE [--h H]    geometric checks of the expansion
    evenstab classify --task NAME     resumable classification searches

Exit codes: 0 success, 2 parse/usage error, 3 validation error, 4 budget
exceeded, 5 internal inconsistency (two independent computations of the
same quantity disagreed — must never happen).
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional, Sequence

from .errors import (
    BudgetExceededError,
    InternalInconsistencyError,
    ParseError,
    ValidationError,
)
from .geometry import (
    blocks_from_matrix,
    codim2_count_histogram,
    geometric_min_distance,
    verify_quantum_set,
)
from .gf2h import FieldSpec, TraceBasis
from .matrixfile import pretty_rows, read_matrix, render_matrix, write_matrix
from .report import ReportDocument
from .symcode import (
    DEFAULT_DISTANCE_BUDGET,
    StabiliserMatrix,
    convert,
    expand,
    is_pure,
    merge,
    minimum_distance,
    singleton_margin,
    symplectic_dual,
    symplectic_weight,
    CodeParameters,
)

__all__ = ["main"]


# ---------------------------------------------------------------------------
# shared helpers


def _validated(M: StabiliserMatrix) -> None:
    """Full validation; names the offending row pair (1-indexed) on failure."""
    M.validate()


def _parse_int_list(text: str, what: str) -> List[int]:
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise ParseError(f"{what} must be a comma-separated list of integers") from None


def _parse_partition(text: str) -> List[List[int]]:
    groups = [g for g in text.split(";") if g.strip()]
    if not groups:
        raise ParseError("empty partition")
    return [_parse_int_list(g, "partition group") for g in groups]


def _parse_basis(text: Optional[str], field: FieldSpec) -> Optional[TraceBasis]:
    if text is None:
        return None
    elements = _parse_int_list(text, "basis")
    return TraceBasis(field=field, elements=tuple(elements))


def _emit(report: ReportDocument, out=None) -> None:
    (out or sys.stdout).write(report.render())


def _weight_histogram(M: StabiliserMatrix, budget: int) -> List[int]:
    """Symplectic-weight distribution of the symplectic dual."""
    dual = symplectic_dual(M)
    dim = dual.gf2_dimension()
    if (1 << dim) > budget:
        raise BudgetExceededError(
            f"dual has 2^{dim} elements; figure budget is {budget}"
        )
    counts = [0] * (M.n + 1)
    for word in dual.iter_codewords():
        counts[symplectic_weight(word)] += 1
    return counts


# ---------------------------------------------------------------------------
# distance


def cmd_distance(args: argparse.Namespace) -> int:
    M = read_matrix(args.file)
    _validated(M)
    d = minimum_distance(M, args.budget)
    params = CodeParameters(n=M.n, k=M.k, d=d, q=M.field.q)
    report = ReportDocument("distance")
    report.add("file", args.file)
    report.add("q", M.field.q)
    report.add("modulus", M.field.modulus)
    report.add("n", M.n)
    report.add("r", M.r)
    report.add("k", M.k)
    report.add("d", d)
    report.add("pure", is_pure(M, d))
    report.add("singleton_margin", singleton_margin(params))
    report.add("mds", params.mds)
    if args.pretty:
        report.add_block("stabiliser (A | B), entries as generator powers", pretty_rows(M))
    if args.figure:
        counts = _weight_histogram(M, args.budget)
        from .figures import save_bar_chart

        save_bar_chart(
            args.figure,
            list(range(M.n + 1)),
            counts,
            title=f"symplectic weights of the dual ([[{M.n},{M.k},{d}]]_{M.field.q})",
            xlabel="symplectic weight",
            ylabel="dual vectors",
        )
        report.add("figure", args.figure)
    _emit(report)
    return 0


# ---------------------------------------------------------------------------
# convert


def cmd_convert(args: argparse.Namespace) -> int:
    M = read_matrix(args.file)
    _validated(M)
    h_in = M.field.h
    to_h = args.to_h
    basis_from = _parse_basis(args.basis_from, M.field)
    basis_to = _parse_basis(args.basis_to, FieldSpec(to_h)) if args.basis_to else None
    permutation = _parse_int_list(args.permute, "--permute") if args.permute else None
    partition = _parse_partition(args.partition) if args.partition else None
    out = convert(
        M,
        to_h,
        permutation,
        basis_from=basis_from,
        basis_to=basis_to,
        partition=partition,
    )
    d_in = minimum_distance(M, args.budget)
    d_out = minimum_distance(out, args.budget)

    report = ReportDocument("convert")
    report.add("file", args.file)
    report.add("from_q", M.field.q)
    report.add("to_q", out.field.q)
    report.add("n_in", M.n)
    report.add("n_out", out.n)
    report.add("d_in", d_in)
    report.add("d_out", d_out)
    checks: List[tuple] = []  # (finer d', coarser d, h) for d <= d' <= h d
    if to_h == 1:
        checks.append((d_out, d_in, h_in))
    elif h_in == 1:
        checks.append((d_in, d_out, to_h))
    else:
        d_bin = minimum_distance(expand(M, basis_from), args.budget)
        report.add("d_binary", d_bin)
        checks.append((d_bin, d_in, h_in))
        checks.append((d_bin, d_out, to_h))
    report.add("bound", "d <= d' <= h*d")
    holds = all(d <= dp <= h * d for dp, d, h in checks)
    report.add("bound_holds", holds)
    if args.out:
        write_matrix(out, args.out, comment=f"converted from {args.file}")
        report.add("out", args.out)
    report.add_block("converted matrix", render_matrix(out).splitlines())
    if args.pretty:
        report.add_block("converted (A | B), entries as generator powers", pretty_rows(out))
    _emit(report)
    if not holds:
        raise InternalInconsistencyError(
            "distance bound d <= d' <= h*d failed on a verified conversion"
        )
    return 0


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args: argparse.Namespace) -> int:
    M = read_matrix(args.file)
    _validated(M)
    B = expand(M) if M.field.h > 1 else M
    h = args.h if args.h is not None else M.field.h
    X = blocks_from_matrix(B, h)
    quantum = verify_quantum_set(X, method=args.method)
    # The geometry at granularity h describes the code merged over GF(2^h),
    # so that is the algebraic side of the cross-check.
    merged = B if h == 1 else merge(B, h)
    d_geom = geometric_min_distance(X, merged.k, budget=args.budget)
    d_alg = minimum_distance(merged, args.budget)

    report = ReportDocument("verify")
    report.add("file", args.file)
    report.add("q", M.field.q)
    report.add("h", h)
    report.add("merged_q", merged.field.q)
    report.add("n_blocks", X.n)
    report.add("ambient_dim", X.ambient_dim)
    report.add("block_ranks_ok", True)  # blocks_from_matrix validates ranks
    report.add("quantum_set", quantum)
    report.add("k", merged.k)
    report.add("d_geometric", d_geom)
    report.add("d_algebraic", d_alg)
    consistent = d_geom == d_alg
    report.add("consistent", consistent)
    if args.figure:
        hist = codim2_count_histogram(X)
        keys = sorted(hist)
        from .figures import save_bar_chart

        save_bar_chart(
            args.figure,
            keys,
            [hist[k] for k in keys],
            title="codim-2 subspaces by number of blocks counted",
            xlabel="blocks counted (all even iff quantum set)",
            ylabel="codim-2 subspaces",
        )
        report.add("figure", args.figure)
    _emit(report)
    if not consistent:
        raise InternalInconsistencyError(
            f"geometric distance {d_geom} != algebraic distance {d_alg}"
        )
    return 0


# ---------------------------------------------------------------------------
# classify


def cmd_classify(args: argparse.Namespace) -> int:
    from pathlib import Path

    from .classify import Census
    from .classify.tasks import run_four_solids, run_refutation, run_six_solids

    root = Path(args.out)
    if root.exists() and any(root.iterdir()) and not args.resume:
        raise ValidationError(
            f"census directory {root} is not empty; pass --resume to continue "
            f"from its sealed stages or choose a fresh --out"
        )
    census = Census(root)
    progress = (lambda msg: print(msg, file=sys.stderr)) if args.verbose else None
    if args.jobs != 1:
        print(
            f"note: --jobs {args.jobs} requested; stages run sequentially "
            f"(results are identical regardless of the worker split)",
            file=sys.stderr,
        )
    if args.task == "four-solids":
        summary = run_four_solids(census, progress=progress)
    elif args.task == "six-solids":
        summary = run_six_solids(census, progress=progress)
    else:
        summary = run_refutation(census, progress=progress, budget_dim=args.budget_dim)

    report = ReportDocument("classify")
    report.add("task", args.task)
    report.add("census", str(root))
    for key, value in summary.items():
        if key != "task":
            report.add(key, value)
    stages = census.summary()
    report.add_block(
        "census stages", [f"{name}: {count} records" for name, count in stages.items()]
    )
    if args.figure:
        from .figures import save_bar_chart

        save_bar_chart(
            args.figure,
            list(stages),
            list(stages.values()),
            title=f"census record counts ({args.task})",
            xlabel="stage",
            ylabel="records",
            rotation=30,
        )
        report.add("figure", args.figure)
    _emit(report)
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evenstab",
        description="Stabiliser codes over GF(2^h): distance, conversion, "
        "geometry, classification.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("distance", help="exact code parameters of a matrix file")
    p.add_argument("file")
    p.add_argument("--budget", type=int, default=DEFAULT_DISTANCE_BUDGET,
                   help="largest dual enumeration allowed")
    p.add_argument("--pretty", action="store_true",
                   help="also print the matrix with entries as generator powers")
    p.add_argument("--figure", metavar="PATH",
                   help="write a dual weight distribution chart to PATH")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("convert", help="expand/permute/merge to another field")
    p.add_argument("file")
    p.add_argument("--to-h", type=int, required=True, dest="to_h",
                   help="target extension degree (1 = binary expansion)")
    p.add_argument("--permute", metavar="J0,J1,...",
                   help="binary position permutation applied between expand and merge")
    p.add_argument("--partition", metavar="'0,3;1,6;...'",
                   help="explicit groups of binary positions for each merged symbol")
    p.add_argument("--basis-from", metavar="E1,E2,...",
                   help="trace-orthogonal basis of the source field")
    p.add_argument("--basis-to", metavar="E1,E2,...",
                   help="trace-orthogonal basis of the target field")
    p.add_argument("--out", metavar="FILE", help="write the converted matrix here")
    p.add_argument("--budget", type=int, default=DEFAULT_DISTANCE_BUDGET)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("verify", help="geometric verification of the expansion")
    p.add_argument("file")
    p.add_argument("--h", type=int, default=None,
                   help="block granularity (default: the field degree)")
    p.add_argument("--method", choices=("exhaustive", "gram"), default="exhaustive")
    p.add_argument("--budget", type=int, default=DEFAULT_DISTANCE_BUDGET)
    p.add_argument("--figure", metavar="PATH",
                   help="write the codim-2 counting histogram to PATH")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="resumable classification searches")
    p.add_argument("--task", required=True,
                   choices=("four-solids", "six-solids", "refute-714"))
    p.add_argument("--out", default="var/census",
                   help="census directory (default: var/census)")
    p.add_argument("--resume", action="store_true",
                   help="continue from sealed stages in --out")
    p.add_argument("--jobs", type=int, default=1,
                   help="worker count (informational; stages run sequentially)")
    p.add_argument("--budget-dim", type=int, default=26, dest="budget_dim",
                   help="largest affine solution space dimension to enumerate")
    p.add_argument("--verbose", action="store_true", help="progress to stderr")
    p.add_argument("--figure", metavar="PATH",
                   help="write a stage record count chart to PATH")
    p.set_defaults(func=cmd_classify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse usage errors exit with 2
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 3
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 4
    except InternalInconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
