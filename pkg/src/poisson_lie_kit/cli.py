"""Command line: ``poisson-lie-kit verify <suite> <file>`` and ``poisson-lie-kit kernel <algebra>``.

Exit status is 0 when every check passes, 1 when any check fails and 2 for
input errors.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .document import document_algebra, parse_input
from .errors import InputError, PoissonLieError
from .lie import builtin_algebra
from .poisson import KERNEL_MAP_MAX_DIM, kernel_map_matrix
from .report import emit_report
from .suites import SUITES, run_suite

SEED_ENV = "POISSON_LIE_KIT_SEED"
EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="poisson-lie-kit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run a verification suite on an input document")
    verify.add_argument("suite", choices=SUITES)
    verify.add_argument("file", type=Path)
    verify.add_argument("--format", choices=("human", "machine"), default="human")
    verify.add_argument("--seed", type=int, default=None, help=f"sampling seed (default: ${SEED_ENV}, then the document, then 0)")
    verify.add_argument("--samples", type=int, default=100, help="group-suite sample count")
    verify.add_argument("--tol-scale", type=float, default=1.0, help="multiplies every float tolerance")
    verify.add_argument("--out", type=Path, default=None, help="write the report here instead of stdout")

    kernel = sub.add_parser("kernel", help="exact rank and kernel dimension of the CYBE kernel map")
    kernel.add_argument("algebra", help="catalog name or path to an input document")
    kernel.add_argument("--max-dim", type=int, default=KERNEL_MAP_MAX_DIM)
    return parser


def _resolve_seed(flag: int | None) -> int | None:
    if flag is not None:
        return flag
    env = os.environ.get(SEED_ENV)
    if env is not None and env.strip():
        try:
            return int(env)
        except ValueError:
            raise InputError(f"{SEED_ENV}={env!r} is not an integer") from None
    return None


def _verify(args) -> int:
    text = args.file.read_text()
    doc = parse_input(text)
    report = run_suite(doc, args.suite, seed=_resolve_seed(args.seed), samples=args.samples, tol_scale=args.tol_scale)
    out = emit_report(report, args.format)
    if args.out is None:
        sys.stdout.write(out)
    else:
        args.out.write_text(out)
    return EXIT_PASS if report.overall else EXIT_FAIL


def _kernel(args) -> int:
    path = Path(args.algebra)
    algebra = document_algebra(parse_input(path.read_text())) if path.is_file() else builtin_algebra(args.algebra)
    km = kernel_map_matrix(algebra, max_dim=args.max_dim)
    n = algebra.dim
    print(f"algebra: {algebra.name or '(unnamed)'}  dim: {n}  map: {n**6} x {n**3}")
    print(f"rank: {km.rank}  kernel_dim: {km.kernel_dim}  reversed-order rank: {km.rank_reversed}")
    return EXIT_PASS if km.stable else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _verify(args) if args.command == "verify" else _kernel(args)
    except (OSError, InputError, PoissonLieError, KeyError) as exc:
        # any failure to turn the input into valid objects is an input error
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
