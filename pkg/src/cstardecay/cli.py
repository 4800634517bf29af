"""Command-line front end: ``cstar-decay demo <example_id> ...``."""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .bounds import CROUZEIX, CROUZEIX_CONJECTURE
from .errors import DecayError
from .generators import EXAMPLES
from .harness import (
    BOUND_KINDS,
    DEMO_CONFIGS,
    F_NAMES,
    PipelineParams,
    emit,
    run_pipeline,
)


def _floats(text: str) -> tuple:
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cstar-decay",
        description="Decay bounds for functions of matrices over C*-algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    demo = sub.add_parser("demo", help="run one example through evaluate, bound and verify")
    demo.add_argument("example_id", choices=sorted(EXAMPLES))
    demo.add_argument("--n", type=int, default=20, help="matrix order (default 20)")
    demo.add_argument("--seed", type=int, default=0, help="seed for the random examples")
    demo.add_argument("--f", dest="f_name", choices=F_NAMES,
                      help="function to apply (default: the example's first demo)")
    demo.add_argument("--bound", choices=BOUND_KINDS, help="bound family")
    group = demo.add_mutually_exclusive_group()
    group.add_argument("--chi", type=_floats, default=(),
                       help="comma-separated Bernstein parameters, e.g. 1.5,2,5,20")
    group.add_argument("--R", type=_floats, default=(),
                       help="comma-separated Taylor-disk radii")
    demo.add_argument("--Q", type=float, default=CROUZEIX,
                      choices=(CROUZEIX, CROUZEIX_CONJECTURE),
                      help="Crouzeix constant; 2 is conjectural and not certified")
    demo.add_argument("--grid", type=int, default=201, help="samples per function entry")
    demo.add_argument("--tol", type=float, default=1e-14, help="approximation tolerance")
    demo.add_argument("--degree", type=int, default=None, help="fixed polynomial degree")
    demo.add_argument("--textbook-constants", action="store_true",
                      help="use the textbook prefactors instead of the certified ones")
    demo.add_argument("--out", default=None, help="output directory or file")
    demo.add_argument("--format", choices=("csv", "json"), default="csv")
    demo.add_argument("--timing", action="store_true", help="include runtime in JSON output")

    sub.add_parser("list", help="list examples and their demo configurations")
    return parser


def _cmd_demo(args) -> int:
    f_name, kind, extra = DEMO_CONFIGS[args.example_id][0]
    f_name = args.f_name or f_name
    kind = args.bound or kind
    params = PipelineParams(n=args.n, seed=args.seed, chi=args.chi, R=args.R, Q=args.Q,
                            grid=args.grid, tol=args.tol,
                            degree=args.degree if args.degree is not None else extra.get("degree"),
                            strict=not args.textbook_constants)
    try:
        report = run_pipeline(args.example_id, f_name, kind, params)
    except DecayError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    status = "PASS" if report.passed else "FAIL"
    print(f"{status} {report.matrix_id} f={report.f_name} bound={report.bound_kind} "
          f"n={report.parameters['n']} max_violation_ratio={report.max_violation_ratio:.6g} "
          f"certificate={report.truncation_certificate:.3g} runtime_ms={report.runtime_ms:.1f}")
    if args.out:
        path = emit(report, args.format, args.out, timing=args.timing)
        print(f"wrote {path}")
    return 0 if report.passed else 1


def _cmd_list() -> int:
    for ex, info in EXAMPLES.items():
        print(f"{ex:7s} {info.description}")
        for f_name, kind, extra in DEMO_CONFIGS[ex]:
            opts = " ".join(f"{k}={v}" for k, v in extra.items())
            print(f"          --f {f_name} --bound {kind} {opts}".rstrip())
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "list":
        return _cmd_list()
    return _cmd_demo(args)


if __name__ == "__main__":
    sys.exit(main())
