"""Benchmark command-line interface.

``qme run`` solves one problem instance with one or more methods and
reports per-method iteration counts, CPU time, and final normalized
residuals as a table, JSON, or CSV.  Exit status: 0 when every method
converged, 2 when any failed to converge, 1 on input errors (including
problems that fail hypothesis validation).
"""

import argparse
import json
import sys
import time
from dataclasses import dataclass
from typing import List, Optional

from . import io as qio
from .bernoulli import FixedPointKind, fp_solve
from .errors import InputError, QmeError, ValidationFailed
from .problem import gen_example1, gen_example2
from .sda import SdaOptions, SolveStatus, solve

__all__ = ["RunConfig", "BenchRow", "run", "render_table", "main"]

_METHODS = ("sda", "bl", "bll")

_EPILOG = """\
The environment variable QME_SEED is reserved for future use; every
computation here is deterministic and ignores it.  QME_BACKEND selects
the linear-algebra kernel backend ('native' or 'numpy').
"""


@dataclass
class RunConfig:
    """Parsed arguments for one benchmark run."""

    example: Optional[int] = None
    n: Optional[int] = None
    problem: Optional[str] = None
    methods: List[str] = None
    tol: float = 1e-12
    kmax: int = 1000
    out: Optional[str] = None
    format: str = "table"


@dataclass
class BenchRow:
    """One method's outcome on the benchmark problem."""

    method: str
    iterations: int
    cpu_seconds: float
    final_nres: float
    status: str


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors by default, but 2 is
    # reserved here for "did not converge"; remap usage errors to 1
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser():
    parser = _Parser(
        prog="qme",
        description="Benchmark solvers for X^2 + B X + C = 0 with M-matrix structure.",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    run_p = sub.add_parser(
        "run",
        help="solve one problem instance and report per-method results",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    src = run_p.add_mutually_exclusive_group(required=True)
    src.add_argument(
        "--example", type=int, choices=(1, 2), help="built-in example family"
    )
    src.add_argument("--problem", metavar="FILE", help="problem JSON file")
    run_p.add_argument(
        "--n", type=int, help="size for --example (required with it)"
    )
    run_p.add_argument(
        "--methods",
        default="sda",
        help="comma-separated subset of sda,bl,bll (default: sda)",
    )
    run_p.add_argument("--tol", type=float, default=1e-12, help="stopping tolerance")
    run_p.add_argument("--kmax", type=int, default=1000, help="iteration budget")
    run_p.add_argument(
        "--out", metavar="PREFIX", help="write per-method history CSVs and a summary"
    )
    run_p.add_argument(
        "--format",
        choices=("table", "json", "csv"),
        default="table",
        help="summary format (default: table)",
    )
    return parser


def _config_from_args(args):
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    if not methods:
        raise InputError("--methods must name at least one method")
    for m in methods:
        if m not in _METHODS:
            raise InputError(f"unknown method {m!r}; choose from {','.join(_METHODS)}")
    if args.example is not None:
        if args.n is None:
            raise InputError("--example requires --n")
        if args.n < 2:
            raise InputError("--n must be at least 2")
    if args.tol <= 0:
        raise InputError("--tol must be positive")
    if args.kmax < 1:
        raise InputError("--kmax must be at least 1")
    return RunConfig(
        example=args.example,
        n=args.n,
        problem=args.problem,
        methods=methods,
        tol=args.tol,
        kmax=args.kmax,
        out=args.out,
        format=args.format,
    )


def _load(cfg):
    if cfg.problem is not None:
        return qio.load_problem(cfg.problem), f"problem file {cfg.problem}"
    gen = gen_example1 if cfg.example == 1 else gen_example2
    return gen(cfg.n), f"example {cfg.example} (n={cfg.n})"


def run(cfg):
    """Solve the configured problem with each method.

    Returns (rows, reports) in the order requested.
    """
    p, _ = _load(cfg)
    opt = SdaOptions(tol=cfg.tol, kmax=cfg.kmax)
    rows = []
    reports = []
    for method in cfg.methods:
        t0 = time.perf_counter()
        if method == "sda":
            report = solve(p, opt)
        else:
            report = fp_solve(p, FixedPointKind(method), opt)
        dt = time.perf_counter() - t0
        rows.append(
            BenchRow(
                method=method,
                iterations=report.iterations,
                cpu_seconds=dt,
                final_nres=report.final_nres,
                status=report.status.value,
            )
        )
        reports.append(report)
    return rows, reports


def render_table(rows):
    """Fixed-width summary table; ``rows`` must be nonempty."""
    if not rows:
        raise ValueError("render_table needs at least one row")
    header = f"{'method':<8}{'iterations':>12}{'cpu_s':>12}{'final_nres':>16}  status"
    lines = [header, "-" * len(header)]
    for r in rows:
        lines.append(
            f"{r.method:<8}{r.iterations:>12d}{r.cpu_seconds:>12.4f}"
            f"{r.final_nres:>16.4e}  {r.status}"
        )
    return "\n".join(lines)


def _render_csv(rows):
    lines = ["method,iterations,cpu_seconds,final_nres,status"]
    for r in rows:
        lines.append(
            f"{r.method},{r.iterations},{r.cpu_seconds:.6f},"
            f"{r.final_nres:.17g},{r.status}"
        )
    return "\n".join(lines)


def _render_json(cfg, desc, rows):
    doc = {
        "problem": desc,
        "tol": cfg.tol,
        "kmax": cfg.kmax,
        "results": [
            {
                "method": r.method,
                "iterations": r.iterations,
                "cpu_seconds": r.cpu_seconds,
                "final_nres": r.final_nres,
                "status": r.status,
            }
            for r in rows
        ],
    }
    return json.dumps(doc, indent=2)


def _render(cfg, desc, rows):
    if cfg.format == "json":
        return _render_json(cfg, desc, rows)
    if cfg.format == "csv":
        return _render_csv(rows)
    return render_table(rows)


def _write_outputs(cfg, rows, reports):
    for row, report in zip(rows, reports):
        path = f"{cfg.out}.{row.method}.csv"
        with open(path, "w", encoding="ascii") as fh:
            if row.method == "sda":
                fh.write("k,nres,dual_nres\n")
                for k, r, d in report.history:
                    fh.write(f"{k},{r:.17g},{d:.17g}\n")
            else:
                fh.write("k,nres\n")
                for k, r, _ in report.history:
                    fh.write(f"{k},{r:.17g}\n")
    ext = {"table": "txt", "json": "json", "csv": "csv"}[cfg.format]
    with open(f"{cfg.out}.summary.{ext}", "w", encoding="ascii") as fh:
        fh.write(_render(cfg, _load_desc(cfg), rows) + "\n")


def _load_desc(cfg):
    if cfg.problem is not None:
        return f"problem file {cfg.problem}"
    return f"example {cfg.example} (n={cfg.n})"


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        rows, reports = run(cfg)
        if cfg.out:
            _write_outputs(cfg, rows, reports)
    except ValidationFailed as exc:
        print(f"qme: validation failed: {exc}", file=sys.stderr)
        return 1
    except (InputError, OSError) as exc:
        print(f"qme: {exc}", file=sys.stderr)
        return 1
    except QmeError as exc:
        print(f"qme: {exc}", file=sys.stderr)
        return 1
    print(_render(cfg, _load_desc(cfg), rows))
    if any(r.status != SolveStatus.CONVERGED.value for r in rows):
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
