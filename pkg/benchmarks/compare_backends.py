"""Compare the compiled kernel backend against the NumPy fallback.

Times the doubling step in isolation and the full solve (invariant
checking off, so the kernels dominate) on the second built-in example
family across problem sizes, for both backends in one process — the
solver looks the kernels up at call time, so they can be swapped the
same way the import-time dispatcher selects them.

Usage: python benchmarks/compare_backends.py [--sizes 20,50,100,200] [--repeats 7]
"""

import argparse
import contextlib
import statistics
import time

import qme._kernels as kernels
from qme._kernels import _numpy as knp
from qme.problem import gen_example2
from qme.sda import SdaOptions, init, solve

try:
    from qme._kernels import _native as knat
except ImportError:
    knat = None

_KERNEL_NAMES = (
    "lu_factor",
    "lu_solve_factored",
    "solve",
    "doubling_step",
    "residual_quadratic",
    "residual_dual",
)


@contextlib.contextmanager
def use_backend(impl):
    saved = {name: getattr(kernels, name) for name in _KERNEL_NAMES}
    for name in _KERNEL_NAMES:
        setattr(kernels, name, getattr(impl, name))
    try:
        yield
    finally:
        for name, fn in saved.items():
            setattr(kernels, name, fn)


def time_step(impl, p, repeats):
    s = init(p)
    impl.doubling_step(s.E, s.F, s.X, s.Y)  # warm-up
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        impl.doubling_step(s.E, s.F, s.X, s.Y)
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def time_solve(impl, p, repeats):
    opt = SdaOptions(check_invariants=False, track_history=False)
    times = []
    iters = None
    with use_backend(impl):
        solve(p, opt)  # warm-up
        for _ in range(repeats):
            t0 = time.perf_counter()
            rep = solve(p, opt)
            times.append(time.perf_counter() - t0)
            iters = rep.iterations
    return statistics.median(times), iters


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="20,50,100,200",
                        help="comma-separated problem sizes")
    parser.add_argument("--repeats", type=int, default=7,
                        help="repetitions per measurement (median reported)")
    args = parser.parse_args(argv)
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]

    if knat is None:
        print("compiled backend unavailable; showing NumPy fallback only")
    backends = [("numpy", knp)] + ([("native", knat)] if knat else [])

    header = (
        f"{'n':>6}{'backend':>10}{'step_us':>12}{'solve_ms':>12}{'iters':>8}"
    )
    print(header)
    print("-" * len(header))
    for n in sizes:
        p = gen_example2(n)
        rows = []
        for name, impl in backends:
            step = time_step(impl, p, args.repeats)
            full, iters = time_solve(impl, p, args.repeats)
            rows.append((name, step, full, iters))
            print(
                f"{n:>6}{name:>10}{step * 1e6:>12.1f}{full * 1e3:>12.3f}{iters:>8}"
            )
        if len(rows) == 2:
            ratio = rows[0][1] / rows[1][1] if rows[1][1] else float("nan")
            print(f"{'':>6}{'ratio':>10}{ratio:>12.2f}x  (numpy step / native step)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
