"""Fixed-point baseline iterations for X^2 + B X + C = 0.

Both start from X0 = 0 and decrease entrywise to the maximal
nonpositive solvent, at a linear rate — they exist to make the doubling
solver's iteration counts comparable against simple one-step schemes:

- BL:  X_{k+1} = -(B + X_k)^-1 C
- BLL: X_{k+1} = -B^-1 (X_k^2 + C)   (the linearized variant; B is
  factored once and reused)

Stopping rule and reporting match :func:`qme.sda.solve`; the dual
iterate is not tracked, so ``psi`` is None and the history rows carry
None in the dual-residual slot.
"""

from enum import Enum

import numpy as np

from . import _kernels
from .errors import SingularMatrix
from .problem import nres
from .sda import SdaOptions, SolveReport, SolveStatus

__all__ = ["FixedPointKind", "fp_step", "fp_solve"]


class FixedPointKind(Enum):
    BL = "bl"
    BLL = "bll"


def fp_step(p, x, kind):
    """One fixed-point step of the chosen kind from iterate ``x``."""
    if kind is FixedPointKind.BL:
        return -_kernels.solve(p.B + x, p.C)
    if kind is FixedPointKind.BLL:
        return -_kernels.solve(p.B, x @ x + p.C)
    raise ValueError(f"unknown fixed-point kind {kind!r}")


def fp_solve(p, kind, opt=None):
    """Run a fixed-point iteration from X0 = 0 on a validated problem.

    Uses ``opt.tol``, ``opt.kmax``, and ``opt.track_history``;
    ``opt.check_invariants`` has no effect here (the structural
    invariants are specific to the doubling quadruple).
    """
    opt = opt or SdaOptions()
    x = np.zeros((p.n, p.n))
    handle = _kernels.lu_factor(p.B) if kind is FixedPointKind.BLL else None
    history = []
    xs = [] if opt.track_history else None
    k = 0
    status = None
    r = float("nan")
    while True:
        r = nres(p, x)
        if opt.track_history:
            history.append((k, r, None))
            xs.append(x.copy())
        if r < opt.tol:
            status = SolveStatus.CONVERGED
            break
        if k >= opt.kmax:
            status = SolveStatus.MAX_ITERATIONS
            break
        try:
            if kind is FixedPointKind.BLL:
                x = -_kernels.lu_solve_factored(handle, x @ x + p.C)
            else:
                x = fp_step(p, x, kind)
        except SingularMatrix:
            status = SolveStatus.BREAKDOWN_SINGULAR
            break
        k += 1
    return SolveReport(
        status=status,
        iterations=k,
        history=history,
        invariant_log=[],
        phi=x,
        psi=None,
        method=kind.value,
        final_nres=r,
        xs=xs,
        ys=None,
    )
