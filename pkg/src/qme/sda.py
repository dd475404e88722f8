"""Structure-preserving doubling iteration for X^2 + B X + C = 0.

The iteration runs on a quadruple (E, F, X, Y) started from
E0 = X0 = -B^-1 C and F0 = Y0 = -B^-1, and each step squares the
underlying pencil::

    E+ = E (I - Y X)^-1 E          F+ = F (I - X Y)^-1 F
    X+ = X + F (I - X Y)^-1 X E    Y+ = Y + E (I - Y X)^-1 Y F

For a validated problem, X_k decreases entrywise to the maximal
nonpositive solvent Phi and Y_k decreases to the dual solvent Psi, with
E_k, F_k >= 0 for k >= 1 and I - X_k Y_k, I - Y_k X_k nonsingular
M-matrices; the error after k steps is bounded by
Psi^(2^k) (-Phi) Phi^(2^k), so convergence is quadratic.  These facts
are checked at runtime (within rounding slack) when
``SdaOptions.check_invariants`` is set.
"""

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, SingularMatrix
from .io import format_matrix
from .linalg import MKind, classify_m, inf_norm
from .problem import dual_residual, nres

__all__ = [
    "SolveStatus",
    "SdaOptions",
    "SdaState",
    "InvariantRecord",
    "SolveReport",
    "init",
    "step",
    "solve",
    "error_bound_check",
]


class SolveStatus(Enum):
    CONVERGED = "Converged"
    MAX_ITERATIONS = "MaxIterations"
    BREAKDOWN_SINGULAR = "BreakdownSingular"
    INVARIANT_VIOLATED = "InvariantViolated"


@dataclass
class SdaOptions:
    """Stopping rule and instrumentation for :func:`solve`.

    The iteration stops once the normalized residual of X_k drops below
    ``tol`` or after ``kmax`` steps.  ``check_invariants`` verifies the
    sign, monotonicity, and M-matrix properties of each iterate;
    ``track_history`` records per-step residuals and iterates.
    """

    tol: float = 1e-12
    kmax: int = 1000
    check_invariants: bool = True
    track_history: bool = True

    def __post_init__(self):
        if not self.tol > 0.0:
            raise ValueError("tol must be positive")
        if self.kmax < 1:
            raise ValueError("kmax must be at least 1")


@dataclass
class SdaState:
    """Doubling iterate (E_k, F_k, X_k, Y_k) after k steps."""

    E: np.ndarray
    F: np.ndarray
    X: np.ndarray
    Y: np.ndarray
    k: int


@dataclass(frozen=True)
class InvariantRecord:
    """Outcome of one runtime invariant check at step k.

    ``margin`` is the signed slack by which the check held (negative
    means violated); its scale depends on the check.
    """

    k: int
    name: str
    passed: bool
    margin: float


@dataclass
class SolveReport:
    """Result of a solver run.

    ``history`` holds (k, nres, dual_nres) per recorded iterate, with
    ``dual_nres`` None for methods that do not track a dual iterate.
    ``phi`` and ``psi`` are the final iterates (psi None for the
    fixed-point methods); ``xs``/``ys`` retain per-step iterates when
    history tracking is on.
    """

    status: SolveStatus
    iterations: int
    history: List[Tuple[int, float, Optional[float]]] = field(default_factory=list)
    invariant_log: List[InvariantRecord] = field(default_factory=list)
    phi: Optional[np.ndarray] = None
    psi: Optional[np.ndarray] = None
    method: str = "sda"
    final_nres: float = float("nan")
    xs: Optional[List[np.ndarray]] = None
    ys: Optional[List[np.ndarray]] = None

    def to_json_dict(self):
        doc = {
            "method": self.method,
            "status": self.status.value,
            "iterations": self.iterations,
            "final_nres": self.final_nres,
            "history": [
                [k, r, d] for (k, r, d) in self.history
            ],
        }
        doc["phi"] = format_matrix(self.phi) if self.phi is not None else None
        doc["psi"] = format_matrix(self.psi) if self.psi is not None else None
        return doc

    def to_json(self, indent=2):
        return json.dumps(self.to_json_dict(), indent=indent)


def init(p):
    """Initial doubling quadruple: E0 = X0 = -B^-1 C, F0 = Y0 = -B^-1."""
    n = p.n
    handle = _kernels.lu_factor(p.B)
    sol = _kernels.lu_solve_factored(handle, np.hstack([p.C, np.eye(n)]))
    x0 = -sol[:, :n]
    y0 = -sol[:, n:]
    return SdaState(E=x0.copy(), F=y0.copy(), X=x0, Y=y0, k=0)


def step(s):
    """One doubling step; raises :class:`SingularMatrix` on breakdown."""
    e1, f1, x1, y1 = _kernels.doubling_step(s.E, s.F, s.X, s.Y)
    return SdaState(E=e1, F=f1, X=x1, Y=y1, k=s.k + 1)


def _check_invariants(state, prev, tolm, log):
    """Run the per-step structure checks; append records, return overall pass."""
    k = state.k
    checks = []

    def sign_check(name, margin):
        checks.append((name, float(margin) >= 0.0, float(margin)))

    sign_check("X_nonpositive", -state.X.max() + tolm)
    sign_check("Y_nonpositive", -state.Y.max() + tolm)
    if k >= 1:
        # E0 = -B^-1 C and F0 = -B^-1 are nonpositive by hypothesis;
        # nonnegativity of E, F only holds from the first step on
        sign_check("E_nonnegative", state.E.min() + tolm)
        sign_check("F_nonnegative", state.F.min() + tolm)
        sign_check("X_monotone_nonincreasing", -(state.X - prev.X).max() + tolm)
        sign_check("Y_monotone_nonincreasing", -(state.Y - prev.Y).max() + tolm)
    for name, w in (
        ("I_minus_XY_nonsingular_M", np.eye(state.X.shape[0]) - state.X @ state.Y),
        ("I_minus_YX_nonsingular_M", np.eye(state.X.shape[0]) - state.Y @ state.X),
    ):
        cls = classify_m(w)
        checks.append((name, cls.kind is MKind.NONSINGULAR_M, cls.s_minus_rho))
    all_ok = True
    for name, passed, margin in checks:
        log.append(InvariantRecord(k=k, name=name, passed=passed, margin=margin))
        all_ok &= passed
    return all_ok


def solve(p, opt=None):
    """Run the doubling iteration on a validated problem.

    Stops when nres(X_k) < tol (status Converged), after kmax steps
    (MaxIterations), when a step's inner solve breaks down
    (BreakdownSingular), or when a runtime structure check fails
    (InvariantViolated).  ``iterations`` counts doubling steps taken;
    the residual is evaluated before each step, so a problem whose
    initial iterate already meets the tolerance reports 0 iterations.
    """
    opt = opt or SdaOptions()
    state = init(p)
    tolm = 1e-10 * max(1.0, inf_norm(p.B))
    history = []
    log = []
    xs = [] if opt.track_history else None
    ys = [] if opt.track_history else None
    prev = None
    status = None
    r = float("nan")
    while True:
        r = nres(p, state.X)
        if opt.track_history:
            history.append((state.k, r, dual_residual(p, state.Y)))
            xs.append(state.X.copy())
            ys.append(state.Y.copy())
        if opt.check_invariants and not _check_invariants(state, prev, tolm, log):
            status = SolveStatus.INVARIANT_VIOLATED
            break
        if r < opt.tol:
            status = SolveStatus.CONVERGED
            break
        if state.k >= opt.kmax:
            status = SolveStatus.MAX_ITERATIONS
            break
        prev = state
        try:
            state = step(state)
        except SingularMatrix:
            status = SolveStatus.BREAKDOWN_SINGULAR
            break
    return SolveReport(
        status=status,
        iterations=state.k,
        history=history,
        invariant_log=log,
        phi=state.X,
        psi=state.Y,
        method="sda",
        final_nres=r,
        xs=xs,
        ys=ys,
    )


def error_bound_check(p, report, phi_ref, psi_ref):
    """Verify the doubling error bound along a recorded run.

    For each recorded step k >= 1 checks, entrywise and up to slack
    ``1e-10 * ||ref||_inf``::

        0 <= X_k - phi_ref <= psi_ref^(2^k) (-phi_ref) phi_ref^(2^k)
        0 <= Y_k - psi_ref <= phi_ref^(2^k) (-psi_ref) psi_ref^(2^k)

    Requires the report to have been produced with history tracking.
    Returns True when every recorded step satisfies both bounds.
    """
    if report.xs is None or report.ys is None:
        raise ValueError("error_bound_check needs a report with track_history set")
    phi_ref = np.asarray(phi_ref, dtype=np.float64)
    psi_ref = np.asarray(psi_ref, dtype=np.float64)
    if phi_ref.shape != (p.n, p.n) or psi_ref.shape != (p.n, p.n):
        raise DimensionMismatch("reference solvents must be n x n")
    slack_x = 1e-10 * inf_norm(phi_ref)
    slack_y = 1e-10 * inf_norm(psi_ref)
    phi_pow = phi_ref.copy()  # phi_ref^(2^0)
    psi_pow = psi_ref.copy()
    ok = True
    for k in range(1, len(report.xs)):
        phi_pow = phi_pow @ phi_pow  # phi_ref^(2^k)
        psi_pow = psi_pow @ psi_pow
        dx = report.xs[k] - phi_ref
        dy = report.ys[k] - psi_ref
        bx = psi_pow @ (-phi_ref) @ phi_pow
        by = phi_pow @ (-psi_ref) @ psi_pow
        ok &= bool((dx >= -slack_x).all() and (dx <= bx + slack_x).all())
        ok &= bool((dy >= -slack_y).all() and (dy <= by + slack_y).all())
    return ok
