"""Dense linear-algebra utilities.

Norms, LU solves, power iteration for spectral radii of nonnegative
matrices, entrywise sign tests, and M-matrix classification.  These are
the structural primitives the solvers build on: a Z-matrix is a square
real matrix with nonpositive off-diagonal entries, and writing it as
A = s I - N with N >= 0 entrywise, A is an M-matrix iff s >= rho(N),
nonsingular iff the inequality is strict.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, NoConvergence, SingularMatrix

PIVOT_RTOL = _kernels.PIVOT_RTOL

__all__ = [
    "PIVOT_RTOL",
    "as_matrix",
    "as_vector",
    "inf_norm",
    "lu_solve",
    "spectral_radius",
    "Relation",
    "is_entrywise",
    "MKind",
    "MClass",
    "classify_m",
]


def as_matrix(a, square=False):
    """Coerce to a C-ordered float64 2-d array.

    Raises :class:`DimensionMismatch` when the input is not 2-d (or not
    square, if ``square`` is set).
    """
    out = np.ascontiguousarray(a, dtype=np.float64)
    if out.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d array, got ndim={out.ndim}")
    if square and out.shape[0] != out.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got {out.shape}")
    return out


def as_vector(a):
    """Coerce to a C-ordered float64 1-d array."""
    out = np.ascontiguousarray(a, dtype=np.float64)
    if out.ndim != 1:
        raise DimensionMismatch(f"expected a 1-d array, got ndim={out.ndim}")
    return out


def inf_norm(a):
    """Infinity norm: max absolute row sum (max absolute entry for vectors)."""
    a = np.asarray(a, dtype=np.float64)
    if a.size == 0:
        return 0.0
    if a.ndim == 1:
        return float(np.max(np.abs(a)))
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a 1-d or 2-d array, got ndim={a.ndim}")
    return float(np.max(np.abs(a).sum(axis=1)))


def lu_solve(a, b):
    """Solve A x = b by LU with partial pivoting.

    ``b`` may be a vector or a matrix of stacked right-hand sides.  Raises
    :class:`SingularMatrix` when a pivot magnitude falls below
    ``PIVOT_RTOL * ||A||_inf`` and :class:`DimensionMismatch` on
    incompatible shapes.
    """
    a = as_matrix(a, square=True)
    b_arr = np.ascontiguousarray(b, dtype=np.float64)
    if b_arr.ndim not in (1, 2) or b_arr.shape[0] != a.shape[0]:
        raise DimensionMismatch(
            f"rhs shape {b_arr.shape} incompatible with matrix {a.shape}"
        )
    return _kernels.solve(a, b_arr)


def _power_radius(m, tol, maxiter):
    """Power iteration for rho(M), M >= 0; returns (estimate, settled).

    Iterate from the all-ones vector, normalized in the infinity norm,
    stopping when the iterate stalls to within ``tol``.  Exact two-cycles
    — which arise for irreducible matrices whose nonzero pattern is
    bipartite, where the plain iterate never settles — are detected by
    comparing against the iterate two steps back; the estimate then
    alternates between two values whose geometric mean is returned.
    ``settled`` is False when the budget runs out.
    """
    x = np.ones(m.shape[0])
    x_prev = None
    est_prev = 0.0
    est = 0.0
    for _ in range(maxiter):
        y = m @ x
        est = float(np.max(y))
        if est == 0.0:
            # the nonnegative iterate was annihilated: every closed walk
            # through its support has gain 0, so the radius is 0
            return 0.0, True
        xn = y / est
        if float(np.max(np.abs(xn - x))) <= tol:
            return est, True
        if x_prev is not None and float(np.max(np.abs(xn - x_prev))) <= tol:
            return float(math.sqrt(est * est_prev)), True
        x_prev = x
        est_prev = est
        x = xn
    return est, False


def spectral_radius(a, tol=1e-10, maxiter=200000):
    """Spectral radius rho(|A|) of the entrywise absolute value of ``a``.

    Power iteration on |A| from the all-ones vector, normalized in the
    infinity norm, stopping when the iterate stalls to within ``tol``.
    Bipartite nonzero patterns, where the iterate cycles with period two,
    are resolved by a two-steps-back comparison.  Patterns whose dominant
    strongly connected component has period three or more defeat that
    rescue; if the first pass exhausts its budget, a second pass runs on
    |A| + alpha*I with a small alpha > 0 — the positive diagonal makes
    every component aperiodic while moving the dominant eigenvalue of a
    nonnegative matrix by exactly alpha — and alpha is subtracted from
    the result.

    Raises :class:`NoConvergence` when both passes exhaust ``maxiter``.
    Near-bipartite patterns converge slowly (roughly ``n**2`` iterations
    for banded matrices of bandwidth ~1), hence the generous default
    budget.
    """
    m = np.abs(as_matrix(a, square=True))
    if m.size == 0:
        return 0.0
    est, settled = _power_radius(m, tol, maxiter)
    if settled:
        return est
    # est > 0 here (a vanishing iterate settles), and for a periodic
    # pattern it oscillates within a constant factor of rho, so it sets
    # a sane scale for the shift
    alpha = 0.05 * est
    shifted = m + alpha * np.eye(m.shape[0])
    est, settled = _power_radius(shifted, tol, maxiter)
    if settled:
        return max(est - alpha, 0.0)
    raise NoConvergence(
        f"power iteration did not settle within {maxiter} iterations"
    )


class Relation(Enum):
    """Entrywise sign relations for :func:`is_entrywise`."""

    GE0 = "ge0"
    LE0 = "le0"
    GT0 = "gt0"
    LT0 = "lt0"


def is_entrywise(a, relation, tol=0.0):
    """Test an entrywise sign relation with slack ``tol >= 0``.

    GE0 accepts entries >= -tol, LE0 accepts entries <= tol, GT0 requires
    entries > tol, LT0 requires entries < -tol.
    """
    arr = np.asarray(a, dtype=np.float64)
    if relation is Relation.GE0:
        return bool((arr >= -tol).all())
    if relation is Relation.LE0:
        return bool((arr <= tol).all())
    if relation is Relation.GT0:
        return bool((arr > tol).all())
    if relation is Relation.LT0:
        return bool((arr < -tol).all())
    raise ValueError(f"unknown relation {relation!r}")


class MKind(Enum):
    """Outcome of M-matrix classification."""

    NOT_Z = "NotZ"
    NOT_M = "NotM"
    SINGULAR_M = "SingularM"
    NONSINGULAR_M = "NonsingularM"


@dataclass(frozen=True)
class MClass:
    """Classification result.

    ``s_minus_rho`` is the margin s - rho(N) of the splitting
    A = s I - N with s = max_i a_ii (NaN when A is not a Z-matrix).
    For a nonsingular M-matrix, ``witness`` holds u = A^-1 e > 0, a
    strictly positive vector with A u > 0 — the standard certificate of
    nonsingularity.
    """

    kind: MKind
    s_minus_rho: float
    witness: Optional[np.ndarray] = None


def classify_m(a, tol=None):
    """Classify a square matrix as NotZ / NotM / SingularM / NonsingularM.

    Uses the splitting A = s I - N with s = max_i a_ii.  With the default
    ``tol = 1e-12 * max(1, ||A||_inf)``: off-diagonal entries above tol
    make the matrix NotZ; then s - rho(N) > tol gives NonsingularM,
    |s - rho(N)| <= tol gives SingularM, and anything further below is
    NotM (a Z-matrix that is not an M-matrix).
    """
    m = as_matrix(a, square=True)
    n = m.shape[0]
    if tol is None:
        tol = 1e-12 * max(1.0, inf_norm(m))
    diag = np.diag(m).copy()
    off = m.copy()
    np.fill_diagonal(off, 0.0)
    if float(off.max(initial=0.0)) > tol:
        return MClass(kind=MKind.NOT_Z, s_minus_rho=math.nan)
    s = float(diag.max())
    # N = s I - A, clipped at zero to absorb off-diagonal entries that
    # passed the Z test only up to rounding
    nmat = np.maximum(s * np.eye(n) - m, 0.0)
    rho = spectral_radius(nmat)
    margin = s - rho
    if margin > tol:
        try:
            u = lu_solve(m, np.ones(n))
        except SingularMatrix:
            # the margin test said nonsingular but elimination disagreed;
            # report the conservative class without a witness
            return MClass(kind=MKind.SINGULAR_M, s_minus_rho=margin)
        return MClass(kind=MKind.NONSINGULAR_M, s_minus_rho=margin, witness=u)
    if margin >= -tol:
        return MClass(kind=MKind.SINGULAR_M, s_minus_rho=margin)
    return MClass(kind=MKind.NOT_M, s_minus_rho=margin)
