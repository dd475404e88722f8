"""Problem container, hypothesis validation, residuals, and example generators.

The equation solved downstream is X^2 + B X + C = 0.  A validated
problem satisfies three hypotheses:

1. B is a nonsingular M-matrix,
2. C is an (possibly singular) M-matrix,
3. B^-1 C >= 0 entrywise and B - C - I is a nonsingular M-matrix.

Under these the equation has a maximal entrywise-nonpositive solvent Phi
with rho(|Phi|) < 1, and the dual equation C Y^2 + B Y + I = 0 has a
corresponding solvent Psi.  Hypothesis 3 is certified by the positive
pair u = (B - C - I)^-1 e, v = e, which satisfies (B - C) u = u + v.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, ValidationFailed
from .linalg import (
    MClass,
    MKind,
    Relation,
    as_matrix,
    classify_m,
    inf_norm,
    is_entrywise,
    lu_solve,
    spectral_radius,
)

__all__ = [
    "GeneralQme",
    "QmeProblem",
    "SolventCheck",
    "validate",
    "reduce_general",
    "nres",
    "dual_residual",
    "check_solvent",
    "gen_example1",
    "gen_example2",
]


def _freeze(arr):
    out = np.ascontiguousarray(arr, dtype=np.float64).copy()
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class GeneralQme:
    """General form A~ X^2 + B~ X + C~ = 0 with diagonal positive A~."""

    A_tilde: np.ndarray
    B_tilde: np.ndarray
    C_tilde: np.ndarray


@dataclass(frozen=True)
class QmeProblem:
    """A validated monic problem X^2 + B X + C = 0.

    ``u`` and ``v`` are the positive certificate vectors from hypothesis 3:
    v = e and u = (B - C - I)^-1 v, so (B - C) u = u + v > 0.
    """

    B: np.ndarray
    C: np.ndarray
    n: int
    u: np.ndarray
    v: np.ndarray


@dataclass(frozen=True)
class SolventCheck:
    """Diagnostics for a candidate solvent X of a validated problem."""

    residual_nres: float
    is_nonpositive: bool
    rho: float
    b_plus_phi_class: MClass
    b_plus_phi_minus_c_class: MClass
    bound_ok: bool


def validate(b, c):
    """Check the solvability hypotheses and build a :class:`QmeProblem`.

    Raises :class:`ValidationFailed` with ``reason`` naming the first
    failed hypothesis: ``BNotNonsingularM``, ``CNotM``,
    ``BinvCNotNonneg``, or ``Cond3Fails``.
    """
    b = as_matrix(b, square=True)
    c = as_matrix(c, square=True)
    if b.shape != c.shape:
        raise DimensionMismatch(f"B is {b.shape} but C is {c.shape}")
    n = b.shape[0]

    if classify_m(b).kind is not MKind.NONSINGULAR_M:
        raise ValidationFailed("BNotNonsingularM", "B must be a nonsingular M-matrix")
    c_kind = classify_m(c).kind
    if c_kind not in (MKind.NONSINGULAR_M, MKind.SINGULAR_M):
        raise ValidationFailed("CNotM", "C must be an M-matrix")

    binv_c = lu_solve(b, c)
    if not is_entrywise(binv_c, Relation.GE0, tol=1e-12 * max(1.0, inf_norm(binv_c))):
        raise ValidationFailed("BinvCNotNonneg", "B^-1 C has a negative entry")

    a3 = b - c - np.eye(n)
    if classify_m(a3).kind is not MKind.NONSINGULAR_M:
        raise ValidationFailed(
            "Cond3Fails", "B - C - I must be a nonsingular M-matrix"
        )
    v = np.ones(n)
    u = lu_solve(a3, v)
    if not is_entrywise(u, Relation.GT0):
        raise ValidationFailed("Cond3Fails", "certificate vector u is not positive")

    return QmeProblem(B=_freeze(b), C=_freeze(c), n=n, u=_freeze(u), v=_freeze(v))


def reduce_general(g):
    """Reduce the general form to a monic problem and validate it.

    Scales by A~^-1 (a row scaling since A~ is diagonal positive).
    Raises :class:`ValidationFailed` with reason
    ``ATildeNotPositiveDiagonal`` when the scaling matrix is not diagonal
    with strictly positive diagonal.
    """
    a = as_matrix(g.A_tilde, square=True)
    b = as_matrix(g.B_tilde, square=True)
    c = as_matrix(g.C_tilde, square=True)
    if a.shape != b.shape or a.shape != c.shape:
        raise DimensionMismatch(
            f"shapes differ: A~ {a.shape}, B~ {b.shape}, C {c.shape}"
        )
    d = np.diag(a).copy()
    if np.count_nonzero(a - np.diag(d)) or not is_entrywise(d, Relation.GT0):
        raise ValidationFailed(
            "ATildeNotPositiveDiagonal",
            "A_tilde must be diagonal with strictly positive diagonal",
        )
    return validate(b / d[:, None], c / d[:, None])


def nres(p, x):
    """Normalized residual of X for X^2 + B X + C = 0.

    ||X^2 + B X + C||_inf / (||X||_inf (||X||_inf + ||B||_inf) + ||C||_inf),
    taken as 0 when the denominator vanishes (X = 0 and C = 0).
    """
    x = as_matrix(x, square=True)
    if x.shape[0] != p.n:
        raise DimensionMismatch(f"X is {x.shape}, problem has n={p.n}")
    num = inf_norm(_kernels.residual_quadratic(p.B, p.C, x))
    nx = inf_norm(x)
    den = nx * (nx + inf_norm(p.B)) + inf_norm(p.C)
    return num / den if den > 0.0 else 0.0


def dual_residual(p, y):
    """Normalized residual of Y for the dual equation C Y^2 + B Y + I = 0.

    ||C Y^2 + B Y + I||_inf / (||Y||_inf (||Y||_inf ||C||_inf + ||B||_inf) + 1).
    """
    y = as_matrix(y, square=True)
    if y.shape[0] != p.n:
        raise DimensionMismatch(f"Y is {y.shape}, problem has n={p.n}")
    num = inf_norm(_kernels.residual_dual(p.B, p.C, y))
    ny = inf_norm(y)
    den = ny * (ny * inf_norm(p.C) + inf_norm(p.B)) + 1.0
    return num / den


def check_solvent(p, x):
    """Structural diagnostics for a candidate solvent X.

    For the maximal nonpositive solvent the theory gives: X <= 0,
    rho(|X|) < 1, B + X and B + X - C nonsingular M-matrices, and
    -X u <= u - B^-1 v for the problem's certificate pair (u, v).
    ``bound_ok`` reports the last inequality with slack
    ``1e-10 * max(1, ||u||_inf)``.
    """
    x = as_matrix(x, square=True)
    if x.shape[0] != p.n:
        raise DimensionMismatch(f"X is {x.shape}, problem has n={p.n}")
    res = nres(p, x)
    nonpos = is_entrywise(x, Relation.LE0, tol=1e-12 * max(1.0, inf_norm(x)))
    rho = spectral_radius(np.abs(x))
    slack = 1e-10 * max(1.0, inf_norm(p.u))
    bound_ok = bool(((-x @ p.u) <= p.u - lu_solve(p.B, p.v) + slack).all())
    return SolventCheck(
        residual_nres=res,
        is_nonpositive=nonpos,
        rho=rho,
        b_plus_phi_class=classify_m(p.B + x),
        b_plus_phi_minus_c_class=classify_m(p.B + x - p.C),
        bound_ok=bound_ok,
    )


def gen_example1(n):
    """Banded test family: B tridiagonal (-10, 30, -10) with 20 in the
    first and last diagonal entries, C tridiagonal (-5, 15, -5).

    Validates before returning; n = 2 fails hypothesis 3 (B - C - I is
    then [[4, -5], [-5, 4]], whose splitting margin is 4 - 5 < 0) and
    raises :class:`ValidationFailed`.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    b = (
        np.diag(np.full(n, 30.0))
        + np.diag(np.full(n - 1, -10.0), 1)
        + np.diag(np.full(n - 1, -10.0), -1)
    )
    b[0, 0] = 20.0
    b[n - 1, n - 1] = 20.0
    c = (
        np.diag(np.full(n, 15.0))
        + np.diag(np.full(n - 1, -5.0), 1)
        + np.diag(np.full(n - 1, -5.0), -1)
    )
    return validate(b, c)


def gen_example2(n):
    """Banded test family: B tridiagonal (-1, 4, -1), C identity."""
    if n < 2:
        raise ValueError("n must be at least 2")
    b = (
        np.diag(np.full(n, 4.0))
        + np.diag(np.full(n - 1, -1.0), 1)
        + np.diag(np.full(n - 1, -1.0), -1)
    )
    return validate(b, np.eye(n))
