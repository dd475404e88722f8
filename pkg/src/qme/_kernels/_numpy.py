"""Pure NumPy/SciPy implementation of the hot linear-algebra kernels.

This is the fallback backend; the compiled extension in ``_native.pyx``
implements the same interface with the same LAPACK call sequence, so the
two backends produce matching results.  All functions take and return
C-contiguous float64 arrays.
"""

import numpy as np
from scipy.linalg import lapack

from ..errors import SingularMatrix

PIVOT_RTOL = 1e-13


def _inf_norm(a):
    if a.size == 0:
        return 0.0
    return float(np.abs(a).sum(axis=1).max())


def lu_factor(a, pivot_rtol=PIVOT_RTOL):
    """LU-factor a square matrix with partial pivoting.

    Returns an opaque handle for :func:`lu_solve_factored`.  Raises
    :class:`SingularMatrix` when LAPACK reports an exact zero pivot or when
    any pivot magnitude falls below ``pivot_rtol * ||a||_inf``.
    """
    a = np.ascontiguousarray(a, dtype=np.float64)
    eps_pivot = pivot_rtol * _inf_norm(a)
    lu, piv, info = lapack.dgetrf(a)
    if info < 0:
        raise ValueError(f"dgetrf: illegal argument {-info}")
    if info > 0:
        raise SingularMatrix(f"zero pivot at position {info}")
    if np.min(np.abs(np.diag(lu))) < eps_pivot:
        raise SingularMatrix(
            f"pivot below eps_pivot = {eps_pivot:.3e} (rtol {pivot_rtol:.1e})"
        )
    return lu, piv


def lu_solve_factored(handle, b):
    """Solve A x = b given a handle from :func:`lu_factor`.

    ``b`` may be a vector or a matrix of stacked right-hand sides.
    """
    lu, piv = handle
    b = np.asarray(b, dtype=np.float64)
    b2 = b.reshape(b.shape[0], -1) if b.ndim == 1 else b
    # scipy's raw dgetrf/dgetrs pair uses 0-based pivots consistently.
    x, info = lapack.dgetrs(lu, piv, b2)
    if info != 0:
        raise ValueError(f"dgetrs: illegal argument {-info}")
    x = np.ascontiguousarray(x)
    return x.reshape(b.shape)


def solve(a, b, pivot_rtol=PIVOT_RTOL):
    """Solve A x = b by LU with partial pivoting."""
    return lu_solve_factored(lu_factor(a, pivot_rtol), b)


def doubling_step(e, f, x, y, pivot_rtol=PIVOT_RTOL):
    """One doubling iteration on the quadruple (E, F, X, Y).

    Computes, with W1 = I - Y X and W2 = I - X Y::

        E+ = E W1^-1 E          F+ = F W2^-1 F
        X+ = X + F W2^-1 X E    Y+ = Y + E W1^-1 Y F

    Raises :class:`SingularMatrix` if W1 or W2 cannot be factored.
    """
    n = e.shape[0]
    eye = np.eye(n)
    w1 = eye - y @ x
    w2 = eye - x @ y
    r1 = np.hstack([e, y @ f])
    r2 = np.hstack([f, x @ e])
    t1 = lu_solve_factored(lu_factor(w1, pivot_rtol), r1)
    t2 = lu_solve_factored(lu_factor(w2, pivot_rtol), r2)
    e1 = e @ t1[:, :n]
    f1 = f @ t2[:, :n]
    x1 = x + f @ t2[:, n:]
    y1 = y + e @ t1[:, n:]
    return e1, f1, x1, y1


def residual_quadratic(b, c, x):
    """Residual R(X) = X^2 + B X + C."""
    return (x @ x + b @ x) + c


def residual_dual(b, c, y):
    """Residual D(Y) = C Y^2 + B Y + I."""
    n = y.shape[0]
    return (c @ (y @ y) + b @ y) + np.eye(n)
