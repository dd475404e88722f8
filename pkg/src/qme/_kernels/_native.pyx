# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementation of the hot linear-algebra kernels.

Mirrors ``_numpy.py`` call for call: the same LAPACK routines (dgetrf,
dgetrs) and BLAS routines (dgemm) are invoked on the same operands in the
same order, so both backends produce matching results.  Internally all
buffers are Fortran-ordered; inputs and outputs are C-ordered float64.
"""

import numpy as np

from libc.math cimport fabs
from scipy.linalg.cython_blas cimport dgemm
from scipy.linalg.cython_lapack cimport dgetrf, dgetrs

from ..errors import SingularMatrix

PIVOT_RTOL = 1e-13


cdef int _ld(double[::1, :] a) noexcept:
    # leading dimension of a Fortran-ordered (possibly column-sliced) view
    return <int> (a.strides[1] // sizeof(double))


cdef void _gemm(double alpha, double[::1, :] a, double[::1, :] b,
                double beta, double[::1, :] c) noexcept nogil:
    # c = alpha * a @ b + beta * c, all Fortran-ordered
    cdef int m = a.shape[0]
    cdef int k = a.shape[1]
    cdef int n = b.shape[1]
    cdef int lda = <int> (a.strides[1] // sizeof(double))
    cdef int ldb = <int> (b.strides[1] // sizeof(double))
    cdef int ldc = <int> (c.strides[1] // sizeof(double))
    cdef char trans = 78  # 'N'
    dgemm(&trans, &trans, &m, &n, &k, &alpha, &a[0, 0], &lda,
          &b[0, 0], &ldb, &beta, &c[0, 0], &ldc)


cdef int _factor_inplace(double[::1, :] a, int[::1] ipiv,
                         double eps_pivot) except -1:
    cdef int n = a.shape[0]
    cdef int m = a.shape[1]
    cdef int lda = _ld(a)
    cdef int info = 0
    cdef int i
    dgetrf(&n, &m, &a[0, 0], &lda, &ipiv[0], &info)
    if info < 0:
        raise ValueError(f"dgetrf: illegal argument {-info}")
    if info > 0:
        raise SingularMatrix(f"zero pivot at position {info}")
    for i in range(n):
        if fabs(a[i, i]) < eps_pivot:
            raise SingularMatrix(
                f"pivot below eps_pivot = {eps_pivot:.3e}"
            )
    return 0


cdef int _solve_inplace(double[::1, :] lu, int[::1] ipiv,
                        double[::1, :] b) except -1:
    cdef int n = lu.shape[0]
    cdef int nrhs = b.shape[1]
    cdef int lda = _ld(lu)
    cdef int ldb = _ld(b)
    cdef int info = 0
    cdef char trans = 78  # 'N'
    dgetrs(&trans, &n, &nrhs, &lu[0, 0], &lda, &ipiv[0], &b[0, 0],
           &ldb, &info)
    if info != 0:
        raise ValueError(f"dgetrs: illegal argument {-info}")
    return 0


def _eps_pivot(a, double pivot_rtol):
    if a.size == 0:
        return 0.0
    return pivot_rtol * float(np.abs(a).sum(axis=1).max())


def lu_factor(a, double pivot_rtol=PIVOT_RTOL):
    """LU-factor a square matrix with partial pivoting.

    Returns an opaque handle for :func:`lu_solve_factored`; raises
    :class:`SingularMatrix` on an exact zero pivot or when a pivot
    magnitude falls below ``pivot_rtol * ||a||_inf``.
    """
    a_np = np.asarray(a, dtype=np.float64)
    cdef double eps = _eps_pivot(a_np, pivot_rtol)
    af = np.array(a_np, dtype=np.float64, order="F", copy=True)
    ipiv = np.empty(af.shape[0], dtype=np.intc)
    _factor_inplace(af, ipiv, eps)
    return af, ipiv


def lu_solve_factored(handle, b):
    """Solve A x = b given a handle from :func:`lu_factor`."""
    af, ipiv = handle
    b_np = np.asarray(b, dtype=np.float64)
    shape = b_np.shape
    b2 = b_np.reshape(b_np.shape[0], -1) if b_np.ndim == 1 else b_np
    bf = np.array(b2, dtype=np.float64, order="F", copy=True)
    _solve_inplace(af, ipiv, bf)
    return np.ascontiguousarray(bf).reshape(shape)


def solve(a, b, double pivot_rtol=PIVOT_RTOL):
    """Solve A x = b by LU with partial pivoting."""
    return lu_solve_factored(lu_factor(a, pivot_rtol), b)


def doubling_step(e, f, x, y, double pivot_rtol=PIVOT_RTOL):
    """One doubling iteration on the quadruple (E, F, X, Y).

    Computes, with W1 = I - Y X and W2 = I - X Y::

        E+ = E W1^-1 E          F+ = F W2^-1 F
        X+ = X + F W2^-1 X E    Y+ = Y + E W1^-1 Y F

    Raises :class:`SingularMatrix` if W1 or W2 cannot be factored.
    """
    cdef int n = e.shape[0]
    ef = np.array(e, dtype=np.float64, order="F", copy=True)
    ff = np.array(f, dtype=np.float64, order="F", copy=True)
    xf = np.array(x, dtype=np.float64, order="F", copy=True)
    yf = np.array(y, dtype=np.float64, order="F", copy=True)

    w1 = np.eye(n, order="F")
    w2 = np.eye(n, order="F")
    _gemm(-1.0, yf, xf, 1.0, w1)  # w1 = I - Y X
    _gemm(-1.0, xf, yf, 1.0, w2)  # w2 = I - X Y

    r1 = np.empty((n, 2 * n), dtype=np.float64, order="F")
    r2 = np.empty((n, 2 * n), dtype=np.float64, order="F")
    cdef double[::1, :] r1v = r1
    cdef double[::1, :] r2v = r2
    r1[:, :n] = ef
    r2[:, :n] = ff
    _gemm(1.0, yf, ff, 0.0, r1v[:, n:])  # [E | Y F]
    _gemm(1.0, xf, ef, 0.0, r2v[:, n:])  # [F | X E]

    ipiv1 = np.empty(n, dtype=np.intc)
    ipiv2 = np.empty(n, dtype=np.intc)
    _factor_inplace(w1, ipiv1, _eps_pivot(w1, pivot_rtol))
    _solve_inplace(w1, ipiv1, r1v)
    _factor_inplace(w2, ipiv2, _eps_pivot(w2, pivot_rtol))
    _solve_inplace(w2, ipiv2, r2v)

    e1 = np.empty((n, n), dtype=np.float64, order="F")
    f1 = np.empty((n, n), dtype=np.float64, order="F")
    x1 = np.array(xf, order="F", copy=True)
    y1 = np.array(yf, order="F", copy=True)
    _gemm(1.0, ef, r1v[:, :n], 0.0, e1)  # E W1^-1 E
    _gemm(1.0, ff, r2v[:, :n], 0.0, f1)  # F W2^-1 F
    _gemm(1.0, ff, r2v[:, n:], 1.0, x1)  # X + F W2^-1 X E
    _gemm(1.0, ef, r1v[:, n:], 1.0, y1)  # Y + E W1^-1 Y F

    return (np.ascontiguousarray(e1), np.ascontiguousarray(f1),
            np.ascontiguousarray(x1), np.ascontiguousarray(y1))


def residual_quadratic(b, c, x):
    """Residual R(X) = X^2 + B X + C."""
    cdef int n = x.shape[0]
    # explicit copies: the typed memoryviews need writable buffers, and
    # callers may pass read-only (frozen) problem matrices
    bf = np.array(b, dtype=np.float64, order="F", copy=True)
    xf = np.array(x, dtype=np.float64, order="F", copy=True)
    t1 = np.empty((n, n), dtype=np.float64, order="F")
    t2 = np.empty((n, n), dtype=np.float64, order="F")
    _gemm(1.0, xf, xf, 0.0, t1)
    _gemm(1.0, bf, xf, 0.0, t2)
    return np.ascontiguousarray((t1 + t2) + np.asarray(c, dtype=np.float64))


def residual_dual(b, c, y):
    """Residual D(Y) = C Y^2 + B Y + I."""
    cdef int n = y.shape[0]
    bf = np.array(b, dtype=np.float64, order="F", copy=True)
    cf = np.array(c, dtype=np.float64, order="F", copy=True)
    yf = np.array(y, dtype=np.float64, order="F", copy=True)
    yy = np.empty((n, n), dtype=np.float64, order="F")
    t1 = np.empty((n, n), dtype=np.float64, order="F")
    t2 = np.empty((n, n), dtype=np.float64, order="F")
    _gemm(1.0, yf, yf, 0.0, yy)
    _gemm(1.0, cf, yy, 0.0, t1)
    _gemm(1.0, bf, yf, 0.0, t2)
    return np.ascontiguousarray((t1 + t2) + np.eye(n))
