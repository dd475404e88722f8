"""Shared oracles and generators for the test suite.

Oracles here deliberately use different code paths from the package
(math.fsum accumulation, dense eigenvalues, explicit inverses) so that
agreement is meaningful.
"""

import math

import numpy as np


def inf_norm_fsum(a):
    """Infinity norm via exact (fsum) row accumulation."""
    arr = np.atleast_2d(np.asarray(a, dtype=np.float64))
    return max(math.fsum(abs(float(v)) for v in row) for row in arr)


def nres_oracle(b, c, x):
    """Normalized residual recomputed with fsum-based norms."""
    r = x @ x + b @ x + c
    num = inf_norm_fsum(r)
    nx = inf_norm_fsum(x)
    den = nx * (nx + inf_norm_fsum(b)) + inf_norm_fsum(c)
    return num / den if den > 0.0 else 0.0


def eig_spectral_radius(a):
    """Spectral radius via the dense eigenvalue solver."""
    return float(np.max(np.abs(np.linalg.eigvals(np.asarray(a, dtype=float)))))


def tridiag(n, lo, d, hi):
    """Tridiagonal matrix with constant bands."""
    return (
        np.diag(np.full(n, float(d)))
        + np.diag(np.full(n - 1, float(hi)), 1)
        + np.diag(np.full(n - 1, float(lo)), -1)
    )


def raw_example1(n):
    """The (B, C) arrays of the first example family, unvalidated."""
    b = tridiag(n, -10.0, 30.0, -10.0)
    b[0, 0] = 20.0
    b[n - 1, n - 1] = 20.0
    c = tridiag(n, -5.0, 15.0, -5.0)
    return b, c


def raw_example2(n):
    """The (B, C) arrays of the second example family, unvalidated."""
    return tridiag(n, -1.0, 4.0, -1.0), np.eye(n)


def random_z_matrix(rng, n, margin_floor=1e-6):
    """Random Z-matrix A = s I - R with the classification margin s - rho(R)
    bounded away from the singular boundary (|margin| >= margin_floor),
    so that float classification cannot straddle it.

    Returns (A, s, R, margin) with R >= 0 and zero diagonal, so the
    splitting with s = max diagonal entry is exactly (s, R).
    """
    while True:
        r = rng.uniform(0.0, 1.0, size=(n, n))
        r[rng.uniform(size=(n, n)) < 0.35] = 0.0
        np.fill_diagonal(r, 0.0)
        rho = eig_spectral_radius(r)
        margin = rng.uniform(-0.8, 0.8) * max(rho, 1.0)
        if abs(margin) < margin_floor:
            continue
        s = rho + margin
        if s <= 0.0:
            continue
        return s * np.eye(n) - r, s, r, margin


def companion_solvent(b, c):
    """Solvent of X^2 + B X + C = 0 with spectrum inside the unit circle,
    built from the companion linearization — an algorithm wholly
    unrelated to doubling.

    L = [[0, I], [-C, -B]] has eigenpairs (lambda, [v; lambda v]) for
    lambda^2 v + lambda B v + C v = 0.  The n eigenvalues smallest in
    modulus (all strictly inside the unit circle, asserted) give
    X = V diag(lambda) V^-1.
    """
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    n = b.shape[0]
    top = np.hstack([np.zeros((n, n)), np.eye(n)])
    lin = np.vstack([top, np.hstack([-c, -b])])
    w, vecs = np.linalg.eig(lin)
    order = np.argsort(np.abs(w))
    stable = order[:n]
    assert np.abs(w[order[n - 1]]) < 1.0 - 1e-8, "no clean unit-circle split"
    v = vecs[:n, stable]
    x = v @ np.diag(w[stable]) @ np.linalg.inv(v)
    assert np.max(np.abs(x.imag)) < 1e-9
    return np.ascontiguousarray(x.real)


def companion_dual_solvent(b, c):
    """Solvent of C Y^2 + B Y + I = 0 with spectrum inside the unit
    circle, via the companion linearization of the reversed polynomial
    (requires C nonsingular)."""
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    n = b.shape[0]
    cinv = np.linalg.inv(c)
    top = np.hstack([np.zeros((n, n)), np.eye(n)])
    lin = np.vstack([top, np.hstack([-cinv, -cinv @ b])])
    w, vecs = np.linalg.eig(lin)
    order = np.argsort(np.abs(w))
    stable = order[:n]
    assert np.abs(w[order[n - 1]]) < 1.0 - 1e-8, "no clean unit-circle split"
    v = vecs[:n, stable]
    y = v @ np.diag(w[stable]) @ np.linalg.inv(v)
    assert np.max(np.abs(y.imag)) < 1e-9
    return np.ascontiguousarray(y.real)


def random_valid_problem(rng, n):
    """Random (B, C) satisfying all solvability hypotheses by construction.

    B = b0 I - R with R >= 0 and b0 beyond the max row sum, C diagonal
    positive; then B - C - I is strictly diagonally dominant with
    positive row sums, hence a nonsingular M-matrix, and B^-1 C >= 0
    because B^-1 >= 0 and C is a nonnegative diagonal.
    """
    r = rng.uniform(0.0, 1.0, size=(n, n))
    np.fill_diagonal(r, 0.0)
    c_diag = rng.uniform(0.1, 0.5, size=n)
    b0 = float(r.sum(axis=1).max()) + 1.0 + float(c_diag.max()) + rng.uniform(0.2, 1.0)
    b = b0 * np.eye(n) - r
    c = np.diag(c_diag)
    return b, c
