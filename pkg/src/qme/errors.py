"""Exception types shared across the package."""


class QmeError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(QmeError):
    """Operands have incompatible or non-square shapes."""


class SingularMatrix(QmeError):
    """LU factorization hit an (almost) exactly singular matrix.

    Raised when a pivot falls below ``eps_pivot = pivot_rtol * ||A||_inf``.
    """


class NoConvergence(QmeError):
    """An iteration exhausted its budget without meeting its tolerance."""


class ValidationFailed(QmeError):
    """A problem violates one of the solvability hypotheses.

    ``reason`` names the first hypothesis that failed:

    - ``"BNotNonsingularM"``: B is not a nonsingular M-matrix.
    - ``"CNotM"``: C is not an (possibly singular) M-matrix.
    - ``"BinvCNotNonneg"``: B^-1 C has a negative entry.
    - ``"Cond3Fails"``: B - C - I is not a nonsingular M-matrix, so no
      positive vectors u, v with v <= u and (B - C)u >= u + v exist.
    - ``"ATildeNotPositiveDiagonal"``: the scaling matrix of a general
      problem is not diagonal with strictly positive diagonal.
    """

    def __init__(self, reason: str, message: str = ""):
        self.reason = reason
        super().__init__(f"{reason}: {message}" if message else reason)


class InputError(QmeError):
    """Malformed user input (files, CLI arguments, matrix text)."""
