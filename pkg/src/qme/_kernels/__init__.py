"""Kernel backend selection.

The compiled extension (``_native``) is preferred when it has been built;
otherwise the NumPy/SciPy fallback (``_numpy``) is used.  Both implement
the same interface with the same LAPACK call sequence.  Set the
environment variable ``QME_BACKEND`` to ``native`` or ``numpy`` before
import to force a backend (``native`` raises ImportError when the
extension is unavailable).
"""

import os

_requested = os.environ.get("QME_BACKEND", "auto").strip().lower() or "auto"

if _requested in ("auto", "native"):
    try:
        from . import _native as _impl

        BACKEND = "native"
    except ImportError:
        if _requested == "native":
            raise
        from . import _numpy as _impl

        BACKEND = "numpy"
elif _requested == "numpy":
    from . import _numpy as _impl

    BACKEND = "numpy"
else:
    raise ValueError(
        f"unrecognized QME_BACKEND={_requested!r}; use 'auto', 'native' or 'numpy'"
    )

PIVOT_RTOL = _impl.PIVOT_RTOL
lu_factor = _impl.lu_factor
lu_solve_factored = _impl.lu_solve_factored
solve = _impl.solve
doubling_step = _impl.doubling_step
residual_quadratic = _impl.residual_quadratic
residual_dual = _impl.residual_dual


def get_backend():
    """Name of the active kernel backend: 'native' or 'numpy'."""
    return BACKEND
