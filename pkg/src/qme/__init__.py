"""Solvers for the quadratic matrix equation X^2 + B X + C = 0.

For problems where B is a nonsingular M-matrix, C is an M-matrix,
B^-1 C >= 0, and B - C - I is a nonsingular M-matrix, the equation has
a maximal entrywise-nonpositive solvent Phi.  This package computes it
with a structure-preserving doubling iteration (quadratically
convergent) and two linearly convergent fixed-point baselines, checks
the theory's structural invariants at runtime, and ships a small
benchmark CLI (``qme run``).
"""

from ._kernels import get_backend
from .bernoulli import FixedPointKind, fp_solve, fp_step
from .errors import (
    DimensionMismatch,
    InputError,
    NoConvergence,
    QmeError,
    SingularMatrix,
    ValidationFailed,
)
from .io import (
    format_matrix,
    load_matrix_text,
    load_problem,
    parse_matrix,
    save_matrix_text,
)
from .linalg import (
    MClass,
    MKind,
    Relation,
    as_matrix,
    as_vector,
    classify_m,
    inf_norm,
    is_entrywise,
    lu_solve,
    spectral_radius,
)
from .problem import (
    GeneralQme,
    QmeProblem,
    SolventCheck,
    check_solvent,
    dual_residual,
    gen_example1,
    gen_example2,
    nres,
    reduce_general,
    validate,
)
from .sda import (
    InvariantRecord,
    SdaOptions,
    SdaState,
    SolveReport,
    SolveStatus,
    error_bound_check,
    init,
    solve,
    step,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "get_backend",
    # errors
    "QmeError",
    "DimensionMismatch",
    "SingularMatrix",
    "NoConvergence",
    "ValidationFailed",
    "InputError",
    # linalg
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
    # problem
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
    # io
    "format_matrix",
    "parse_matrix",
    "save_matrix_text",
    "load_matrix_text",
    "load_problem",
    # sda
    "SolveStatus",
    "SdaOptions",
    "SdaState",
    "InvariantRecord",
    "SolveReport",
    "init",
    "step",
    "solve",
    "error_bound_check",
    # fixed-point baselines
    "FixedPointKind",
    "fp_step",
    "fp_solve",
]
