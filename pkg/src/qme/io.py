"""Plain-text matrix serialization and problem-file loading.

Matrix text format: a header line ``rows cols`` followed by ``rows``
lines of ``cols`` whitespace-separated decimal floats (scientific
notation accepted).  The writer emits 17 significant digits so values
round-trip exactly.

A problem file is a JSON object with keys ``"B"`` and ``"C"`` and an
optional ``"A_tilde"``; each value is either an inline list of rows or a
path (relative to the JSON file) to a matrix text file.
"""

import json
import math
import os

import numpy as np

from .errors import InputError
from .problem import GeneralQme, QmeProblem, reduce_general, validate

__all__ = [
    "format_matrix",
    "parse_matrix",
    "save_matrix_text",
    "load_matrix_text",
    "load_problem",
]


def format_matrix(a):
    """Render a matrix in the text format with 17 significant digits."""
    arr = np.atleast_2d(np.asarray(a, dtype=np.float64))
    rows, cols = arr.shape
    lines = [f"{rows} {cols}"]
    for row in arr:
        lines.append(" ".join(f"{v:.17g}" for v in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text):
    """Parse the matrix text format; raises :class:`InputError` on malformed input."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InputError("empty matrix text")
    header = lines[0].split()
    if len(header) != 2:
        raise InputError(f"matrix header must be 'rows cols', got {lines[0]!r}")
    try:
        rows, cols = int(header[0]), int(header[1])
    except ValueError:
        raise InputError(f"matrix header must hold two integers, got {lines[0]!r}")
    if rows < 1 or cols < 1:
        raise InputError(f"matrix dimensions must be positive, got {rows}x{cols}")
    if len(lines) - 1 != rows:
        raise InputError(f"expected {rows} data lines, got {len(lines) - 1}")
    out = np.empty((rows, cols), dtype=np.float64)
    for i, line in enumerate(lines[1:]):
        parts = line.split()
        if len(parts) != cols:
            raise InputError(f"row {i}: expected {cols} entries, got {len(parts)}")
        try:
            values = [float(p) for p in parts]
        except ValueError as exc:
            raise InputError(f"row {i}: {exc}")
        if not all(math.isfinite(v) for v in values):
            raise InputError(f"row {i}: non-finite entry")
        out[i] = values
    return out


def save_matrix_text(path, a):
    """Write a matrix to ``path`` in the text format."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_matrix(a))


def load_matrix_text(path):
    """Read a matrix from a text-format file."""
    try:
        with open(path, "r", encoding="ascii") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read matrix file {path!r}: {exc}")
    return parse_matrix(text)


def _resolve_entry(value, key, base_dir):
    if isinstance(value, str):
        path = value if os.path.isabs(value) else os.path.join(base_dir, value)
        return load_matrix_text(path)
    if isinstance(value, list):
        try:
            arr = np.asarray(value, dtype=np.float64)
        except (TypeError, ValueError) as exc:
            raise InputError(f"{key}: inline matrix is not numeric: {exc}")
        if arr.ndim != 2:
            raise InputError(f"{key}: inline matrix must be a list of rows")
        if not np.isfinite(arr).all():
            raise InputError(f"{key}: non-finite entry")
        return arr
    raise InputError(f"{key}: expected a path string or a list of rows")


def load_problem(path):
    """Load and validate a problem file.

    Returns a validated :class:`QmeProblem`; when ``A_tilde`` is present
    the general form is reduced first.  Raises :class:`InputError` on
    malformed files and :class:`ValidationFailed` when the matrices
    violate a solvability hypothesis.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read problem file {path!r}: {exc}")
    except json.JSONDecodeError as exc:
        raise InputError(f"problem file {path!r} is not valid JSON: {exc}")
    if not isinstance(doc, dict):
        raise InputError("problem file must hold a JSON object")
    missing = {"B", "C"} - set(doc)
    if missing:
        raise InputError(f"problem file lacks required keys: {sorted(missing)}")
    unknown = set(doc) - {"B", "C", "A_tilde"}
    if unknown:
        raise InputError(f"problem file has unknown keys: {sorted(unknown)}")
    base_dir = os.path.dirname(os.path.abspath(path))
    b = _resolve_entry(doc["B"], "B", base_dir)
    c = _resolve_entry(doc["C"], "C", base_dir)
    if "A_tilde" in doc:
        a_tilde = _resolve_entry(doc["A_tilde"], "A_tilde", base_dir)
        return reduce_general(GeneralQme(A_tilde=a_tilde, B_tilde=b, C_tilde=c))
    return validate(b, c)
