"""Text and JSON encodings shared by the state/filter modules and the CLI.

Numbers destined for tables and CSV go through fmt_num: 15 significant
digits, switching to scientific notation below 1e-4 in magnitude so small
witness eigenvalues stay readable.  Matrices travel as nested [re, im]
pairs.
"""

import numpy as np

from .errors import ParseError


def fmt_num(v: float, sig: int = 15) -> str:
    """Format with `sig` significant digits; scientific below 1e-4."""
    v = float(v)
    if v == 0.0:
        return "0"
    if abs(v) < 1e-4:
        return f"{v:.{sig - 1}e}"
    return f"{v:.{sig}g}"


def matrix_to_pairs(m: np.ndarray):
    """Nested-list [re, im] encoding of a complex matrix."""
    return [
        [[float(x.real), float(x.imag)] for x in row] for row in np.asarray(m)
    ]


def pairs_to_matrix(obj, what: str = "matrix") -> np.ndarray:
    """Decode the [re, im] nested-list encoding, validating shape as we go."""
    if not isinstance(obj, list) or not obj:
        raise ParseError(f"{what}: expected a non-empty list of rows")
    ncols = None
    rows = []
    for r, row in enumerate(obj):
        if not isinstance(row, list):
            raise ParseError(f"{what} row {r}: expected a list")
        if ncols is None:
            ncols = len(row)
        elif len(row) != ncols:
            raise ParseError(
                f"{what} row {r}: has {len(row)} entries, expected {ncols}"
            )
        vals = []
        for c, cell in enumerate(row):
            if (
                not isinstance(cell, (list, tuple))
                or len(cell) != 2
                or not all(isinstance(x, (int, float)) for x in cell)
            ):
                raise ParseError(
                    f"{what} row {r} col {c}: expected a [re, im] pair"
                )
            vals.append(complex(cell[0], cell[1]))
        rows.append(vals)
    return np.array(rows, dtype=np.complex128)


def require_key(obj: dict, key: str, what: str = "object"):
    if not isinstance(obj, dict):
        raise ParseError(f"{what}: expected a JSON object")
    if key not in obj:
        raise ParseError(f"{what}: missing key '{key}'")
    return obj[key]
