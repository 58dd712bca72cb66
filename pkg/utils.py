import logging
import json
from typing import Any, Dict, List, Optional, Sequence

import galois
import numpy as np

from config import LOG_FILE
from exceptions import SpecParseError

logger = logging.getLogger(__name__)

DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


def setup_logging(level: str = "INFO") -> None:
    """Setup logging configuration."""
    handlers: List[logging.Handler] = [logging.StreamHandler()]
    if LOG_FILE:
        handlers.append(logging.FileHandler(LOG_FILE))
    logging.basicConfig(
        level=getattr(logging, level.upper()),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )


def parse_json_document(text: str, path: Optional[str] = None) -> Dict[str, Any]:
    """Parse a JSON document, reporting syntax errors with line and column."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecParseError(e.msg, line=e.lineno, column=e.colno, path=path) from e
    if not isinstance(data, dict):
        raise SpecParseError("top-level value must be an object", line=1, column=1, path=path)
    return data


# ===========================================
# DIGIT STRINGS
# ===========================================

def encode_digits(values: Sequence[int], base: int) -> str:
    """Write field elements (integer representation) as a digit string.

    One base-36 character per entry when base <= 36, otherwise comma-separated decimals.
    """
    values = [int(v) for v in values]
    if base <= len(DIGITS):
        return "".join(DIGITS[v] for v in values)
    return ",".join(str(v) for v in values)


def decode_digits(text: str, base: int, length: Optional[int] = None) -> List[int]:
    """Inverse of encode_digits; raises ValueError on malformed input."""
    text = text.strip()
    if base > len(DIGITS) or "," in text:
        parts = [part.strip() for part in text.split(",")] if text else []
        values = [int(part) for part in parts]
    else:
        values = []
        for ch in text.lower():
            if ch not in DIGITS:
                raise ValueError(f"invalid digit {ch!r}")
            values.append(DIGITS.index(ch))
    for v in values:
        if not 0 <= v < base:
            raise ValueError(f"digit {v} out of range for base {base}")
    if length is not None and len(values) != length:
        raise ValueError(f"expected {length} digits, got {len(values)}")
    return values


# ===========================================
# LINEAR ALGEBRA OVER GALOIS FIELDS
# ===========================================

def strip_zero_rows(matrix: galois.FieldArray) -> galois.FieldArray:
    if matrix.shape[0] == 0:
        return matrix
    keep = np.any(matrix != 0, axis=1)
    return matrix[keep]


def row_basis(matrix: galois.FieldArray) -> galois.FieldArray:
    """Reduced row echelon form with the zero rows removed."""
    if matrix.shape[0] == 0:
        return matrix
    return strip_zero_rows(matrix.row_reduce())


def matrix_rank(matrix: galois.FieldArray) -> int:
    if matrix.shape[0] == 0 or matrix.shape[1] == 0:
        return 0
    return int(np.linalg.matrix_rank(matrix))


def null_space(matrix: galois.FieldArray, ncols: int) -> galois.FieldArray:
    """Rows spanning {x : matrix @ x = 0}, in reduced form."""
    GF = type(matrix)
    if matrix.shape[0] == 0:
        return GF.Identity(ncols)
    if matrix_rank(matrix) == ncols:
        return GF.Zeros((0, ncols))
    return row_basis(matrix.null_space())


def solve_particular(matrix: galois.FieldArray, rhs: galois.FieldArray) -> Optional[galois.FieldArray]:
    """One solution x of matrix @ x = rhs, free variables set to zero.

    Returns None when the system is inconsistent.
    """
    GF = type(matrix)
    rows, cols = matrix.shape
    if rows == 0:
        return GF.Zeros(cols) if not np.any(rhs != 0) else None
    augmented = np.concatenate([matrix, rhs.reshape(rows, 1)], axis=1).view(GF)
    reduced = augmented.row_reduce()
    x = GF.Zeros(cols)
    for row in reduced:
        nonzero = np.flatnonzero(row != 0)
        if nonzero.size == 0:
            continue
        pivot = int(nonzero[0])
        if pivot == cols:
            return None
        # RREF: pivot entry is 1 and the pivot column is clear elsewhere
        x[pivot] = row[cols]
    return x


def int_vector(values: galois.FieldArray) -> tuple:
    """Plain-int tuple of a field vector, for hashing and ordering."""
    return tuple(int(v) for v in np.asarray(values).ravel())
