"""Matrices of Scalars held in numpy object arrays, plus exact linear algebra."""
import itertools
import logging
from typing import List, Mapping, Optional, Sequence, Tuple

import numpy as np
import sympy
from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

from .errors import ShapeMismatch
from .scalars import ONE, CoordinateRing, Scalar

logger = logging.getLogger(__name__)


def scalar_matrix(ring: CoordinateRing, rows: Sequence[Sequence[object]]) -> np.ndarray:
    rows = [list(row) for row in rows]
    width = len(rows[0]) if rows else 0
    if any(len(row) != width for row in rows):
        raise ShapeMismatch("ragged matrix rows", detail=[len(r) for r in rows])
    out = np.empty((len(rows), width), dtype=object)
    for a, row in enumerate(rows):
        for b, entry in enumerate(row):
            out[a, b] = ring.coerce(entry)
    return out


def zeros(ring: CoordinateRing, rows: int, cols: int) -> np.ndarray:
    out = np.empty((rows, cols), dtype=object)
    for a in range(rows):
        for b in range(cols):
            out[a, b] = ring.zero
    return out


def identity(ring: CoordinateRing, size: int) -> np.ndarray:
    out = zeros(ring, size, size)
    for a in range(size):
        out[a, a] = ring.one
    return out


def matmul(ring: CoordinateRing, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    if left.shape[1] != right.shape[0]:
        raise ShapeMismatch(f"cannot multiply {left.shape} by {right.shape}")
    out = zeros(ring, left.shape[0], right.shape[1])
    for a in range(left.shape[0]):
        for b in range(right.shape[1]):
            total = ring.zero
            for k in range(left.shape[1]):
                if left[a, k] and right[k, b]:
                    total = total + left[a, k] * right[k, b]
            out[a, b] = total
    return out


def transpose(matrix: np.ndarray) -> np.ndarray:
    return np.array(matrix.T, dtype=object)


def scale(matrix: np.ndarray, factor) -> np.ndarray:
    out = np.empty(matrix.shape, dtype=object)
    for index in np.ndindex(*matrix.shape):
        out[index] = matrix[index] * factor
    return out


def add(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    if left.shape != right.shape:
        raise ShapeMismatch(f"cannot add {left.shape} and {right.shape}")
    out = np.empty(left.shape, dtype=object)
    for index in np.ndindex(*left.shape):
        out[index] = left[index] + right[index]
    return out


def conjugate(matrix: np.ndarray) -> np.ndarray:
    out = np.empty(matrix.shape, dtype=object)
    for index in np.ndindex(*matrix.shape):
        out[index] = matrix[index].conjugate()
    return out


def equal(left: np.ndarray, right: np.ndarray) -> bool:
    return left.shape == right.shape and all(left[i] == right[i] for i in np.ndindex(*left.shape))


def first_difference(left: np.ndarray, right: np.ndarray) -> Optional[Tuple[int, ...]]:
    for index in np.ndindex(*left.shape):
        if left[index] != right[index]:
            return index
    return None


def is_zero(matrix: np.ndarray) -> bool:
    return all(not matrix[i] for i in np.ndindex(*matrix.shape))


def is_constant(matrix: np.ndarray) -> bool:
    return all(matrix[i].is_constant() for i in np.ndindex(*matrix.shape))


def block(blocks: Sequence[Sequence[np.ndarray]]) -> np.ndarray:
    return np.block([[np.asarray(b, dtype=object) for b in row] for row in blocks])


def to_text(matrix: np.ndarray) -> List[List[str]]:
    return [[matrix[a, b].to_text() for b in range(matrix.shape[1])] for a in range(matrix.shape[0])]


# --- determinants and inverses over the ring ---

def _domain_matrix(ring: CoordinateRing, matrix: np.ndarray) -> Tuple[DomainMatrix, bool]:
    """The matrix over Q(i) when every entry is constant, else over the unreduced polynomial ring."""
    rows, cols = matrix.shape
    if is_constant(matrix):
        entries = [[matrix[a, b].constant_value() for b in range(cols)] for a in range(rows)]
        return DomainMatrix(entries, (rows, cols), QQ_I), True
    entries = [[matrix[a, b].poly for b in range(cols)] for a in range(rows)]
    return DomainMatrix(entries, (rows, cols), ring.poly_ring.to_domain()), False


def _from_domain_matrix(ring: CoordinateRing, dm: DomainMatrix, constant: bool) -> np.ndarray:
    out = np.empty(dm.shape, dtype=object)
    for a, row in enumerate(dm.to_list()):
        for b, entry in enumerate(row):
            out[a, b] = ring.constant(entry) if constant else ring.from_poly(entry)
    return out


def determinant(ring: CoordinateRing, matrix: np.ndarray) -> Scalar:
    size = matrix.shape[0]
    if matrix.shape != (size, size):
        raise ShapeMismatch(f"determinant of non-square {matrix.shape}")
    if size == 0:
        return ring.one
    dm, constant = _domain_matrix(ring, matrix)
    det = dm.det()
    return ring.constant(det) if constant else ring.from_poly(det)


def unit_inverse(ring: CoordinateRing, matrix: np.ndarray) -> Optional[np.ndarray]:
    """Exact inverse when the determinant is a nonzero constant, else None."""
    size = matrix.shape[0]
    if matrix.shape != (size, size):
        raise ShapeMismatch(f"inverse of non-square {matrix.shape}")
    if size == 0:
        return zeros(ring, 0, 0)
    dm, constant = _domain_matrix(ring, matrix)
    if constant:
        if not dm.det():
            return None
        return _from_domain_matrix(ring, dm.inv(), True)
    # adjugate and determinant in the free polynomial ring, reduced afterwards
    adjugate, det = dm.adj_det()
    det = ring.from_poly(det)
    if not det or not det.is_constant():
        return None
    return scale(_from_domain_matrix(ring, adjugate, False), ONE / det.constant_value())


def unit_submatrix_rows(ring: CoordinateRing, frame: np.ndarray) -> Optional[Tuple[Tuple[int, ...], np.ndarray]]:
    """Row selection whose square block has constant nonzero determinant, with its inverse."""
    rows, cols = frame.shape
    for selection in itertools.combinations(range(rows), cols):
        square = frame[list(selection), :]
        inverse = unit_inverse(ring, square)
        if inverse is not None:
            return selection, inverse
    return None


# --- pointwise exact linear algebra (sympy) ---

def evaluate(matrix: np.ndarray, point: Mapping[str, object]) -> sympy.Matrix:
    rows, cols = matrix.shape
    return sympy.Matrix(rows, cols, lambda a, b: QQ_I.to_sympy(matrix[a, b].evaluate(point)))


def to_sympy(matrix: np.ndarray) -> sympy.Matrix:
    """Constant matrix of Scalars as an exact sympy matrix."""
    rows, cols = matrix.shape
    return sympy.Matrix(rows, cols, lambda a, b: QQ_I.to_sympy(matrix[a, b].constant_value()))


def exact_rank(matrix: sympy.Matrix) -> int:
    if matrix.rows == 0 or matrix.cols == 0:
        return 0
    return matrix.rank(simplify=True)


def coerce_matrix(ring: CoordinateRing, matrix) -> np.ndarray:
    """Object array of Scalars in ``ring`` from nested rows of numbers, strings or Scalars."""
    source = np.asarray(matrix, dtype=object)
    if source.ndim != 2:
        raise ShapeMismatch(f"expected a matrix, got shape {source.shape}")
    out = np.empty(source.shape, dtype=object)
    for index in np.ndindex(*source.shape):
        out[index] = ring.coerce(source[index])
    return out
