# ///////////////////////////////////////////////////////////////////////
#
#                          UTILITIES LINEAR ALGEBRA
#   Exact arithmetic in the prime field F_p and sparse linear algebra
#   (rank, kernel, image, solve, homology) over it. Matrices are stored
#   column by column as dicts of nonzero residues.
#
# ///////////////////////////////////////////////////////////////////////

from dataclasses import dataclass
from typing import Hashable, Iterable
from utilities_exceptions import CompositionError, raise_engine_error
from global_parameters import LOGGER_LINALG_KEY
import numpy as np
import logging as log

logger_linalg = log.getLogger(LOGGER_LINALG_KEY)

SparseVec = dict[int, int]

# -----------------------------------------------------------------------
#                            PRIME FIELD
# -----------------------------------------------------------------------

def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d != 0 for d in range(2, int(p ** 0.5) + 1))

def is_odd_prime(p: int) -> bool:
    return p != 2 and is_prime(p)

@dataclass(frozen=True)
class FpScalar:
    value: int
    p: int

    def __post_init__(self):
        if not 0 <= self.value < self.p:
            raise ValueError(f"Residue {self.value} is not reduced modulo {self.p}")

    @classmethod
    def of(cls, value: int, p: int) -> 'FpScalar':
        return cls(value % p, p)

    def _check(self, other: 'FpScalar'):
        if other.p != self.p:
            raise ValueError(f"Cannot combine residues modulo {self.p} and {other.p}")

    def __add__(self, other: 'FpScalar') -> 'FpScalar':
        self._check(other)
        return FpScalar.of(self.value + other.value, self.p)

    def __sub__(self, other: 'FpScalar') -> 'FpScalar':
        self._check(other)
        return FpScalar.of(self.value - other.value, self.p)

    def __mul__(self, other: 'FpScalar') -> 'FpScalar':
        self._check(other)
        return FpScalar.of(self.value * other.value, self.p)

    def __neg__(self) -> 'FpScalar':
        return FpScalar.of(-self.value, self.p)

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def inverse(self) -> 'FpScalar':
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse modulo {self.p}")
        return FpScalar(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other: 'FpScalar') -> 'FpScalar':
        return self * other.inverse()

# -----------------------------------------------------------------------
#                          SPARSE VECTORS
# -----------------------------------------------------------------------

def vec_add_scaled(target: dict, coef: int, source: dict, p: int):
    """target += coef * source, in place, dropping zeros."""
    if coef % p == 0:
        return
    for key, value in source.items():
        new_value = (target.get(key, 0) + coef * value) % p
        if new_value:
            target[key] = new_value
        else:
            target.pop(key, None)

def vec_scale(vec: dict, coef: int, p: int) -> dict:
    coef %= p
    if coef == 0:
        return {}
    return {key: (value * coef) % p for key, value in vec.items()}

def vec_normalize(vec: dict, p: int) -> dict:
    return {key: value % p for key, value in vec.items() if value % p}

# -----------------------------------------------------------------------
#                         SPARSE MATRIX TYPE
# -----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SparseMatFp:
    rows: int
    cols: int
    p: int
    columns: tuple

    @classmethod
    def from_columns(cls, rows: int, p: int, columns: Iterable[dict]) -> 'SparseMatFp':
        normalized = []
        for column in columns:
            column = vec_normalize(column, p)
            if any(not 0 <= row < rows for row in column):
                raise ValueError(f"Row index out of range for a matrix with {rows} rows")
            normalized.append(column)
        return cls(rows, len(normalized), p, tuple(normalized))

    @classmethod
    def from_entries(cls, rows: int, cols: int, p: int, entries: Iterable[tuple]) -> 'SparseMatFp':
        columns = [{} for _ in range(cols)]
        for row, col, value in entries:
            if not (0 <= row < rows and 0 <= col < cols):
                raise ValueError(f"Entry ({row}, {col}) out of range for a {rows}x{cols} matrix")
            vec_add_scaled(columns[col], int(value), {row: 1}, p)
        return cls(rows, cols, p, tuple(columns))

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> 'SparseMatFp':
        return cls(rows, cols, p, tuple({} for _ in range(cols)))

    @classmethod
    def identity(cls, size: int, p: int) -> 'SparseMatFp':
        return cls(size, size, p, tuple({i: 1} for i in range(size)))

    @classmethod
    def from_dense(cls, array, p: int) -> 'SparseMatFp':
        array = np.array(array, dtype=object)
        if array.ndim != 2:
            raise ValueError("A dense matrix must be two dimensional")
        rows, cols = array.shape
        entries = [(i, j, int(array[i, j])) for i in range(rows) for j in range(cols) if int(array[i, j]) % p]
        return cls.from_entries(rows, cols, p, entries)

    def entries(self) -> list:
        """Canonical entry list sorted by (row, col)."""
        triples = [(row, col, FpScalar(value, self.p)) for col, column in enumerate(self.columns) for row, value in column.items()]
        return sorted(triples, key=lambda triple: (triple[0], triple[1]))

    def nnz(self) -> int:
        return sum(len(column) for column in self.columns)

    def is_zero(self) -> bool:
        return self.nnz() == 0

    def to_dense(self) -> np.ndarray:
        array = np.zeros((self.rows, self.cols), dtype=np.int64)
        for col, column in enumerate(self.columns):
            for row, value in column.items():
                array[row, col] = value
        return array

    def apply(self, vec: dict) -> dict:
        result = {}
        for col, coef in vec.items():
            vec_add_scaled(result, coef, self.columns[col], self.p)
        return result

    def matmul(self, other: 'SparseMatFp') -> 'SparseMatFp':
        if self.cols != other.rows or self.p != other.p:
            raise ValueError(f"Cannot compose a {self.rows}x{self.cols} matrix with a {other.rows}x{other.cols} matrix")
        return SparseMatFp(self.rows, other.cols, self.p, tuple(self.apply(column) for column in other.columns))

    def transpose(self) -> 'SparseMatFp':
        entries = [(col, row, value) for col, column in enumerate(self.columns) for row, value in column.items()]
        return SparseMatFp.from_entries(self.cols, self.rows, self.p, entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatFp):
            return NotImplemented
        return (self.rows, self.cols, self.p) == (other.rows, other.cols, other.p) and self.columns == other.columns

# -----------------------------------------------------------------------
#                          ECHELON SPAN
# -----------------------------------------------------------------------

class EchelonSpan:
    """
    Incrementally built echelon basis of a subspace of F_p^N.
    Each pivot row remembers which inserted vectors it is made of, so
    dependencies found on insertion are returned as relations.
    """

    def __init__(self, p: int, track: bool = True):
        self.p = p
        self.track = track
        self.pivots = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: dict) -> tuple:
        """Return (residual, combination) with vec = residual + sum(combination[l] * item_l)."""
        remaining = dict(vec)
        residual = {}
        combination = {} if self.track else None
        while remaining:
            col = min(remaining)
            value = remaining.pop(col)
            pivot = self.pivots.get(col)
            if pivot is None:
                residual[col] = value
                continue
            row, row_combination = pivot
            for key, entry in row.items():
                if key == col:
                    continue
                new_value = (remaining.get(key, 0) - value * entry) % self.p
                if new_value:
                    remaining[key] = new_value
                else:
                    remaining.pop(key, None)
            if self.track:
                vec_add_scaled(combination, value, row_combination, self.p)
        return residual, combination

    def contains(self, vec: dict) -> bool:
        residual, _ = self.reduce(vec)
        return not residual

    def insert(self, vec: dict, label: Hashable = None):
        """Insert a vector; return the dependency relation when it already lies in the span."""
        residual, combination = self.reduce(vec)
        if not residual:
            if not self.track:
                return {}
            relation = vec_scale(combination, -1, self.p)
            vec_add_scaled(relation, 1, {label: 1}, self.p)
            return relation
        lead = min(residual)
        inv = pow(residual[lead], -1, self.p)
        row = vec_scale(residual, inv, self.p)
        row_combination = None
        if self.track:
            row_combination = vec_scale(combination, -1, self.p)
            vec_add_scaled(row_combination, 1, {label: 1}, self.p)
            row_combination = vec_scale(row_combination, inv, self.p)
        self.pivots[lead] = (row, row_combination)
        return None

    def reduced_basis(self) -> list:
        """Reduced row echelon basis sorted by pivot."""
        reduced = {}
        for lead in sorted(self.pivots, reverse=True):
            row = dict(self.pivots[lead][0])
            for col in sorted(key for key in row if key != lead and key in reduced):
                vec_add_scaled(row, -row[col], reduced[col], self.p)
            reduced[lead] = row
        return [reduced[lead] for lead in sorted(reduced)]

# -----------------------------------------------------------------------
#                          MATRIX OPERATIONS
# -----------------------------------------------------------------------

def reduced_echelon(vectors: Iterable[dict], p: int) -> list:
    span = EchelonSpan(p, track=False)
    for vec in vectors:
        span.insert(vec)
    return span.reduced_basis()

def rank(mat: SparseMatFp) -> int:
    span = EchelonSpan(mat.p, track=False)
    for column in mat.columns:
        span.insert(column)
    return len(span)

def kernel_basis(mat: SparseMatFp) -> list:
    span = EchelonSpan(mat.p)
    relations = []
    for col, column in enumerate(mat.columns):
        relation = span.insert(column, label=col)
        if relation is not None:
            relations.append(relation)
    return reduced_echelon(relations, mat.p)

def image_basis(mat: SparseMatFp) -> list:
    return reduced_echelon(mat.columns, mat.p)

def solve(mat: SparseMatFp, target: dict):
    """Return x with mat * x = target, or None when target is not in the image."""
    span = EchelonSpan(mat.p)
    for col, column in enumerate(mat.columns):
        span.insert(column, label=col)
    residual, combination = span.reduce(vec_normalize(target, mat.p))
    if residual:
        return None
    return combination

def check_composable(d_boundary: SparseMatFp, d_cycle: SparseMatFp):
    if d_boundary.rows != d_cycle.cols or d_boundary.p != d_cycle.p:
        raise_engine_error(CompositionError(f"Maps of shapes {d_boundary.rows}x{d_boundary.cols} and {d_cycle.rows}x{d_cycle.cols} are not composable"))
    if not d_cycle.matmul(d_boundary).is_zero():
        raise_engine_error(CompositionError("The composite of the boundary and cycle maps is nonzero"))

def quotient_dimension(d_boundary: SparseMatFp, d_cycle: SparseMatFp) -> int:
    """dim ker(d_cycle) - rank(d_boundary), at the middle term."""
    check_composable(d_boundary, d_cycle)
    return (d_cycle.cols - rank(d_cycle)) - rank(d_boundary)

def homology_representatives(d_boundary: SparseMatFp, d_cycle: SparseMatFp) -> list:
    check_composable(d_boundary, d_cycle)
    span = EchelonSpan(d_cycle.p, track=False)
    for column in d_boundary.columns:
        span.insert(column)
    representatives = []
    for cycle in kernel_basis(d_cycle):
        if span.insert(cycle) is None:
            representatives.append(cycle)
    return representatives

# -----------------------------------------------------------------------
#                          DENSE ORACLE
# -----------------------------------------------------------------------

def rank_dense(array, p: int) -> int:
    """Textbook Gaussian elimination on a dense copy."""
    A = np.array(array, dtype=np.int64) % p
    if A.ndim != 2 or A.size == 0:
        return 0
    m, n = A.shape
    r = 0
    for c in range(n):
        nonzero = np.nonzero(A[r:, c])[0]
        if nonzero.size == 0:
            continue
        pivot = r + int(nonzero[0])
        if pivot != r:
            A[[r, pivot], :] = A[[pivot, r], :]
        inv = pow(int(A[r, c]), -1, p)
        A[r, :] = (A[r, :] * inv) % p
        factors = A[r + 1:, c].copy()
        A[r + 1:, :] = (A[r + 1:, :] - np.outer(factors, A[r, :])) % p
        r += 1
        if r == m:
            break
    return r

def quotient_dimension_dense(d_boundary, d_cycle, p: int) -> int:
    d_boundary = np.array(d_boundary, dtype=np.int64)
    d_cycle = np.array(d_cycle, dtype=np.int64)
    return (d_cycle.shape[1] - rank_dense(d_cycle, p)) - rank_dense(d_boundary, p)

def matrix_power_dense(array, exponent: int, p: int) -> np.ndarray:
    A = np.array(array, dtype=np.int64) % p
    result = np.eye(A.shape[0], dtype=np.int64)
    for _ in range(exponent):
        result = (result @ A) % p
    return result
