# toralaut/core/zlattice.py

"""Exact integer matrices and lattice normal forms.

Hermite and Smith normal forms are computed with invertible row/column
operations on numpy object arrays, so entries stay Python big integers and
every transform is tracked exactly. Lattices are given by generating rows;
bases are compared through their Hermite normal form.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import DependentBasisError, DimensionMismatchError, NotUnimodularError

logger = logging.getLogger(__name__)

LatticeVector = tuple[int, ...]


# --- Vectors ---

def as_vector(values: Iterable[int]) -> LatticeVector:
    return tuple(int(v) for v in values)


def _check_lengths(a: Sequence[int], b: Sequence[int]) -> None:
    if len(a) != len(b):
        raise DimensionMismatchError(f"vector lengths differ: {len(a)} != {len(b)}")


def vadd(a: LatticeVector, b: LatticeVector) -> LatticeVector:
    _check_lengths(a, b)
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: LatticeVector, b: LatticeVector) -> LatticeVector:
    _check_lengths(a, b)
    return tuple(x - y for x, y in zip(a, b))


def vneg(a: LatticeVector) -> LatticeVector:
    return tuple(-x for x in a)


def vscale(k: int, a: LatticeVector) -> LatticeVector:
    return tuple(k * x for x in a)


def zero_vector(rank: int) -> LatticeVector:
    return (0,) * rank


# --- Matrices ---

@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major as tuples of Python ints."""

    entries: tuple[LatticeVector, ...]
    ncols: int

    def __post_init__(self):
        if self.ncols < 0:
            raise DimensionMismatchError("column count must be nonnegative")
        for row in self.entries:
            if len(row) != self.ncols:
                raise DimensionMismatchError(
                    f"row of length {len(row)} in a matrix with {self.ncols} columns"
                )

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], ncols: int | None = None) -> "IntMatrix":
        rows = tuple(as_vector(row) for row in rows)
        if ncols is None:
            if not rows:
                raise DimensionMismatchError("cannot infer the column count of an empty matrix")
            ncols = len(rows[0])
        return cls(rows, ncols)

    @classmethod
    def from_columns(cls, columns: Iterable[Iterable[int]], nrows: int | None = None) -> "IntMatrix":
        columns = [as_vector(col) for col in columns]
        if nrows is None:
            if not columns:
                raise DimensionMismatchError("cannot infer the row count of an empty matrix")
            nrows = len(columns[0])
        if any(len(col) != nrows for col in columns):
            raise DimensionMismatchError("columns of different lengths")
        return cls(tuple(tuple(col[i] for col in columns) for i in range(nrows)), len(columns))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def from_array(cls, array: np.ndarray) -> "IntMatrix":
        return cls(tuple(tuple(int(x) for x in row) for row in array), int(array.shape[1]))

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def array(self) -> np.ndarray:
        """A fresh mutable object-dtype copy for elimination routines."""
        arr = np.empty((self.nrows, self.ncols), dtype=object)
        for i, row in enumerate(self.entries):
            arr[i, :] = list(row)
        return arr

    def row(self, i: int) -> LatticeVector:
        return self.entries[i]

    def column(self, j: int) -> LatticeVector:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(self.column(j) for j in range(self.ncols)), self.nrows)

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.ncols != other.nrows:
                raise DimensionMismatchError(
                    f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}"
                )
            cols = [other.column(j) for j in range(other.ncols)]
            return IntMatrix(
                tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.entries),
                other.ncols,
            )
        vector = as_vector(other)
        if len(vector) != self.ncols:
            raise DimensionMismatchError(
                f"cannot apply a {self.nrows}x{self.ncols} matrix to a vector of length {len(vector)}"
            )
        return tuple(sum(a * b for a, b in zip(row, vector)) for row in self.entries)

    def determinant(self) -> int:
        """Fraction-free (Bareiss) determinant."""
        if not self.is_square:
            raise DimensionMismatchError("determinant of a non-square matrix")
        n = self.nrows
        if n == 0:
            return 1
        m = [list(row) for row in self.entries]
        sign, prev = 1, 1
        for k in range(n - 1):
            if m[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if swap is None:
                    return 0
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.is_square and self.determinant() in (1, -1)

    def inverse(self) -> "IntMatrix":
        """Exact inverse of a unimodular matrix."""
        if not self.is_unimodular():
            raise NotUnimodularError(f"matrix {self.tolist()} is not unimodular")
        inv = rational_inverse(self.entries)
        return IntMatrix.from_rows(([int(x) for x in row] for row in inv), ncols=self.ncols)

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.entries) + "]"


def rational_inverse(rows: Sequence[Sequence[int | Fraction]]) -> list[list[Fraction]]:
    """Gauss-Jordan inverse over the rationals."""
    n = len(rows)
    aug = [
        [Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(rows)
    ]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise DependentBasisError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


# --- Elementary operations on object arrays ---

def _swap_rows(m: np.ndarray, i: int, j: int) -> None:
    if i != j:
        m[[i, j]] = m[[j, i]]


def _swap_cols(m: np.ndarray, i: int, j: int) -> None:
    if i != j:
        m[:, [i, j]] = m[:, [j, i]]


def _eye(n: int) -> np.ndarray:
    return IntMatrix.identity(n).array()


# --- Hermite normal form ---

def hnf(a: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form.

    Returns (H, U) with U unimodular and U @ A == H. H is in row echelon form
    with positive pivots, entries above each pivot reduced into [0, pivot) and
    zero rows at the bottom.
    """
    h = a.array()
    m, n = a.nrows, a.ncols
    u = _eye(m)
    pivot_row = 0
    for col in range(n):
        if pivot_row == m:
            break
        while True:
            candidates = [i for i in range(pivot_row, m) if h[i, col] != 0]
            if not candidates:
                break
            best = min(candidates, key=lambda i: abs(h[i, col]))
            _swap_rows(h, pivot_row, best)
            _swap_rows(u, pivot_row, best)
            cleared = True
            for i in range(pivot_row + 1, m):
                if h[i, col] != 0:
                    q = h[i, col] // h[pivot_row, col]
                    h[i] -= q * h[pivot_row]
                    u[i] -= q * u[pivot_row]
                    if h[i, col] != 0:
                        cleared = False
            if cleared:
                break
        if h[pivot_row, col] == 0:
            continue
        if h[pivot_row, col] < 0:
            h[pivot_row] = -h[pivot_row]
            u[pivot_row] = -u[pivot_row]
        for i in range(pivot_row):
            q = h[i, col] // h[pivot_row, col]
            if q:
                h[i] -= q * h[pivot_row]
                u[i] -= q * u[pivot_row]
        pivot_row += 1
    return IntMatrix.from_array(h), IntMatrix.from_array(u)


def _nonzero_rows(m: IntMatrix) -> list[LatticeVector]:
    return [row for row in m.entries if any(row)]


def lattice_hnf_basis(vectors: Sequence[Sequence[int]], dim: int) -> list[LatticeVector]:
    """Canonical basis (nonzero HNF rows) of the lattice spanned by the vectors."""
    if not vectors:
        return []
    h, _ = hnf(IntMatrix.from_rows(vectors, ncols=dim))
    return _nonzero_rows(h)


def lattice_rank(vectors: Sequence[Sequence[int]], dim: int) -> int:
    return len(lattice_hnf_basis(vectors, dim))


# --- Smith normal form ---

@dataclass(frozen=True)
class SmithDecomposition:
    """Witness U @ A @ V == S with S diagonal and d_1 | d_2 | ... on the diagonal."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    invariant_factors: tuple[int, ...]


def _min_abs_position(d: np.ndarray, t: int) -> tuple[int, int] | None:
    best = None
    for i in range(t, d.shape[0]):
        for j in range(t, d.shape[1]):
            if d[i, j] != 0 and (best is None or abs(d[i, j]) < abs(d[best])):
                best = (i, j)
    return best


def _min_abs_in_cross(d: np.ndarray, t: int) -> tuple[int, int]:
    best = (t, t)
    for i in range(t + 1, d.shape[0]):
        if d[i, t] != 0 and (d[best] == 0 or abs(d[i, t]) < abs(d[best])):
            best = (i, t)
    for j in range(t + 1, d.shape[1]):
        if d[t, j] != 0 and (d[best] == 0 or abs(d[t, j]) < abs(d[best])):
            best = (t, j)
    return best


def snf(a: IntMatrix) -> SmithDecomposition:
    """Smith normal form with unimodular witnesses, min-|entry| pivoting."""
    d = a.array()
    m, n = a.nrows, a.ncols
    u, v = _eye(m), _eye(n)
    for t in range(min(m, n)):
        start = _min_abs_position(d, t)
        if start is None:
            break
        _swap_rows(d, t, start[0])
        _swap_rows(u, t, start[0])
        _swap_cols(d, t, start[1])
        _swap_cols(v, t, start[1])
        while True:
            i, j = _min_abs_in_cross(d, t)
            if i != t:
                _swap_rows(d, t, i)
                _swap_rows(u, t, i)
            elif j != t:
                _swap_cols(d, t, j)
                _swap_cols(v, t, j)
            pivot = d[t, t]
            for i in range(t + 1, m):
                q = d[i, t] // pivot
                if q:
                    d[i] -= q * d[t]
                    u[i] -= q * u[t]
            for j in range(t + 1, n):
                q = d[t, j] // pivot
                if q:
                    d[:, j] -= q * d[:, t]
                    v[:, j] -= q * v[:, t]
            if any(d[i, t] != 0 for i in range(t + 1, m)) or any(d[t, j] != 0 for j in range(t + 1, n)):
                continue
            offender = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if d[i, j] % pivot != 0),
                None,
            )
            if offender is None:
                break
            # Bring the non-divisible entry into row t and pivot again.
            d[t] += d[offender[0]]
            u[t] += u[offender[0]]
        if d[t, t] < 0:
            d[t] = -d[t]
            u[t] = -u[t]
    factors = tuple(int(d[k, k]) for k in range(min(m, n)) if d[k, k] != 0)
    logger.debug("snf of %dx%d matrix: invariant factors %s", m, n, factors)
    return SmithDecomposition(
        U=IntMatrix.from_array(u),
        S=IntMatrix.from_array(d),
        V=IntMatrix.from_array(v),
        invariant_factors=factors,
    )


# --- Kernels and sublattice membership ---

def kernel_basis(a: IntMatrix) -> list[LatticeVector]:
    """HNF-canonical basis of the integer kernel {x : A @ x == 0}."""
    if a.nrows == 0:
        return [tuple(row) for row in IntMatrix.identity(a.ncols).entries]
    h, u = hnf(a.transpose())
    rank = len(_nonzero_rows(h))
    return lattice_hnf_basis([u.row(i) for i in range(rank, u.nrows)], a.ncols)


def _solve_echelon(rows: Sequence[LatticeVector], w: LatticeVector) -> list[int] | None:
    remaining = list(w)
    coords = []
    for row in rows:
        col = next(k for k, x in enumerate(row) if x != 0)
        if remaining[col] % row[col] != 0:
            return None
        y = remaining[col] // row[col]
        coords.append(y)
        if y:
            remaining = [r - y * x for r, x in zip(remaining, row)]
    if any(remaining):
        return None
    return coords


def express_in_generators(generators: Sequence[Sequence[int]], w: Sequence[int]) -> list[int] | None:
    """Integer coefficients c with sum(c_k * generators[k]) == w, or None.

    The generators may be linearly dependent; the returned combination is then
    one of many.
    """
    w = as_vector(w)
    if not generators:
        return [] if not any(w) else None
    g = IntMatrix.from_rows(generators)
    if g.ncols != len(w):
        raise DimensionMismatchError(f"target of length {len(w)} for generators of length {g.ncols}")
    h, u = hnf(g)
    rows = _nonzero_rows(h)
    coords = _solve_echelon(rows, w)
    if coords is None:
        return None
    return [sum(coords[k] * u.row(k)[j] for k in range(len(rows))) for j in range(g.nrows)]


def solve_in_sublattice(basis: Sequence[Sequence[int]], w: Sequence[int]) -> list[int] | None:
    """Coordinates of w in an independent lattice basis, or None if w is outside."""
    if basis and lattice_rank(basis, len(basis[0])) < len(basis):
        raise DependentBasisError("sublattice basis vectors are linearly dependent")
    return express_in_generators(basis, w)
