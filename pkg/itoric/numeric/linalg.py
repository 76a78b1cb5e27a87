"""
dense linear algebra over either scalar mode

exact mode row-reduces Fractions; float mode pivots on the largest entry and
treats anything under the tolerance as zero. Kernels in float mode come from
the SVD (scipy) so that the residual bound holds.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import null_space

from itoric.errors import DimensionMismatchError, ModeMismatchError
from itoric.numeric.scalar import (
    Number,
    Vector,
    active_mode,
    check_same_mode,
    coerce,
    is_zero,
    primitive_coords,
    tolerance,
)
from itoric.settings import ScalarMode

logger = logging.getLogger(name=__name__)

Rows = List[List[Number]]


@dataclass(frozen=True)
class Matrix:
    rows: Tuple[Tuple[Number, ...], ...]
    ncols: int

    def __post_init__(self):
        for row in self.rows:
            if len(row) != self.ncols:
                raise DimensionMismatchError('matrix rows must have equal length')
        flat = [a for row in self.rows for a in row]
        if flat:
            check_same_mode(*flat)

    @classmethod
    def of(cls, rows: Sequence[Sequence], ncols: Optional[int] = None,
           mode: Optional[ScalarMode] = None) -> "Matrix":
        rows = [tuple(coerce(a, mode) for a in row) for row in rows]
        if ncols is None:
            if not rows:
                raise DimensionMismatchError('an empty matrix needs an explicit column count')
            ncols = len(rows[0])
        return cls(tuple(rows), ncols)

    @classmethod
    def from_rows(cls, vectors: Sequence[Vector], ncols: Optional[int] = None) -> "Matrix":
        if ncols is None:
            if not vectors:
                raise DimensionMismatchError('an empty matrix needs an explicit column count')
            ncols = vectors[0].dim
        return cls(tuple(tuple(v.coords) for v in vectors), ncols)

    @classmethod
    def from_columns(cls, vectors: Sequence[Vector]) -> "Matrix":
        if not vectors:
            raise DimensionMismatchError('need at least one column')
        nrows = vectors[0].dim
        return cls(tuple(tuple(v[i] for v in vectors) for i in range(nrows)), len(vectors))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def mode(self) -> ScalarMode:
        if self.rows:
            return check_same_mode(*self.rows[0])
        return active_mode()

    def row(self, i: int) -> Vector:
        return Vector(self.rows[i])

    def column(self, j: int) -> Vector:
        return Vector(tuple(row[j] for row in self.rows))

    def apply(self, v: Vector) -> Vector:
        if v.dim != self.ncols:
            raise DimensionMismatchError(f'cannot apply a {self.nrows}x{self.ncols} matrix to a vector of dimension {v.dim}')
        if v.mode != self.mode:
            raise ModeMismatchError('mixed exact and float arithmetic')
        return Vector(tuple(sum((a * b for a, b in zip(row, v.coords)), v.zero_value()) for row in self.rows))

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(a) for a in row] for row in self.rows], dtype=float).reshape(self.nrows, self.ncols)

    def rank(self) -> int:
        return rank(self)

    def kernel_basis(self) -> List[Vector]:
        return kernel_basis(self)


def _zero_like(mode: ScalarMode) -> Number:
    return Fraction(0) if mode == ScalarMode.EXACT else 0.0


def rref(rows: Sequence[Sequence[Number]], ncols: int) -> Tuple[Rows, List[int]]:
    """reduced row echelon form and pivot columns"""
    work = [list(r) for r in rows]
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r >= len(work):
            break
        if work and isinstance(work[0][c] if ncols else 0, float):
            best = max(range(r, len(work)), key=lambda i: abs(work[i][c]))
        else:
            best = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
            if best is None:
                continue
        if is_zero(work[best][c]):
            continue
        work[r], work[best] = work[best], work[r]
        piv = work[r][c]
        work[r] = [a / piv for a in work[r]]
        for i in range(len(work)):
            if i != r and not is_zero(work[i][c]):
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
            elif i != r:
                work[i][c] = work[i][c] * 0
        pivots.append(c)
        r += 1
    return work[:r], pivots


def rank(m: Matrix) -> int:
    if not m.rows:
        return 0
    if m.mode == ScalarMode.FLOAT:
        return int(np.linalg.matrix_rank(m.to_numpy(), tol=tolerance() * max(1.0, np.abs(m.to_numpy()).max())))
    _, pivots = rref(m.rows, m.ncols)
    return len(pivots)


def kernel_basis(m: Matrix) -> List[Vector]:
    """
    basis of the right null space; exact bases are primitive integer vectors
    with a positive leading entry
    """
    mode = m.mode
    if not m.rows:
        return [Vector(tuple(_unit(m.ncols, j, mode))) for j in range(m.ncols)]
    if mode == ScalarMode.FLOAT:
        a = m.to_numpy()
        scale = max(1.0, np.abs(a).max())
        basis = null_space(a, rcond=tolerance() / scale)
        out = []
        for col in basis.T:
            out.append(Vector(tuple(float(x) for x in col)).sign_normalized())
        return out
    reduced, pivots = rref(m.rows, m.ncols)
    free = [j for j in range(m.ncols) if j not in pivots]
    out = []
    for f in free:
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        out.append(Vector(primitive_coords(v)).sign_normalized())
    return out


def _unit(n: int, j: int, mode: ScalarMode) -> List[Number]:
    one = Fraction(1) if mode == ScalarMode.EXACT else 1.0
    zero = _zero_like(mode)
    return [one if i == j else zero for i in range(n)]


def span_basis(vectors: Sequence[Vector], dim: int) -> List[Vector]:
    """canonical basis of the linear span: rref rows, made primitive/unit"""
    if not vectors:
        return []
    reduced, _ = rref([v.coords for v in vectors], dim)
    return [Vector(primitive_coords(row)).sign_normalized() for row in reduced]


def annihilator(vectors: Sequence[Vector], dim: int, mode: Optional[ScalarMode] = None) -> List[Vector]:
    """basis of the orthogonal complement of the span"""
    mode = mode or (vectors[0].mode if vectors else active_mode())
    if not vectors:
        return [Vector(tuple(_unit(dim, j, mode))) for j in range(dim)]
    return kernel_basis(Matrix.from_rows(list(vectors), dim))


def solve_affine(m: Matrix, b: Vector) -> Optional[Vector]:
    """one solution of m x = b, or None when the system is inconsistent"""
    if b.dim != m.nrows:
        raise DimensionMismatchError('right hand side has the wrong length')
    mode = b.mode
    augmented = [list(row) + [b[i]] for i, row in enumerate(m.rows)]
    if not augmented:
        return Vector(tuple(_zero_like(mode) for _ in range(m.ncols)))
    reduced, pivots = rref(augmented, m.ncols + 1)
    if m.ncols in pivots:
        return None
    x = [_zero_like(mode)] * m.ncols
    for row, p in zip(reduced, pivots):
        x[p] = row[-1]
    if mode == ScalarMode.FLOAT:
        # polish with least squares; the elimination only picks the support
        sol, *_ = np.linalg.lstsq(m.to_numpy(), b.to_numpy(), rcond=None)
        residual = np.abs(m.to_numpy() @ sol - b.to_numpy()).max() if m.nrows else 0.0
        if residual <= tolerance() * max(1.0, np.abs(b.to_numpy()).max()) * 10:
            return Vector(tuple(float(a) for a in sol))
    return Vector(tuple(x))


def project_off(v: Vector, basis: Sequence[Vector]) -> Vector:
    """orthogonal projection of v onto the complement of span(basis)"""
    if not basis:
        return v
    gram = Matrix(tuple(tuple(a.dot(b) for b in basis) for a in basis), len(basis))
    rhs = Vector(tuple(a.dot(v) for a in basis))
    coeffs = solve_affine(gram, rhs)
    if coeffs is None:
        raise DimensionMismatchError('projection basis is linearly dependent')
    out = v
    for c, a in zip(coeffs, basis):
        out = out - a.scale(c)
    return out


def determinant(rows: Sequence[Sequence[Number]]) -> Number:
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if isinstance(rows[0][0], float):
        return float(np.linalg.det(np.array(rows, dtype=float)))
    work = [list(r) for r in rows]
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if work[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            work[c], work[p] = work[p], work[c]
            det = -det
        det *= work[c][c]
        for i in range(c + 1, n):
            f = work[i][c] / work[c][c]
            if f:
                work[i] = [a - f * b for a, b in zip(work[i], work[c])]
    return det


def exact_sqrt(x: Fraction) -> Optional[Fraction]:
    """square root of a nonnegative rational when it is rational"""
    if x < 0:
        return None
    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None
