"""
integer lattices in echelon form and integer kernels

``IntegerLattice`` keeps an echelon basis that is updated one vector at a time
with extended gcd row operations, so membership and reduction modulo the
lattice are exact.
"""
import logging
from bisect import bisect_left
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from itoric.errors import ModeMismatchError
from itoric.numeric.linalg import Matrix, kernel_basis
from itoric.numeric.scalar import Vector, primitive_coords
from itoric.settings import ScalarMode

logger = logging.getLogger(name=__name__)


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """x, y, g with x*a + y*b == g"""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    return x, y, g


def as_int_list(v) -> List[int]:
    coords = v.coords if isinstance(v, Vector) else v
    out = []
    for a in coords:
        if isinstance(a, float) or Fraction(a).denominator != 1:
            raise ModeMismatchError(f'{v} is not an integer vector')
        out.append(int(a))
    return out


def int_vector(coords: Sequence[int]) -> Vector:
    return Vector(tuple(Fraction(int(a)) for a in coords))


class IntegerLattice:
    """a sublattice of Z^n with its Hermite normal form basis"""

    def __init__(self, ambient_dim: int, vectors: Iterable = ()):
        self.ambient_dim = ambient_dim
        self.basis: List[List[int]] = []
        self.pivots: List[int] = []
        for v in vectors:
            self.add_vector(as_int_list(v))
        self._normalize()

    def __len__(self) -> int:
        return len(self.basis)

    def add_vector(self, vec0: Sequence[int]):
        vec = list(vec0)
        n = self.ambient_dim
        for j in range(n):
            if vec[j] == 0:
                continue
            if j not in self.pivots:
                where = bisect_left(self.pivots, j)
                self.basis.insert(where, vec)
                self.pivots.insert(where, j)
                return
            row = self.basis[self.pivots.index(j)]
            a, b = row[j], vec[j]
            if b % a == 0:
                q = b // a
                for jj in range(j, n):
                    vec[jj] -= q * row[jj]
            else:
                x, y, g = xgcd(a, b)
                ag, mbg = a // g, -b // g
                for jj in range(j, n):
                    aa, bb = row[jj], vec[jj]
                    row[jj] = x * aa + y * bb
                    vec[jj] = mbg * aa + ag * bb

    def _normalize(self):
        # positive pivots, entries above each pivot reduced into [0, pivot)
        for i, j in enumerate(self.pivots):
            if self.basis[i][j] < 0:
                self.basis[i] = [-a for a in self.basis[i]]
        for i, j in enumerate(self.pivots):
            p = self.basis[i][j]
            for k in range(i):
                q = self.basis[k][j] // p
                if q:
                    self.basis[k] = [a - q * b for a, b in zip(self.basis[k], self.basis[i])]

    def __contains__(self, v) -> bool:
        vec = as_int_list(v)
        for i, j in enumerate(self.pivots):
            # entries before the pivot are already zero
            if any(vec[:j]):
                return False
            a = self.basis[i][j]
            if vec[j] % a:
                return False
            q = vec[j] // a
            vec = [x - q * y for x, y in zip(vec, self.basis[i])]
        return not any(vec)

    def reduce(self, v) -> List[int]:
        """canonical representative of v modulo the lattice"""
        vec = as_int_list(v)
        for i, j in enumerate(self.pivots):
            q = vec[j] // self.basis[i][j]
            if q:
                vec = [x - q * y for x, y in zip(vec, self.basis[i])]
        return vec

    def vectors(self) -> List[Vector]:
        return [int_vector(row) for row in self.basis]


def rational_basis_to_integer(vectors: Sequence[Vector]) -> List[List[int]]:
    return [[int(a) for a in primitive_coords(v.coords)] for v in vectors]


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> List[Vector]:
    """
    a basis of {x in Z^n : rows x = 0} in Hermite normal form; it spans the
    saturated lattice, not only a finite-index sublattice
    """
    if not rows:
        return [int_vector([1 if i == j else 0 for i in range(ncols)]) for j in range(ncols)]
    kernel = _unimodular_kernel([as_int_list(r) for r in rows], ncols)
    logger.debug(f"integer kernel of rank {len(kernel)} in dimension {ncols}")
    return IntegerLattice(ncols, kernel).vectors()


def saturate(vectors: Sequence[Sequence[int]], ncols: int) -> IntegerLattice:
    """
    span(vectors) ∩ Z^n: the integer kernel of an integer basis of the
    annihilator
    """
    if not vectors:
        return IntegerLattice(ncols)
    matrix = Matrix.of([[Fraction(a) for a in v] for v in vectors], ncols, ScalarMode.EXACT)
    annihilator_rows = rational_basis_to_integer(kernel_basis(matrix))
    if not annihilator_rows:
        return IntegerLattice(ncols, [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)])
    return IntegerLattice(ncols, _unimodular_kernel(annihilator_rows, ncols))


def _unimodular_kernel(rows: List[List[int]], ncols: int) -> List[List[int]]:
    """integer kernel by unimodular column operations on rows, tracking U"""
    a = [list(r) for r in rows]
    u = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def col_op(target: int, source: int, q: int):
        # column target -= q * column source
        for row in a:
            row[target] -= q * row[source]
        for row in u:
            row[target] -= q * row[source]

    def swap(i: int, j: int):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in u:
            row[i], row[j] = row[j], row[i]

    r = 0
    for row in a:
        while True:
            nonzero = [j for j in range(r, ncols) if row[j] != 0]
            if not nonzero:
                break
            j0 = min(nonzero, key=lambda j: abs(row[j]))
            swap(r, j0)
            done = True
            for j in range(r + 1, ncols):
                if row[j]:
                    col_op(j, r, row[j] // row[r])
                    if row[j]:
                        done = False
            if done:
                break
        if r < ncols and row[r] != 0:
            r += 1
    return [[u[i][j] for i in range(ncols)] for j in range(r, ncols)]


def lattice_of(vectors: Sequence[Vector], ncols: Optional[int] = None) -> IntegerLattice:
    ncols = ncols if ncols is not None else vectors[0].dim
    return IntegerLattice(ncols, [as_int_list(v) for v in vectors])
