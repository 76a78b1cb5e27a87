"""
subdivisions of a point configuration: validation, volumes, regular
subdivisions from liftings and regularity certificates
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from itoric.errors import SolverError, SubdivisionError
from itoric.geometry.cone import Cone
from itoric.geometry.config import PointConfiguration
from itoric.numeric.linalg import Matrix, determinant, exact_sqrt, kernel_basis, solve_affine
from itoric.numeric.lp import feasible_point
from itoric.numeric.scalar import Number, Vector, as_vector, coerce, sign
from itoric.settings import ScalarMode

logger = logging.getLogger(name=__name__)

Cell = Tuple[int, ...]


@dataclass(frozen=True)
class Subdivision:
    """maximal cells of a subdivision, as sorted tuples of point indices"""
    configuration: PointConfiguration
    cells: Tuple[Cell, ...]

    @classmethod
    def of(cls, p: PointConfiguration, cells: Sequence[Sequence[int]]) -> "Subdivision":
        return cls(p, tuple(sorted(tuple(sorted(set(c))) for c in cells)))

    @property
    def used_points(self) -> Tuple[int, ...]:
        return tuple(sorted({i for c in self.cells for i in c}))

    @property
    def absorbs_all_points(self) -> bool:
        """whether every point of A lies in some cell"""
        return len(self.used_points) == len(self.configuration)

    def is_triangulation(self) -> bool:
        d = self.configuration.affine_rank()
        return all(len(c) == d + 1 for c in self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)


def cell_affine_rank(p: PointConfiguration, cell: Sequence[int]) -> int:
    return p.sub(cell).affine_rank() if len(cell) > 1 else 0


def simplex_volume(p: PointConfiguration, cell: Sequence[int]) -> Number:
    """
    k-dimensional euclidean volume sqrt(det(E E^T)) / k! of a k-simplex,
    rational when the gram determinant is a square
    """
    points = [p[i] for i in cell]
    k = len(points) - 1
    if k == 0:
        return coerce(1, p.mode)
    edges = [q - points[0] for q in points[1:]]
    gram = [[a.dot(b) for b in edges] for a in edges]
    det = determinant(gram)
    if p.mode == ScalarMode.EXACT:
        root = exact_sqrt(det)
        if root is None:
            # irrational volume; nearest rational at float precision
            return coerce(math.sqrt(float(det)), ScalarMode.EXACT) / math.factorial(k)
        return root / math.factorial(k)
    return math.sqrt(max(det, 0.0)) / math.factorial(k)


def hull_facets(p: PointConfiguration, cell: Cell) -> List[Cell]:
    """point sets of the facets of conv(cell) within its affine hull"""
    sub = p.sub(cell).homogenize()
    cone = sub.cone()
    out = []
    for h in cone.facet_normals:
        facet = tuple(cell[i] for i, a in enumerate(sub.points) if sign(h.dot(a)) == 0)
        out.append(facet)
    return out


def pulling_triangulation(p: PointConfiguration, cell: Optional[Sequence[int]] = None) -> List[Cell]:
    """
    full-dimensional simplices of a triangulation of conv(cell): pull the
    first point and cone it over the facets that miss it
    """
    cell = tuple(range(len(p))) if cell is None else tuple(cell)
    return list(_pulling(p, cell))


def _pulling(p: PointConfiguration, cell: Cell) -> Tuple[Cell, ...]:
    d = cell_affine_rank(p, cell)
    if d == 0:
        return ((cell[0],),)
    apex = cell[0]
    out = []
    for facet in hull_facets(p, cell):
        if apex in facet:
            continue
        for simplex in _pulling(p, facet):
            out.append(tuple(sorted((apex,) + simplex)))
    return tuple(out)


def volume(p: PointConfiguration, cell: Optional[Sequence[int]] = None) -> Number:
    """euclidean volume of conv(cell) inside aff(A); 0 for lower dimensional cells"""
    cell = tuple(range(len(p))) if cell is None else tuple(cell)
    d = p.affine_rank()
    if cell_affine_rank(p, cell) < d:
        return coerce(0, p.mode)
    total = coerce(0, p.mode)
    for simplex in _pulling(p, cell):
        total = total + simplex_volume(p, simplex)
    return total


def cells_intersect_properly(p: PointConfiguration, f: Sequence[int], g: Sequence[int]) -> bool:
    """
    an affine functional vanishing on the common points, positive on the rest
    of f and negative on the rest of g; then conv(f) and conv(g) meet in the
    common face conv(f ∩ g)
    """
    f, g = set(f), set(g)
    common = f & g
    n = p.dim
    one = coerce(1, p.mode)

    def row(i: int, s: int) -> Vector:
        # (h, c) . (a, 1), negated for s = -1
        return Vector(tuple(x * s for x in p[i].coords) + (one * s,))

    eq = [row(i, 1) for i in common]
    gt = [row(i, 1) for i in f - common] + [row(i, -1) for i in g - common]
    if not gt:
        return True
    return feasible_point(n + 1, gt=gt, eq=eq, mode=p.mode) is not None


def validate_subdivision(p: PointConfiguration, cells: Sequence[Sequence[int]]) -> Subdivision:
    """
    every cell full-dimensional, cells meeting in common faces and covering
    conv(A) by volume
    """
    s = Subdivision.of(p, cells)
    if not s.cells:
        raise SubdivisionError('a subdivision needs at least one cell')
    d = p.affine_rank()
    for c in s.cells:
        if any(i < 0 or i >= len(p) for i in c):
            raise SubdivisionError(f'cell {c} refers to points outside the configuration')
        if cell_affine_rank(p, c) != d:
            raise SubdivisionError(f'cell {c} is not full-dimensional')
    for a, b in combinations(s.cells, 2):
        if not cells_intersect_properly(p, a, b):
            raise SubdivisionError(f'cells {a} and {b} do not meet in a common face')
    covered = sum((volume(p, c) for c in s.cells), coerce(0, p.mode))
    whole = volume(p)
    if not volumes_close(covered, whole):
        raise SubdivisionError(f'cells cover volume {covered} of {whole}')
    logger.debug(f'valid subdivision with {len(s)} cells')
    return s


def volumes_close(a: Number, b: Number) -> bool:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    return abs(float(a) - float(b)) <= 1e-9 * max(1.0, abs(float(b)))


def lifted_configuration(p: PointConfiguration, lifting: Vector) -> PointConfiguration:
    """points (1, a, lambda_a)"""
    one = Vector.of([1], p.mode)
    return PointConfiguration(tuple(
        one.direct_sum(a).direct_sum(Vector((lifting[i],))) for i, a in enumerate(p.points)))


def regular_subdivision(p: PointConfiguration, lifting) -> Subdivision:
    """projections of the lower facets of conv{(a, lambda_a)}"""
    lifting = as_vector(lifting, p.mode)
    if lifting.dim != len(p):
        raise SubdivisionError(f'{lifting.dim} heights for {len(p)} points')
    lifted = lifted_configuration(p, lifting)
    if lifted.affine_rank() == p.affine_rank():
        # heights are affine on A
        return Subdivision.of(p, [range(len(p))])
    cone = lifted.cone()
    cells = []
    for h in cone.facet_normals:
        if sign(h[-1]) <= 0:
            continue
        cells.append(tuple(i for i, a in enumerate(lifted.points) if sign(h.dot(a)) == 0))
    s = Subdivision.of(p, cells)
    logger.debug(f'lifting {lifting} induces {len(s)} cells')
    return s


def _affine_coordinates(p: PointConfiguration, basis: Sequence[int], i: int) -> Optional[Vector]:
    """beta with (1, a_i) = sum beta_b (1, a_b)"""
    hom = p.homogenize()
    m = Matrix.from_columns([hom[b] for b in basis])
    return solve_affine(m, hom[i])


def affine_basis(p: PointConfiguration, cell: Sequence[int]) -> Cell:
    """a subset of the cell affinely spanning it"""
    basis: List[int] = []
    rank = 0
    for i in cell:
        trial = basis + [i]
        r = cell_affine_rank(p, trial) + 1 if len(trial) > 1 else 1
        if r > rank:
            basis, rank = trial, r
    return tuple(basis)


def cell_equalities(p: PointConfiguration, cell: Sequence[int]) -> List[Vector]:
    """rows e with e . lambda = 0 exactly when lambda is affine on the cell"""
    basis = affine_basis(p, cell)
    rows = []
    for i in cell:
        if i in basis:
            continue
        beta = _affine_coordinates(p, basis, i)
        rows.append(_height_row(p, i, basis, beta))
    return rows


def _height_row(p: PointConfiguration, i: int, basis: Sequence[int], beta: Vector) -> Vector:
    # lambda_i - sum beta_b lambda_b
    coords = [coerce(0, p.mode)] * len(p)
    coords[i] = coords[i] + coerce(1, p.mode)
    for b, c in zip(basis, beta):
        coords[b] = coords[b] - c
    return Vector(tuple(coords))


def cell_inequalities(p: PointConfiguration, cell: Sequence[int]) -> List[Vector]:
    """rows h with h . lambda >= 0 when every other point is lifted on or above the cell's plane"""
    basis = affine_basis(p, cell)
    rows = []
    for i in range(len(p)):
        if i in cell:
            continue
        beta = _affine_coordinates(p, basis, i)
        if beta is None:
            raise SubdivisionError(f'point {i} is outside the affine hull of cell {tuple(cell)}')
        rows.append(_height_row(p, i, basis, beta))
    return rows


def is_regular(s: Subdivision) -> Optional[Vector]:
    """
    a lifting inducing s, or None: heights agreeing with one affine function
    on each cell and strictly above it at the points outside the cell
    """
    p = s.configuration
    gt: List[Vector] = []
    eq: List[Vector] = []
    for cell in s.cells:
        eq.extend(cell_equalities(p, cell))
        basis = affine_basis(p, cell)
        for i in range(len(p)):
            if i in cell:
                continue
            beta = _affine_coordinates(p, basis, i)
            gt.append(_height_row(p, i, basis, beta))
    if not gt:
        witness = Vector.zero(len(p), p.mode)
    else:
        witness = feasible_point(len(p), gt=gt, eq=eq, mode=p.mode)
    if witness is None:
        logger.debug(f'no lifting induces the subdivision {s.cells}')
        return None
    induced = regular_subdivision(p, witness)
    if induced.cells != s.cells:
        raise SolverError(f'lifting {witness} induces {induced.cells}, not {s.cells}')
    return witness


def refines(s: Subdivision, other: Subdivision) -> bool:
    """every cell of s lies in a cell of other"""
    return all(any(set(c) <= set(d) for d in other.cells) for c in s.cells)


def lifting_cone(s: Subdivision) -> Cone:
    """closure of the liftings inducing s in R^A; its boundary induces coarsenings"""
    p = s.configuration
    rows: List[Vector] = []
    for cell in s.cells:
        eqs = cell_equalities(p, cell)
        rows.extend(eqs + [-e for e in eqs])
        rows.extend(cell_inequalities(p, cell))
    return Cone.from_inequalities(rows, len(p), p.mode)


def affine_dependencies(s: Subdivision) -> List[Vector]:
    """basis of the liftings that are affine on every cell"""
    p = s.configuration
    rows = [e for cell in s.cells for e in cell_equalities(p, cell)]
    if not rows:
        return [Vector.unit(len(p), i, p.mode) for i in range(len(p))]
    return kernel_basis(Matrix.from_rows(rows, len(p)))
