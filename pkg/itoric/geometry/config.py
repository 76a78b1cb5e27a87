import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from itoric.errors import DimensionMismatchError, PreconditionError
from itoric.geometry.cone import Cone
from itoric.numeric.linalg import Matrix, rank, solve_affine
from itoric.numeric.lp import LpConstraint, LpProblem, Relation, lp_feasible
from itoric.numeric.scalar import Vector, active_mode, as_vector, coerce, is_zero
from itoric.settings import ScalarMode

logger = logging.getLogger(name=__name__)


@dataclass(frozen=True)
class PointConfiguration:
    """a finite labelled subset A of M; labels are the positions 0..s-1"""
    points: Tuple[Vector, ...]

    def __post_init__(self):
        if not self.points:
            raise PreconditionError('a point configuration needs at least one point')
        dims = {p.dim for p in self.points}
        if len(dims) > 1:
            raise DimensionMismatchError('points of different dimensions')
        modes = {p.mode for p in self.points}
        if len(modes) > 1:
            raise PreconditionError('points in mixed scalar modes')
        keys = [p.sort_key() for p in self.points]
        if len(set(keys)) != len(keys):
            raise PreconditionError('duplicate points in the configuration')

    @classmethod
    def of(cls, points: Sequence, mode: Optional[ScalarMode] = None) -> "PointConfiguration":
        return cls(tuple(as_vector(p, mode) for p in points))

    @property
    def dim(self) -> int:
        return self.points[0].dim

    @property
    def mode(self) -> ScalarMode:
        return self.points[0].mode

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i: int) -> Vector:
        return self.points[i]

    def matrix(self) -> Matrix:
        """the points as the columns of a dim x s matrix"""
        return Matrix.from_columns(list(self.points))

    def rank(self) -> int:
        return rank(Matrix.from_rows(list(self.points)))

    def affine_rank(self) -> int:
        """dimension of the affine hull"""
        base = self.points[0]
        diffs = [p - base for p in self.points[1:]]
        if not diffs:
            return 0
        return rank(Matrix.from_rows(diffs))

    def height_functional(self) -> Optional[Vector]:
        """a functional u with <u, a> = 1 on every point, or None"""
        ones = Vector.of([1] * len(self), self.mode)
        return solve_affine(Matrix.from_rows(list(self.points)), ones)

    @property
    def is_affine(self) -> bool:
        """all points lie on an affine hyperplane missing the origin"""
        return self.height_functional() is not None

    def homogenize(self) -> "PointConfiguration":
        one = Vector.of([1], self.mode)
        return PointConfiguration(tuple(one.direct_sum(p) for p in self.points))

    def sub(self, indices: Sequence[int]) -> "PointConfiguration":
        return PointConfiguration(tuple(self.points[i] for i in indices))

    def cone(self) -> Cone:
        return Cone(list(self.points), self.dim, self.mode)

    def in_hull(self, v: Vector, indices: Optional[Sequence[int]] = None) -> bool:
        """v in conv of the chosen points, by lp feasibility over the weights"""
        indices = list(range(len(self))) if indices is None else list(indices)
        if not indices:
            return False
        rows = []
        for k in range(self.dim):
            rows.append(LpConstraint(Vector(tuple(self.points[i][k] for i in indices)), Relation.EQ, v[k]))
        one = coerce(1, self.mode)
        rows.append(LpConstraint(Vector(tuple(one for _ in indices)), Relation.EQ, one))
        problem = LpProblem(len(indices), tuple(rows), nonnegative=True)
        return lp_feasible(problem).feasible

    def vertices(self) -> List[int]:
        """indices of the vertices of conv(A)"""
        out = []
        for i, p in enumerate(self.points):
            others = [j for j in range(len(self)) if j != i]
            if not self.in_hull(p, others):
                out.append(i)
        logger.debug(f'{len(out)} of {len(self)} points are vertices')
        return out

    def minimizers(self, v: Vector) -> Tuple[int, ...]:
        """points where <a, v> is smallest: the face of conv(A) exposed by v"""
        values = [p.dot(v) for p in self.points]
        low = min(values)
        return tuple(i for i, x in enumerate(values) if is_zero(x - low))


def configuration(points: Sequence, mode: Optional[ScalarMode] = None) -> PointConfiguration:
    return PointConfiguration.of(points, mode or active_mode())
