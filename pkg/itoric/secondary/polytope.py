"""
triangulations, characteristic vectors, the secondary polytope and the
secondary fan of a point configuration
"""
import logging
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from itoric.errors import NotRegularError, SizeBoundError, SolverError, SubdivisionError
from itoric.geometry.cone import Cone
from itoric.geometry.config import PointConfiguration
from itoric.geometry.fan import Fan, validate_fan
from itoric.numeric.scalar import Vector, coerce
from itoric.secondary.subdivision import (
    Cell,
    Subdivision,
    cell_affine_rank,
    cells_intersect_properly,
    hull_facets,
    is_regular,
    lifting_cone,
    refines,
    regular_subdivision,
    simplex_volume,
    volume,
    volumes_close,
)
from itoric.settings import SecondarySettings

logger = logging.getLogger(name=__name__)


def _check_size(p: PointConfiguration, max_points: Optional[int]):
    bound = max_points or SecondarySettings().max_points
    if len(p) > bound:
        raise SizeBoundError(f'{len(p)} points exceed the enumeration bound of {bound}')


@lru_cache(maxsize=32)
def full_simplices(p: PointConfiguration) -> Tuple[Cell, ...]:
    """every subset of d + 1 points spanning aff(A)"""
    d = p.affine_rank()
    return tuple(c for c in combinations(range(len(p)), d + 1) if cell_affine_rank(p, c) == d)


class _Search:
    """
    grow triangulations from a simplex at a vertex of conv(A), always gluing
    a simplex onto the first interior facet that is covered only once
    """

    def __init__(self, p: PointConfiguration):
        self.p = p
        self.d = p.affine_rank()
        self.simplices = full_simplices(p)
        self.hull_facets = [set(f) for f in hull_facets(p, tuple(range(len(p))))] if self.d > 0 else []
        self.total = volume(p)
        self.volumes = [simplex_volume(p, s) for s in self.simplices]
        self.containing: Dict[Cell, List[int]] = defaultdict(list)
        for j, s in enumerate(self.simplices):
            for facet in combinations(s, self.d):
                self.containing[facet].append(j)
        self._compatible: Dict[Tuple[int, int], bool] = {}
        self.found: Set[FrozenSet[int]] = set()

    def compatible(self, i: int, j: int) -> bool:
        key = (min(i, j), max(i, j))
        if key not in self._compatible:
            self._compatible[key] = cells_intersect_properly(self.p, self.simplices[i], self.simplices[j])
        return self._compatible[key]

    def is_boundary(self, facet: Cell) -> bool:
        return any(set(facet) <= f for f in self.hull_facets)

    def open_facet(self, chosen: FrozenSet[int]) -> Optional[Cell]:
        counts: Dict[Cell, int] = defaultdict(int)
        for j in chosen:
            for facet in combinations(self.simplices[j], self.d):
                counts[facet] += 1
        open_facets = sorted(f for f, c in counts.items() if c == 1 and not self.is_boundary(f))
        return open_facets[0] if open_facets else None

    def extend(self, chosen: FrozenSet[int]):
        if chosen in self.found:
            return
        facet = self.open_facet(chosen)
        if facet is None:
            covered = sum((self.volumes[j] for j in chosen), coerce(0, self.p.mode))
            if volumes_close(covered, self.total):
                self.found.add(chosen)
            return
        for j in self.containing[facet]:
            if j in chosen or not all(self.compatible(j, k) for k in chosen):
                continue
            self.extend(chosen | {j})

    def run(self) -> List[Subdivision]:
        if self.d == 0:
            return [Subdivision.of(self.p, [(0,)])]
        apex = self.p.vertices()[0]
        for j, s in enumerate(self.simplices):
            if apex in s:
                self.extend(frozenset({j}))
        out = [Subdivision.of(self.p, [self.simplices[j] for j in chosen]) for chosen in self.found]
        out.sort(key=lambda t: t.cells)
        return out


def all_triangulations(p: PointConfiguration, max_points: Optional[int] = None) -> List[Subdivision]:
    """every triangulation of A, any subset of the points as vertices, in a fixed order"""
    _check_size(p, max_points)
    out = _Search(p).run()
    logger.info(f'{len(out)} triangulations of {len(p)} points')
    return out


def characteristic_vector(t: Subdivision) -> Vector:
    """phi_T(w): total volume of the simplices of t with w as a vertex"""
    p = t.configuration
    if not t.is_triangulation():
        raise SubdivisionError('characteristic vectors need a triangulation; found a non-simplex cell')
    phi = [coerce(0, p.mode)] * len(p)
    for cell in t.cells:
        vol = simplex_volume(p, cell)
        for i in cell:
            phi[i] = phi[i] + vol
    return Vector(tuple(phi))


@dataclass(frozen=True)
class SecondaryPolytope:
    configuration: PointConfiguration
    triangulations: Tuple[Subdivision, ...]
    vectors: Tuple[Vector, ...]
    vertices: Tuple[int, ...]
    liftings: Tuple[Optional[Vector], ...]

    def vertex_vectors(self) -> List[Vector]:
        return [self.vectors[i] for i in self.vertices]

    @property
    def regular(self) -> Tuple[bool, ...]:
        return tuple(w is not None for w in self.liftings)


def secondary_polytope(p: PointConfiguration, max_points: Optional[int] = None) -> SecondaryPolytope:
    """characteristic vectors of all triangulations, their hull vertices certified regular"""
    triangulations = all_triangulations(p, max_points)
    vectors = [characteristic_vector(t) for t in triangulations]
    first: Dict[tuple, int] = {}
    for i, v in enumerate(vectors):
        first.setdefault(v.sort_key(), i)
    distinct = sorted(first.values())
    hull = PointConfiguration(tuple(vectors[i] for i in distinct))
    vertices = tuple(distinct[k] for k in hull.vertices())
    liftings = tuple(is_regular(t) for t in triangulations)
    for i in vertices:
        if liftings[i] is None:
            raise SolverError(f'hull vertex {vectors[i]} comes from a non-regular triangulation')
    logger.info(f'secondary polytope: {len(vertices)} vertices from {len(triangulations)} triangulations')
    return SecondaryPolytope(p, tuple(triangulations), tuple(vectors), vertices, liftings)


def secondary_cone(p: PointConfiguration, t: Subdivision) -> Cone:
    """C(T): the closed cone of liftings inducing the regular subdivision t"""
    if t.configuration != p:
        raise SubdivisionError('the subdivision belongs to another configuration')
    if is_regular(t) is None:
        raise NotRegularError(f'the subdivision {t.cells} is not regular')
    return lifting_cone(t)


def secondary_fan(p: PointConfiguration, max_points: Optional[int] = None) -> Fan:
    """the complete fan of secondary cones of the regular triangulations, with faces"""
    triangulations = all_triangulations(p, max_points)
    cones = [lifting_cone(t) for t in triangulations if is_regular(t) is not None]
    fan = validate_fan(cones, len(p), p.mode)
    logger.info(f'secondary fan with {len(cones)} maximal cones and {len(fan)} cones in all')
    return fan


def regular_subdivisions(p: PointConfiguration, max_points: Optional[int] = None) -> List[Subdivision]:
    """one subdivision per cone of the secondary fan, induced by a relative interior lifting"""
    fan = secondary_fan(p, max_points)
    seen: Dict[tuple, Subdivision] = {}
    for cone in fan.cones:
        s = regular_subdivision(p, cone.relint_point())
        seen.setdefault(s.cells, s)
    return sorted(seen.values(), key=lambda s: (len(s.cells), s.cells))


@dataclass(frozen=True)
class SubdivisionFace:
    """F(S) = conv{phi_T : T refines S}"""
    subdivision: Subdivision
    triangulations: Tuple[int, ...]
    vectors: Tuple[Vector, ...]


def subdivision_face(polytope: SecondaryPolytope, s: Subdivision) -> SubdivisionFace:
    indices = tuple(i for i, t in enumerate(polytope.triangulations) if refines(t, s))
    return SubdivisionFace(s, indices, tuple(polytope.vectors[i] for i in indices))


def face_contains(small: SubdivisionFace, large: SubdivisionFace) -> bool:
    """F(small) ⊆ F(large), on the characteristic vectors spanning them"""
    if not large.vectors:
        return not small.vectors
    hull = PointConfiguration(tuple({v.sort_key(): v for v in large.vectors}.values()))
    return all(hull.in_hull(v) for v in small.vectors)
