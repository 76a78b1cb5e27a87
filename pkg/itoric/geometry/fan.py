"""
fans: validation with face completion, products, stars, completeness, normal
and face fans of point configurations, and maps of fans
"""
import logging
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from itoric.errors import (
    DimensionMismatchError,
    FanMapError,
    FanValidationError,
    PreconditionError,
)
from itoric.geometry.cone import Cone
from itoric.geometry.config import PointConfiguration
from itoric.numeric.linalg import Matrix, annihilator
from itoric.numeric.scalar import Vector, active_mode, as_vector, coerce, sign
from itoric.settings import ScalarMode

logger = logging.getLogger(name=__name__)


@dataclass(frozen=True)
class Fan:
    ambient_dim: int
    mode: ScalarMode
    cones: Tuple[Cone, ...]
    incidence: Tuple[Tuple[int, int], ...]
    labels: Optional[Tuple[Tuple[int, ...], ...]] = None
    quotient_basis: Optional[Tuple[Vector, ...]] = None
    _index: Dict[tuple, int] = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self._index.update({c.key: i for i, c in enumerate(self.cones)})

    def __len__(self) -> int:
        return len(self.cones)

    def __iter__(self):
        return iter(self.cones)

    def __getitem__(self, i: int) -> Cone:
        return self.cones[i]

    def index_of(self, cone: Cone) -> Optional[int]:
        return self._index.get(cone.key)

    def cone(self, index: int) -> Cone:
        if not 0 <= index < len(self.cones):
            raise PreconditionError(f'cone index {index} out of range for a fan with {len(self.cones)} cones')
        return self.cones[index]

    @property
    def lineality(self) -> Cone:
        """the common minimal face"""
        return self.cones[0]

    def maximal(self) -> List[int]:
        below = {i for i, _ in self.incidence}
        return [i for i in range(len(self.cones)) if i not in below]

    def of_dimension(self, d: int) -> List[int]:
        return [i for i, c in enumerate(self.cones) if c.dim == d]

    def faces_of(self, index: int) -> List[int]:
        """indices of the cones that are faces of cone ``index``, itself included"""
        return sorted({i for i, j in self.incidence if j == index} | {index})

    def cofaces_of(self, index: int) -> List[int]:
        """indices of the cones having cone ``index`` as a face, itself included"""
        return sorted({j for i, j in self.incidence if i == index} | {index})

    def is_face_of(self, i: int, j: int) -> bool:
        return i == j or (i, j) in set(self.incidence)

    def is_strongly_convex(self) -> bool:
        return self.cones[0].is_strongly_convex()

    def cone_of_point(self, v) -> Optional[int]:
        """the cone whose relative interior holds v"""
        v = as_vector(v, self.mode)
        for i, c in enumerate(self.cones):
            if c.relint_contains(v):
                return i
        return None

    def is_complete(self) -> bool:
        return is_complete(self)


def _origin_fan(mode: ScalarMode, quotient_basis=None) -> Fan:
    return Fan(0, mode, (Cone.origin(0, mode),), (), quotient_basis=quotient_basis)


def validate_fan(
        cones: Sequence[Cone],
        ambient_dim: Optional[int] = None,
        mode: Optional[ScalarMode] = None) -> Fan:
    """
    check that any two input cones meet in a common face, then close the
    collection under faces; the error names the offending input pair
    """
    cones = list(cones)
    if not cones:
        raise FanValidationError('a fan needs at least one cone')
    ambient_dim = cones[0].ambient_dim if ambient_dim is None else ambient_dim
    mode = mode or cones[0].mode
    for c in cones:
        if c.ambient_dim != ambient_dim:
            raise DimensionMismatchError(f'cone in dimension {c.ambient_dim} in a fan in dimension {ambient_dim}')
    if ambient_dim == 0:
        return _origin_fan(mode)
    for i in range(len(cones)):
        for j in range(i + 1, len(cones)):
            tau = cones[i].intersection(cones[j])
            if not cones[i].is_face(tau) or not cones[j].is_face(tau):
                raise FanValidationError(
                    f'cones {i} and {j} do not meet in a common face', pair=(i, j))
    closed: Dict[tuple, Cone] = {}
    for c in cones:
        for face in c.faces():
            closed.setdefault(face.cone.key, face.cone)
    ordered = sorted(closed.values(), key=lambda c: (c.dim, c.key))
    incidence = []
    for i, a in enumerate(ordered):
        for j, b in enumerate(ordered):
            if i != j and a.dim < b.dim and b.is_face(a):
                incidence.append((i, j))
    logger.debug(f'validated fan: {len(cones)} input cones, {len(ordered)} after face completion')
    return Fan(ambient_dim, mode, tuple(ordered), tuple(incidence))


def product_fan(f1: Fan, f2: Fan) -> Fan:
    """all products of a cone of f1 with a cone of f2 in the direct sum"""
    if f1.mode != f2.mode:
        raise PreconditionError('fans in different scalar modes')
    if f2.ambient_dim == 0:
        return f1
    if f1.ambient_dim == 0:
        return f2
    cones = [a.direct_sum(b) for a in f1.cones for b in f2.cones]
    return validate_fan(cones, f1.ambient_dim + f2.ambient_dim, f1.mode)


def star(f: Fan, index: int) -> Fan:
    """
    images of the cones containing cone ``index`` in N / span; the quotient is
    realized by the rows of ``quotient_basis``, a basis of the annihilator
    """
    sigma = f.cone(index)
    basis = tuple(annihilator(list(sigma.generators), f.ambient_dim, f.mode))
    if not basis:
        return _origin_fan(f.mode, quotient_basis=())
    q = Matrix.from_rows(list(basis), f.ambient_dim)
    images = []
    for j in f.cofaces_of(index):
        gens = [q.apply(g) for g in f.cones[j].generators]
        images.append(Cone(gens, len(basis), f.mode))
    fan = validate_fan(images, len(basis), f.mode)
    return replace(fan, quotient_basis=basis, _index={})


def _sampled_completeness(f: Fan, full: List[int], samples: int = 256) -> bool:
    rng = np.random.default_rng(0)
    for direction in rng.normal(size=(samples, f.ambient_dim)):
        v = Vector(tuple(float(x) for x in direction / np.linalg.norm(direction)))
        if not any(f.cones[i].contains(v) for i in full):
            return False
    return True


def is_complete(f: Fan) -> bool:
    """
    every codimension-one cone lies in exactly two full cones and the full
    cones form a connected adjacency graph
    """
    n = f.ambient_dim
    if n == 0:
        return True
    full = f.of_dimension(n)
    if not full:
        return False
    verdict = True
    adjacency = {i: set() for i in full}
    for r in f.of_dimension(n - 1):
        owners = [j for j in full if f.is_face_of(r, j)]
        if len(owners) != 2:
            verdict = False
            break
        a, b = owners
        adjacency[a].add(b)
        adjacency[b].add(a)
    if verdict:
        seen = {full[0]}
        stack = [full[0]]
        while stack:
            for nb in adjacency[stack.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        verdict = len(seen) == len(full)
    if f.mode == ScalarMode.FLOAT:
        sampled = _sampled_completeness(f, full)
        if sampled != verdict:
            logger.warning(f'completeness check disagrees with sampling ({verdict} vs {sampled}); near-degenerate cones')
    return verdict


def normal_fan(p: PointConfiguration) -> Fan:
    """
    cones sigma_F = {v : <f, v> <= <a, v> for f in F, a in A}, labelled by the
    face F of conv(A) they select
    """
    vertex_cones = []
    for i in p.vertices():
        a = p[i]
        normals = [b - a for j, b in enumerate(p.points) if j != i]
        vertex_cones.append(Cone.from_inequalities(normals, p.dim, p.mode) if normals
                            else Cone.whole_space(p.dim, p.mode))
    fan = validate_fan(vertex_cones, p.dim, p.mode)
    labels = tuple(p.minimizers(c.relint_point()) for c in fan.cones)
    logger.debug(f'normal fan with {len(fan)} cones over {len(p)} points')
    return replace(fan, labels=labels, _index={})


def _check_origin_interior(p: PointConfiguration):
    if not p.cone().is_linear() or p.cone().dim != p.dim:
        raise PreconditionError('the origin must lie in the interior of conv(A)')


def polar(p: PointConfiguration) -> PointConfiguration:
    """vertices of {u : <u, v> >= -1 for v in conv(A)}; origin interior"""
    _check_origin_interior(p)
    one = Vector.of([1], p.mode)
    normals = [one.direct_sum(a) for a in p.points]
    normals.append(Vector.unit(p.dim + 1, 0, p.mode))
    lifted = Cone.from_inequalities(normals, p.dim + 1, p.mode)
    vertices = []
    for r in lifted.extreme_rays:
        t = r[0]
        if sign(t) > 0:
            vertices.append(Vector(tuple(x / t for x in r.coords[1:])))
    vertices.sort(key=lambda v: v.sort_key())
    return PointConfiguration(tuple(vertices))


def face_fan(p: PointConfiguration) -> Fan:
    """cones over the proper faces of conv(A); origin interior"""
    dual = polar(p)
    minus_one = coerce(-1, p.mode)
    cones = []
    for u in dual.points:
        facet = [a for a in p.points if sign(u.dot(a) - minus_one) == 0]
        cones.append(Cone(facet, p.dim, p.mode))
    return validate_fan(cones, p.dim, p.mode)


@dataclass(frozen=True)
class FanMap:
    matrix: Matrix
    source: Fan
    target: Fan
    assignment: Tuple[int, ...]

    def image(self, v: Vector) -> Vector:
        return self.matrix.apply(v)


def validate_fan_map(psi: Matrix, f1: Fan, f2: Fan) -> FanMap:
    """assign each source cone the smallest target cone holding its image"""
    if psi.ncols != f1.ambient_dim or psi.nrows != f2.ambient_dim:
        raise DimensionMismatchError(
            f'a {psi.nrows}x{psi.ncols} matrix cannot map dimension {f1.ambient_dim} to {f2.ambient_dim}')
    assignment = []
    for i, sigma in enumerate(f1.cones):
        gens = [psi.apply(g) for g in sigma.generators]
        image = Cone(gens, f2.ambient_dim, f2.mode)
        target = next((j for j, c in enumerate(f2.cones) if c.contains_cone(image)), None)
        if target is None:
            raise FanMapError(f'the image of source cone {i} lies in no target cone', source_cone=i)
        assignment.append(target)
    return FanMap(psi, f1, f2, tuple(assignment))


def fan_from_rays(rays: Sequence, maximal: Sequence[Sequence[int]], mode: Optional[ScalarMode] = None) -> Fan:
    """convenience constructor from a ray list and index sets of maximal cones"""
    mode = mode or active_mode()
    vectors = [as_vector(r, mode) for r in rays]
    if not vectors:
        raise FanValidationError('no rays given')
    cones = [Cone([vectors[i] for i in idx], vectors[0].dim, mode) for idx in maximal]
    return validate_fan(cones, vectors[0].dim, mode)
