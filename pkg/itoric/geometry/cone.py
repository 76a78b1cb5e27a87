"""
polyhedral cones with both representations and their face lattices

a cone keeps the generators it was built from; the halfspace side, extreme
rays and faces are computed on first use by cddlib's double description
conversion and cached under the cone's lock.
"""
import logging
import threading
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

import cdd

from itoric.errors import (
    DimensionMismatchError,
    ModeMismatchError,
    NotAFaceError,
    NotInDualError,
    SolverError,
)
from itoric.numeric.linalg import Matrix, project_off, rank, span_basis
from itoric.numeric.scalar import (
    Number,
    Vector,
    active_mode,
    as_vector,
    sign,
)
from itoric.settings import ScalarMode

logger = logging.getLogger(name=__name__)

_CDD_NUMBER_TYPE = {ScalarMode.EXACT: 'fraction', ScalarMode.FLOAT: 'float'}


def _identity(dim: int, mode: ScalarMode) -> List[Vector]:
    return [Vector.unit(dim, i, mode) for i in range(dim)]


def _to_cdd(value: Number, mode: ScalarMode):
    return value if mode == ScalarMode.EXACT else float(value)


def double_description(
        inequalities: Sequence[Vector],
        dim: int,
        mode: ScalarMode) -> Tuple[List[Vector], List[Vector]]:
    """
    V-representation of {x : <g, x> >= 0 for all g} as (extreme rays,
    lineality basis), canonicalized: the lineality basis is in reduced row
    echelon form, rays are orthogonal to it, primitive (exact) or unit (float),
    deduplicated and sorted

    the conversion itself is cddlib's, in rational arithmetic for exact mode
    """
    rows = [[0] + [_to_cdd(a, mode) for a in g] for g in inequalities if not g.is_zero()]
    if not rows:
        return [], _identity(dim, mode)
    mat = cdd.Matrix(rows, number_type=_CDD_NUMBER_TYPE[mode])
    mat.rep_type = cdd.RepType.INEQUALITY
    try:
        generators = cdd.Polyhedron(mat).get_generators()
    except (RuntimeError, ValueError) as e:
        raise SolverError(f'cddlib failed on {len(rows)} inequalities in dimension {dim}: {e}')
    lines: List[Vector] = []
    rays: List[Vector] = []
    for i in range(generators.row_size):
        row = generators[i]
        # the apex (a vertex row) carries no direction
        if row[0] != 0:
            continue
        v = Vector.of(row[1:], mode)
        if v.is_zero():
            continue
        if i in generators.lin_set:
            lines.append(v)
        else:
            rays.append(v)
    logger.debug(f'cddlib: {len(rows)} inequalities -> {len(rays)} rays, {len(lines)} lines')

    basis = span_basis(lines, dim) if lines else []
    canonical: Dict[tuple, Vector] = {}
    for r in rays:
        r = project_off(r, basis).primitive()
        if r.is_zero():
            continue
        canonical.setdefault(r.sort_key(), r)
    out = [canonical[k] for k in sorted(canonical)]
    return out, basis


@dataclass(frozen=True)
class Face:
    """
    a face of ``parent``: its cone, the parent's extreme rays and generators it
    contains, and a functional m in the dual exposing it
    """
    parent: "Cone"
    cone: "Cone"
    ray_indices: FrozenSet[int]
    generator_indices: Tuple[int, ...]
    functional: Vector

    @property
    def dim(self) -> int:
        return self.cone.dim

    def __contains__(self, v) -> bool:
        return self.cone.contains(v)


class Cone:
    """
    a polyhedral cone in an n-dimensional real vector space; zero and
    duplicate generators are dropped on construction
    """

    def __init__(
            self,
            generators: Sequence = (),
            ambient_dim: Optional[int] = None,
            mode: Optional[ScalarMode] = None):
        vectors = [as_vector(g, mode) for g in generators]
        if vectors:
            mode = vectors[0].mode
            dims = {v.dim for v in vectors}
            if len(dims) > 1:
                raise DimensionMismatchError('generators of different dimensions')
            dim = dims.pop()
            if ambient_dim is not None and ambient_dim != dim:
                raise DimensionMismatchError(f'generators live in dimension {dim}, not {ambient_dim}')
            ambient_dim = dim
        if ambient_dim is None:
            raise DimensionMismatchError('a cone without generators needs its ambient dimension')
        self.mode: ScalarMode = mode or active_mode()
        for v in vectors:
            if v.mode != self.mode:
                raise ModeMismatchError('generators in mixed scalar modes')
        unique: List[Vector] = []
        keys = set()
        for v in vectors:
            if v.is_zero() or v.sort_key() in keys:
                continue
            keys.add(v.sort_key())
            unique.append(v)
        self.generators: Tuple[Vector, ...] = tuple(unique)
        self.ambient_dim: int = ambient_dim
        self._lock = threading.RLock()
        self._cache: Dict[str, object] = {}

    def _cached(self, name: str, compute: Callable):
        with self._lock:
            if name not in self._cache:
                self._cache[name] = compute()
            return self._cache[name]

    @classmethod
    def from_inequalities(
            cls,
            normals: Sequence,
            ambient_dim: int,
            mode: Optional[ScalarMode] = None) -> "Cone":
        """the cone {v : <h, v> >= 0 for every h}"""
        mode = mode or (as_vector(normals[0]).mode if normals else active_mode())
        normals = [as_vector(h, mode) for h in normals]
        for h in normals:
            if h.dim != ambient_dim:
                raise DimensionMismatchError(f'inequality of length {h.dim} in dimension {ambient_dim}')
        rays, lineality = double_description(normals, ambient_dim, mode)
        cone = cls(rays + lineality + [-l for l in lineality], ambient_dim, mode)
        cone._cache['vrep'] = (rays, lineality)
        return cone

    @classmethod
    def whole_space(cls, ambient_dim: int, mode: Optional[ScalarMode] = None) -> "Cone":
        basis = _identity(ambient_dim, mode or active_mode())
        return cls(basis + [-b for b in basis], ambient_dim, mode)

    @classmethod
    def origin(cls, ambient_dim: int, mode: Optional[ScalarMode] = None) -> "Cone":
        return cls((), ambient_dim, mode)

    # representations

    def _vrep(self) -> Tuple[List[Vector], List[Vector]]:
        # extreme rays and lineality basis of this cone
        return self._cached('vrep', lambda: double_description(
            self.halfspaces, self.ambient_dim, self.mode))

    def _dual_vrep(self) -> Tuple[List[Vector], List[Vector]]:
        return self._cached('dual_vrep', lambda: double_description(
            self.generators, self.ambient_dim, self.mode))

    @property
    def extreme_rays(self) -> List[Vector]:
        """extreme rays modulo the lineality space"""
        return list(self._vrep()[0])

    @property
    def lineality_basis(self) -> List[Vector]:
        return list(self._vrep()[1])

    @property
    def facet_normals(self) -> List[Vector]:
        """inner normals of the facets; each is nonzero somewhere on the cone"""
        return list(self._dual_vrep()[0])

    @property
    def equations(self) -> List[Vector]:
        """basis of the orthogonal complement of the span"""
        return list(self._dual_vrep()[1])

    @property
    def halfspaces(self) -> List[Vector]:
        """H-representation: facet normals plus both signs of the equations"""
        eqs = self.equations
        return self.facet_normals + eqs + [-e for e in eqs]

    @property
    def dim(self) -> int:
        if not self.generators:
            return 0
        return rank(Matrix.from_rows(list(self.generators), self.ambient_dim))

    @property
    def key(self) -> tuple:
        """canonical form; two cones are equal iff their keys are"""
        rays, lineality = self._vrep()
        return (
            self.ambient_dim,
            tuple(l.sort_key() for l in lineality),
            tuple(r.sort_key() for r in rays),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cone):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.mode == other.mode and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        gens = ', '.join(str(g) for g in self.generators)
        return f'Cone[{self.ambient_dim}]{{{gens}}}'

    def is_strongly_convex(self) -> bool:
        return not self.lineality_basis

    def is_linear(self) -> bool:
        return not self.extreme_rays

    # duality

    def dual(self) -> "Cone":
        def compute():
            rays, lineality = self._dual_vrep()
            d = Cone(rays + lineality + [-l for l in lineality], self.ambient_dim, self.mode)
            d._cache['vrep'] = (rays, lineality)
            d._cache['dual'] = self
            return d
        return self._cached('dual', compute)

    def lineality(self) -> "Cone":
        """the minimal face W = cone ∩ (-cone), generated by ± a basis"""
        basis = self.lineality_basis
        return Cone(basis + [-b for b in basis], self.ambient_dim, self.mode)

    def _check(self, v) -> Vector:
        v = as_vector(v, self.mode)
        if v.dim != self.ambient_dim:
            raise DimensionMismatchError(f'vector of dimension {v.dim} against a cone in dimension {self.ambient_dim}')
        return v

    def contains(self, v) -> bool:
        v = self._check(v)
        return all(sign(h.dot(v)) >= 0 for h in self.halfspaces)

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def contains_cone(self, other: "Cone") -> bool:
        return all(self.contains(g) for g in other.generators)

    def relint_contains(self, v) -> bool:
        v = self._check(v)
        if not all(sign(e.dot(v)) == 0 for e in self.equations):
            return False
        return all(sign(h.dot(v)) > 0 for h in self.facet_normals)

    def relint_point(self) -> Vector:
        """sum of the extreme rays; lies in the relative interior"""
        total = Vector.zero(self.ambient_dim, self.mode)
        for r in self.extreme_rays:
            total = total + r
        return total

    def intersection(self, other: "Cone") -> "Cone":
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatchError('cones live in different dimensions')
        return Cone.from_inequalities(self.halfspaces + other.halfspaces, self.ambient_dim, self.mode)

    def direct_sum(self, other: "Cone") -> "Cone":
        zero_a = Vector.zero(self.ambient_dim, self.mode)
        zero_b = Vector.zero(other.ambient_dim, other.mode)
        gens = [g.direct_sum(zero_b) for g in self.generators]
        gens += [zero_a.direct_sum(g) for g in other.generators]
        return Cone(gens, self.ambient_dim + other.ambient_dim, self.mode)

    # faces

    def face_by_functional(self, m) -> Face:
        m = self._check(m)
        if not self.dual().contains(m):
            raise NotInDualError(f'{m} is not in the dual cone')
        rays = self.extreme_rays
        ray_indices = frozenset(i for i, r in enumerate(rays) if sign(m.dot(r)) == 0)
        return self._make_face(ray_indices, m)

    def _make_face(self, ray_indices: FrozenSet[int], m: Vector) -> Face:
        generator_indices = tuple(i for i, g in enumerate(self.generators) if sign(m.dot(g)) == 0)
        cone = Cone([self.generators[i] for i in generator_indices], self.ambient_dim, self.mode)
        return Face(self, cone, ray_indices, generator_indices, m)

    def _face_of_rays(self, ray_indices: FrozenSet[int]) -> Face:
        rays = self.extreme_rays
        normals = [h for h in self.facet_normals if all(sign(h.dot(rays[i])) == 0 for i in ray_indices)]
        m = Vector.zero(self.ambient_dim, self.mode)
        for h in normals:
            m = m + h
        return self._make_face(ray_indices, m)

    def faces(self) -> List[Face]:
        """every face once, from the minimal face up to the cone, by dimension"""
        def compute():
            rays = self.extreme_rays
            normals = self.facet_normals
            top = frozenset(range(len(rays)))
            found = {top}
            frontier = [top]
            while frontier:
                nxt = []
                for face in frontier:
                    for h in normals:
                        sub = frozenset(i for i in face if sign(h.dot(rays[i])) == 0)
                        if sub != face and sub not in found:
                            found.add(sub)
                            nxt.append(sub)
                frontier = nxt
            out = [self._face_of_rays(s) for s in found]
            out.sort(key=lambda f: (f.dim, sorted(f.ray_indices)))
            logger.debug(f'{len(out)} faces for {self!r}')
            return out
        return list(self._cached('faces', compute))

    def face_inclusions(self) -> List[Tuple[int, int]]:
        """pairs (i, j) with faces()[i] a proper face of faces()[j]"""
        faces = self.faces()
        return [
            (i, j)
            for i, a in enumerate(faces)
            for j, b in enumerate(faces)
            if a.ray_indices < b.ray_indices
        ]

    def minimal_face_containing(self, v) -> Face:
        v = self._check(v)
        if not self.contains(v):
            raise NotAFaceError(f'{v} does not lie in the cone')
        m = Vector.zero(self.ambient_dim, self.mode)
        for h in self.facet_normals:
            if sign(h.dot(v)) == 0:
                m = m + h
        return self.face_by_functional(m)

    def is_face(self, other: "Cone") -> bool:
        if other.ambient_dim != self.ambient_dim or not self.contains_cone(other):
            return False
        if not other.generators:
            return self.is_strongly_convex()
        return self.minimal_face_containing(other.relint_point()).cone == other

    def face_of(self, other: "Cone") -> Face:
        if not self.is_face(other):
            raise NotAFaceError(f'{other!r} is not a face of {self!r}')
        if not other.generators:
            return self._face_of_rays(frozenset())
        return self.minimal_face_containing(other.relint_point())

    def dual_face(self, face) -> Face:
        """tau* = dual ∩ tau-perp, a face of the dual"""
        tau = face.cone if isinstance(face, Face) else face
        if not self.is_face(tau):
            raise NotAFaceError(f'{tau!r} is not a face of {self!r}')
        return self.dual().face_by_functional(tau.relint_point())

    def faces_of_dimension(self, d: int) -> List[Face]:
        return [f for f in self.faces() if f.dim == d]


def separate(c1: Cone, c2: Cone) -> Vector:
    """
    m nonnegative on c1 and nonpositive on c2 cutting both in their common face
    """
    if c1.ambient_dim != c2.ambient_dim:
        raise DimensionMismatchError('cones live in different dimensions')
    tau = c1.intersection(c2)
    if not c1.is_face(tau) or not c2.is_face(tau):
        raise NotAFaceError('the cones do not meet in a common face')
    difference = Cone(list(c1.generators) + [-g for g in c2.generators], c1.ambient_dim, c1.mode)
    m = difference.dual().relint_point()
    if not (c1.face_by_functional(m).cone == tau and c2.face_by_functional(-m).cone == tau):
        raise SolverError(f'separating functional {m} failed verification')
    return m


def decompose_in_face_dual(c: Cone, m, w) -> Tuple[Vector, Number]:
    """
    for tau = H_m ∩ c and w in tau-dual returns (s, k) with s in c-dual, k >= 0
    and w = s + k(-m)
    """
    m = c._check(m)
    w = c._check(w)
    tau = c.face_by_functional(m).cone
    if not tau.dual().contains(w):
        raise NotInDualError(f'{w} is not in the dual of the face')
    k = w.zero_value()
    for g in c.extreme_rays:
        mg = m.dot(g)
        if sign(mg) > 0:
            k = max(k, -w.dot(g) / mg)
    s = w + m.scale(k)
    if not c.dual().contains(s):
        raise SolverError(f'decomposition of {w} left the dual cone')
    return s, k
