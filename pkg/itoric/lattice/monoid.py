"""
affine monoids of lattice points in dual cones: hilbert bases by bounded
enumeration of the fundamental parallelepiped, and the face monoid identity
S_tau = S_sigma + Z>=(-m)
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_serializer

from itoric.errors import ModeMismatchError, NotInDualError
from itoric.geometry.cone import Cone, decompose_in_face_dual
from itoric.io.mixins import ErrorMessageMixin, JsonDocumentMixin
from itoric.lattice.integer import (
    as_int_list,
    int_vector,
    saturate,
)
from itoric.numeric.scalar import Vector, number_str
from itoric.settings import ScalarMode

logger = logging.getLogger(name=__name__)


@dataclass(frozen=True)
class HilbertBasis:
    cone: Cone
    elements: Tuple[Vector, ...]
    lineality: Tuple[Vector, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def contains(self, v: Vector) -> bool:
        return any(v == e for e in self.elements)


def _require_exact(c: Cone):
    if c.mode != ScalarMode.EXACT:
        raise ModeMismatchError('hilbert bases need an exact rational cone')


def _box_points(bounds: List[int]) -> np.ndarray:
    axes = [np.arange(-b, b + 1, dtype=np.int64) for b in bounds]
    grid = np.meshgrid(*axes, indexing='ij')
    return np.stack([g.ravel() for g in grid], axis=1)


def hilbert_basis(c: Cone) -> HilbertBasis:
    """
    the minimal generating set of the dual cone's lattice points; with
    lineality the irreducible elements are taken modulo the lineality lattice
    and ± its basis is adjoined
    """
    _require_exact(c)
    dual = c.dual()
    n = c.ambient_dim
    rays = [as_int_list(r) for r in dual.extreme_rays]
    lineality = saturate([as_int_list(v) for v in dual.lineality_basis], n)
    spans = saturate([as_int_list(v) for v in dual.extreme_rays + dual.lineality_basis], n)
    generators = rays + lineality.basis + [[-a for a in row] for row in lineality.basis]
    bounds = [sum(abs(g[k]) for g in generators) for k in range(n)]
    logger.debug(f'hilbert basis box bounds {bounds}')

    halfspaces = np.array([as_int_list(h) for h in dual.halfspaces], dtype=np.int64).reshape(-1, n)
    grading = np.array(as_int_list(c.relint_point().primitive()) if c.generators else [0] * n, dtype=np.int64)
    points = _box_points(bounds)
    if len(halfspaces):
        points = points[(points @ halfspaces.T >= 0).all(axis=1)]
    degrees = points @ grading
    keep = degrees > 0
    points, degrees = points[keep], degrees[keep]

    representatives = {}
    for p, d in zip(points.tolist(), degrees.tolist()):
        if p not in spans:
            continue
        rep = tuple(lineality.reduce(p))
        if rep not in representatives:
            representatives[rep] = d
    ordered = sorted(representatives.items(), key=lambda kv: (kv[1], kv[0]))

    irreducible: List[Tuple[Tuple[int, ...], int]] = []
    for rep, d in ordered:
        reducible = False
        for other, d_other in irreducible:
            if d_other >= d:
                break
            diff = int_vector([a - b for a, b in zip(rep, other)])
            if dual.contains(diff):
                reducible = True
                break
        if not reducible:
            irreducible.append((rep, d))
    elements = [int_vector(rep) for rep, _ in irreducible]
    signed = [int_vector(row) for row in lineality.basis] + [int_vector([-a for a in row]) for row in lineality.basis]
    all_elements = sorted(elements + signed, key=lambda v: v.sort_key())
    logger.debug(f'hilbert basis of size {len(all_elements)}')
    return HilbertBasis(c, tuple(all_elements), tuple(int_vector(row) for row in lineality.basis))


class Decomposition(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)
    element: Vector
    base: Vector
    multiple: int

    @field_serializer('element', 'base')
    def vector_as_strings(self, v: Vector, _info):
        return [number_str(a) for a in v]


class FaceMonoidWitness(BaseModel, ErrorMessageMixin, JsonDocumentMixin):
    """each hilbert basis element w of S_tau written as base + multiple * (-m)"""
    model_config = ConfigDict(arbitrary_types_allowed=True)
    is_valid: bool
    error_message: Optional[str] = None
    functional: Vector
    face_generators: List[Vector]
    face_basis: List[Vector]
    decompositions: List[Decomposition]

    @field_serializer('functional')
    def functional_as_strings(self, v: Vector, _info):
        return [number_str(a) for a in v]

    @field_serializer('face_generators', 'face_basis')
    def vectors_as_strings(self, vs: List[Vector], _info):
        return [[number_str(a) for a in v] for v in vs]


def face_monoid_check(c: Cone, m) -> FaceMonoidWitness:
    _require_exact(c)
    m = c._check(m)
    if not m.is_integral():
        raise ModeMismatchError(f'{m} is not an integer functional')
    if not c.dual().contains(m):
        raise NotInDualError(f'{m} is not in the dual cone')
    face = c.face_by_functional(m)
    tau_basis = hilbert_basis(face.cone)
    decompositions = []
    error: Optional[str] = None
    for w in tau_basis.elements:
        s, k = decompose_in_face_dual(c, m, w)
        k_int = math.ceil(k)
        base = w + m.scale(k_int)
        decompositions.append(Decomposition(element=w, base=base, multiple=k_int))
        if not (base.is_integral() and c.dual().contains(base) and k_int >= 0):
            error = f'{w} has no decomposition in S_sigma + Z>=(-m)'
            break
        if base - m.scale(k_int) != w:
            error = f'decomposition of {w} does not add up'
            break
    logger.debug(f'face monoid check for {m}: {len(decompositions)} decompositions')
    return FaceMonoidWitness(
        is_valid=error is None,
        error_message=error,
        functional=m,
        face_generators=list(face.cone.generators),
        face_basis=list(tau_basis.elements),
        decompositions=decompositions,
    )


def is_monoid_combination(target: Vector, basis: List[Vector], bound: int = 12) -> bool:
    """
    whether target is a nonnegative integer combination of basis, by bounded
    search; used to certify hilbert bases on small instances
    """
    target_list = tuple(as_int_list(target))
    vectors = [tuple(as_int_list(b)) for b in basis]
    frontier = {tuple(0 for _ in target_list)}
    seen = set(frontier)
    for _ in range(bound):
        if target_list in seen:
            return True
        nxt = set()
        for p in frontier:
            for b in vectors:
                q = tuple(x + y for x, y in zip(p, b))
                if q not in seen and max(abs(x) for x in q) <= 4 * bound:
                    seen.add(q)
                    nxt.add(q)
        frontier = nxt
    return target_list in seen
