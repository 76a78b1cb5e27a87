from fractions import Fraction

import numpy as np
import pytest

from itoric.errors import DimensionMismatchError, NotAFaceError, NotInDualError
from itoric.geometry.cone import Cone, decompose_in_face_dual, separate
from itoric.numeric.scalar import Vector, use_numeric
from itoric.settings import ScalarMode

EXACT = ScalarMode.EXACT
FLOAT = ScalarMode.FLOAT


def vec(*coords):
    return Vector.of(coords, EXACT)


def test_dual_of_a_pointed_cone(sigma3_cone):
    d = sigma3_cone.dual()
    assert set(d.extreme_rays) == {vec(1, 0), vec(1, 2)}
    assert d.lineality_basis == []


def test_dual_of_a_ray_has_lineality():
    d = Cone([[1, 0]], mode=EXACT).dual()
    assert d.extreme_rays == [vec(1, 0)]
    assert d.lineality_basis == [vec(0, 1)]
    assert d.dim == 2


def test_duality_is_an_involution_on_random_cones():
    rng = np.random.default_rng(7)
    for _ in range(40):
        dim = int(rng.integers(1, 4))
        count = int(rng.integers(1, 6))
        gens = rng.integers(-3, 4, size=(count, dim)).tolist()
        c = Cone(gens, dim, EXACT)
        # rebuild from generators so the cached back-link is not used
        d = Cone(list(c.dual().generators), dim, EXACT)
        assert d.dual() == c


def test_duality_of_half_plane_and_line():
    half = Cone([[1, 0], [0, 1], [0, -1]], mode=EXACT)
    assert half.dual() == Cone([[1, 0]], mode=EXACT)
    line = Cone([[1, 1], [-1, -1]], mode=EXACT)
    assert line.lineality_basis == [vec(1, 1)]
    assert line.dual() == Cone([[1, -1], [-1, 1]], mode=EXACT)


def test_faces_of_sigma3(sigma3_cone):
    faces = sigma3_cone.faces()
    assert [f.dim for f in faces] == [0, 1, 1, 2]
    rays = {tuple(map(tuple, (r.coords for r in f.cone.extreme_rays))) for f in faces}
    assert ((Fraction(0), Fraction(1)),) in rays
    assert ((Fraction(2), Fraction(-1)),) in rays


def test_exposed_faces(sigma3_cone):
    assert sigma3_cone.face_by_functional([1, 0]).cone == Cone([[0, 1]], mode=EXACT)
    assert sigma3_cone.face_by_functional([1, 2]).cone == Cone([[2, -1]], mode=EXACT)
    # interior functional exposes the origin
    assert sigma3_cone.face_by_functional([2, 1]).dim == 0
    with pytest.raises(NotInDualError):
        sigma3_cone.face_by_functional([0, 1])


def test_faces_of_a_simplicial_cone_in_three_dimensions():
    c = Cone([[1, 0, 0], [0, 1, 0], [0, 0, 1]], mode=EXACT)
    assert len(c.faces()) == 8
    assert len(c.faces_of_dimension(1)) == 3
    assert len(c.face_inclusions()) == 19
    assert len(Cone.origin(3, EXACT).faces()) == 1


def test_membership_and_relative_interior(sigma3_cone):
    assert sigma3_cone.contains([1, 0])
    assert not sigma3_cone.contains([-1, 0])
    assert sigma3_cone.relint_contains([1, 1])
    assert not sigma3_cone.relint_contains([0, 1])
    assert sigma3_cone.relint_contains(sigma3_cone.relint_point())


def test_intersection_and_from_inequalities():
    first = Cone([[1, 0], [0, 1]], mode=EXACT)
    second = Cone([[-1, 0], [0, 1]], mode=EXACT)
    assert first.intersection(second) == Cone([[0, 1]], mode=EXACT)
    assert Cone.from_inequalities([[1, 0], [0, 1]], 2, EXACT) == first


def test_face_relations(sigma3_cone):
    ray = Cone([[0, 1]], mode=EXACT)
    assert sigma3_cone.is_face(ray)
    assert not sigma3_cone.is_face(Cone([[1, 0]], mode=EXACT))
    with pytest.raises(NotAFaceError):
        sigma3_cone.face_of(Cone([[1, 0]], mode=EXACT))
    assert sigma3_cone.minimal_face_containing([0, 3]).cone == ray
    # tau* = sigma-dual ∩ tau-perp
    assert sigma3_cone.dual_face(ray).cone == Cone([[1, 0]], mode=EXACT)


def test_separation_of_adjacent_quadrants():
    first = Cone([[1, 0], [0, 1]], mode=EXACT)
    second = Cone([[-1, 0], [0, 1]], mode=EXACT)
    m = separate(first, second)
    assert all(m.dot(g) >= 0 for g in first.generators)
    assert all(m.dot(g) <= 0 for g in second.generators)
    assert m.dot(vec(0, 1)) == 0
    with pytest.raises(NotAFaceError):
        separate(first, Cone([[1, 1], [-1, 1]], mode=EXACT))


def test_face_dual_decomposition(sigma3_cone):
    m = vec(1, 0)
    w = vec(-1, 0)
    s, k = decompose_in_face_dual(sigma3_cone, m, w)
    assert sigma3_cone.dual().contains(s)
    assert k >= 0
    assert s - m.scale(k) == w


def test_float_mode_cones():
    with use_numeric(FLOAT, 1e-9):
        c = Cone([[2.0, -1.0], [0.0, 1.0]], mode=FLOAT)
        d = c.dual()
        assert len(d.extreme_rays) == 2
        assert c.contains([1.0, 0.0])
        assert Cone(list(d.generators), 2, FLOAT).dual() == c


def test_dimension_checks():
    with pytest.raises(DimensionMismatchError):
        Cone([[1, 0], [1, 0, 0]], mode=EXACT)
    with pytest.raises(DimensionMismatchError):
        Cone([], mode=EXACT)


def test_from_inequalities_over_a_square_agrees_with_the_dual():
    square = Cone([[1, 1, 1], [1, -1, 1], [-1, 1, 1], [-1, -1, 1]], mode=EXACT)
    normals = [[1, 0, 1], [-1, 0, 1], [0, 1, 1], [0, -1, 1]]
    assert set(square.dual().extreme_rays) == {Vector.of(n, EXACT) for n in normals}
    rebuilt = Cone.from_inequalities(normals, 3, EXACT)
    assert rebuilt == square
    assert len(rebuilt.extreme_rays) == 4
    assert rebuilt.lineality_basis == []


def test_rational_inequalities_stay_exact():
    c = Cone.from_inequalities([[1, Fraction(-1, 3)], [0, 1]], 2, EXACT)
    assert c.extreme_rays == [vec(1, 0), vec(1, 3)]
    assert all(isinstance(a, Fraction) for r in c.extreme_rays for a in r)


def test_no_inequalities_give_the_whole_space():
    c = Cone.from_inequalities([], 2, EXACT)
    assert c.extreme_rays == []
    assert c.lineality_basis == [vec(1, 0), vec(0, 1)]
    assert c == Cone.whole_space(2, EXACT)
