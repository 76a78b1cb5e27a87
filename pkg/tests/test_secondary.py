import pytest

from itoric.errors import NotRegularError, SizeBoundError, SubdivisionError
from itoric.gallery.items import CONCENTRIC, CONCENTRIC_TWISTED
from itoric.geometry.config import PointConfiguration
from itoric.secondary.polytope import (
    all_triangulations,
    characteristic_vector,
    face_contains,
    secondary_cone,
    secondary_fan,
    secondary_polytope,
    regular_subdivisions,
    subdivision_face,
)
from itoric.secondary.subdivision import (
    Subdivision,
    affine_dependencies,
    is_regular,
    lifting_cone,
    pulling_triangulation,
    refines,
    regular_subdivision,
    validate_subdivision,
    volume,
)
from itoric.settings import ScalarMode

EXACT = ScalarMode.EXACT


def strs(v):
    return [str(a) for a in v]


@pytest.mark.parametrize(
    "lifting, cells",
    [
        ([0, 1, 0], ((0, 2),)),
        ([0, -1, 0], ((0, 1), (1, 2))),
        ([0, 0, 0], ((0, 1, 2),)),
        ([5, 1, -3], ((0, 1, 2),)),
    ],
)
def test_regular_subdivisions_of_the_segment(segment3, lifting, cells):
    assert regular_subdivision(segment3, lifting).cells == cells


def test_regular_subdivision_of_the_square(square):
    s = regular_subdivision(square, [1, 0, 0, 0])
    assert s.cells == ((0, 1, 2), (1, 2, 3))
    assert s.is_triangulation()
    assert s.absorbs_all_points
    with pytest.raises(SubdivisionError):
        regular_subdivision(square, [1, 0, 0])


def test_volumes(triangle, square):
    assert volume(triangle) == pytest.approx(0.5)
    assert volume(square) == 1
    assert volume(square, (0, 1)) == 0


def test_subdivision_validation(square):
    assert len(validate_subdivision(square, [[0, 1, 3], [0, 2, 3]])) == 2
    with pytest.raises(SubdivisionError):
        validate_subdivision(square, [[0, 1, 2], [0, 1, 3]])
    with pytest.raises(SubdivisionError):
        validate_subdivision(square, [[0, 1, 2]])
    with pytest.raises(SubdivisionError):
        validate_subdivision(square, [[0, 1]])
    with pytest.raises(SubdivisionError):
        validate_subdivision(square, [])


def test_regularity_witness_reproduces_the_subdivision(square):
    s = Subdivision.of(square, [[0, 1, 3], [0, 2, 3]])
    witness = is_regular(s)
    assert witness is not None
    assert regular_subdivision(square, witness).cells == s.cells


def test_concentric_triangles():
    p = PointConfiguration.of(CONCENTRIC, EXACT)
    s1 = regular_subdivision(p, [3, 2, 1, 0, 0, 0])
    assert [list(c) for c in s1.cells] == [
        [0, 1, 3], [0, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 5], [2, 4, 5], [3, 4, 5]]
    assert is_regular(s1) is not None
    s2 = validate_subdivision(p, CONCENTRIC_TWISTED)
    assert is_regular(s2) is None
    with pytest.raises(NotRegularError):
        secondary_cone(p, s2)


def test_triangulations(segment3, square, triangle):
    assert [t.cells for t in all_triangulations(segment3)] == [((0, 1), (1, 2)), ((0, 2),)]
    assert len(all_triangulations(square)) == 2
    assert len(all_triangulations(triangle)) == 1
    with pytest.raises(SizeBoundError):
        all_triangulations(segment3, max_points=2)


def test_characteristic_vectors(segment3):
    fine, coarse = all_triangulations(segment3)
    assert strs(characteristic_vector(fine)) == ["1", "2", "1"]
    assert strs(characteristic_vector(coarse)) == ["2", "0", "2"]
    with pytest.raises(SubdivisionError):
        characteristic_vector(Subdivision.of(segment3, [[0, 1, 2]]))


def test_secondary_polytope_of_the_square(square):
    polytope = secondary_polytope(square)
    assert len(polytope.triangulations) == 2
    assert all(polytope.regular)
    assert sorted(strs(v) for v in polytope.vertex_vectors()) == [
        ["1", "1/2", "1/2", "1"], ["1/2", "1", "1", "1/2"]]


def test_secondary_cone_of_the_segment(segment3):
    fine = Subdivision.of(segment3, [[0, 1], [1, 2]])
    c = secondary_cone(segment3, fine)
    assert [strs(h) for h in c.facet_normals] == [["1", "-2", "1"]]
    assert len(c.lineality_basis) == 2
    assert c == lifting_cone(fine)


def test_secondary_fans_are_complete(segment3, square):
    for p in (segment3, square):
        f = secondary_fan(p)
        assert f.is_complete()
        assert len(f.maximal()) == 2
        assert f.lineality.dim == p.dim + 1


def test_regular_subdivisions_enumerates_every_coarsening(segment3):
    cells = [s.cells for s in regular_subdivisions(segment3)]
    assert cells == [((0, 1, 2),), ((0, 2),), ((0, 1), (1, 2))]


def test_faces_of_the_secondary_polytope(square):
    polytope = secondary_polytope(square)
    trivial = Subdivision.of(square, [[0, 1, 2, 3]])
    whole = subdivision_face(polytope, trivial)
    assert len(whole.triangulations) == 2
    single = subdivision_face(polytope, polytope.triangulations[0])
    assert single.triangulations == (0,)
    assert face_contains(single, whole)
    assert not face_contains(whole, single)
    assert refines(polytope.triangulations[1], trivial)


def test_affine_dependencies(segment3):
    fine = Subdivision.of(segment3, [[0, 1], [1, 2]])
    assert len(affine_dependencies(fine)) == 3
    assert len(affine_dependencies(Subdivision.of(segment3, [[0, 1, 2]]))) == 2


def test_pulling_triangulation(square):
    assert sorted(pulling_triangulation(square)) == [(0, 1, 3), (0, 2, 3)]
