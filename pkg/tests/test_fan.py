import pytest

from itoric.errors import FanMapError, FanValidationError, PreconditionError
from itoric.gallery.fans import p1_fan
from itoric.geometry.cone import Cone
from itoric.geometry.config import PointConfiguration
from itoric.geometry.fan import (
    face_fan,
    normal_fan,
    polar,
    product_fan,
    star,
    validate_fan,
    validate_fan_map,
)
from itoric.numeric.linalg import Matrix
from itoric.settings import ScalarMode

EXACT = ScalarMode.EXACT


def cone(*gens):
    return Cone(list(gens), mode=EXACT)


def test_face_completion_counts(sigma1_fan, sigma2_fan, sigma3_fan, hirzebruch2_fan):
    assert len(sigma1_fan) == 6
    assert len(sigma2_fan) == 7
    assert len(sigma3_fan) == 9
    assert len(hirzebruch2_fan) == 9
    assert len(sigma3_fan.maximal()) == 4
    assert sigma3_fan.lineality.dim == 0


def test_fan_cones_are_ordered_by_dimension(sigma2_fan):
    dims = [c.dim for c in sigma2_fan]
    assert dims == sorted(dims)
    ray = sigma2_fan.index_of(cone([1, 0]))
    assert ray is not None
    assert len(sigma2_fan.cofaces_of(ray)) == 3
    assert len(sigma2_fan.faces_of(sigma2_fan.maximal()[0])) == 4
    assert sigma2_fan.is_face_of(0, ray)


def test_validation_names_the_offending_pair():
    cones = [cone([-1, 0], [0, -1]), cone([1, 0], [0, 1]), cone([1, 1], [-1, 1])]
    with pytest.raises(FanValidationError) as err:
        validate_fan(cones)
    assert err.value.pair == (1, 2)


def test_normal_fans_of_triangle_and_square(triangle, square, sigma2_fan, sigma3_fan):
    assert set(normal_fan(triangle).cones) == set(sigma2_fan.cones)
    nf = normal_fan(square)
    assert set(nf.cones) == set(sigma3_fan.cones)
    # the full cones select the vertices, the origin selects everything
    assert nf.labels[0] == (0, 1, 2, 3)
    assert sorted(nf.labels[i] for i in nf.of_dimension(2)) == [(0,), (1,), (2,), (3,)]


def test_completeness(sigma1_fan, sigma2_fan, sigma3_fan, hirzebruch2_fan):
    assert not sigma1_fan.is_complete()
    assert sigma2_fan.is_complete()
    assert sigma3_fan.is_complete()
    assert hirzebruch2_fan.is_complete()


def test_product_of_lines_is_the_quadrant_fan(sigma3_fan):
    line = p1_fan(EXACT)
    assert len(line) == 3
    assert line.is_complete()
    assert set(product_fan(line, line).cones) == set(sigma3_fan.cones)


def test_star_of_a_ray(sigma2_fan):
    ray = sigma2_fan.index_of(cone([1, 0]))
    s = star(sigma2_fan, ray)
    assert s.ambient_dim == 1
    assert len(s.quotient_basis) == 1
    assert len(s) == 3
    assert s.is_complete()


def test_star_extremes(sigma2_fan):
    assert len(star(sigma2_fan, 0)) == len(sigma2_fan)
    top = sigma2_fan.maximal()[0]
    s = star(sigma2_fan, top)
    assert s.ambient_dim == 0
    assert len(s) == 1
    with pytest.raises(PreconditionError):
        star(sigma2_fan, len(sigma2_fan))


def test_cone_of_point(sigma3_fan):
    quadrant = sigma3_fan.cone_of_point([1, 1])
    assert sigma3_fan[quadrant] == cone([1, 0], [0, 1])
    assert sigma3_fan[sigma3_fan.cone_of_point([0, 5])] == cone([0, 1])
    assert sigma3_fan.cone_of_point([0, 0]) == 0


def test_polar_and_face_fan():
    square = PointConfiguration.of([[-1, -1], [1, -1], [-1, 1], [1, 1]], EXACT)
    diamond = polar(square)
    assert [list(v.coords) for v in diamond] == [[-1, 0], [0, -1], [0, 1], [1, 0]]
    ff = face_fan(square)
    assert len(ff) == 9
    assert ff.is_complete()
    assert cone([1, -1], [1, 1]) in set(ff.cones)


def test_polar_needs_the_origin_inside(triangle):
    with pytest.raises(PreconditionError):
        polar(triangle)


def test_fan_maps(sigma2_fan, hirzebruch2_fan):
    line = p1_fan(EXACT)
    first = Matrix.of([[1, 0]], mode=EXACT)
    fm = validate_fan_map(first, hirzebruch2_fan, line)
    assert len(fm.assignment) == len(hirzebruch2_fan)
    assert fm.assignment[0] == 0
    with pytest.raises(FanMapError) as err:
        validate_fan_map(first, sigma2_fan, line)
    # cone{e1, -e1 - e2} maps onto the whole line
    assert sigma2_fan[err.value.source_cone] == cone([1, 0], [-1, -1])
