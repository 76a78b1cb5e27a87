import math

import pytest

from itoric.errors import DimensionMismatchError, InvalidPointError, PreconditionError
from itoric.gallery.fans import p1_fan
from itoric.geometry.cone import Cone
from itoric.geometry.config import PointConfiguration
from itoric.geometry.fan import validate_fan_map
from itoric.numeric.linalg import Matrix
from itoric.toric.points import (
    ZERO,
    Chart,
    ConeChart,
    ConfigurationChart,
    OrbitId,
    TorusElement,
    act,
    affine_point,
    change_chart,
    dense_point,
    distinguished_point,
    evaluate,
    face_point,
    map_point,
    membership_residual,
    monoid_product,
    orbit_closure_contains,
    orbit_of,
    same_point,
    toric_point,
)
from itoric.settings import ScalarMode

EXACT = ScalarMode.EXACT


@pytest.fixture
def quadric():
    """the homogenized segment {0, 1, 2}"""
    return PointConfiguration.of([[1, 0], [1, 1], [1, 2]], EXACT)


def index(f, *gens):
    return f.index_of(Cone(list(gens), mode=EXACT))


def test_affine_points_are_dense(quadric):
    x = affine_point(quadric, TorusElement.of([0, 1], EXACT))
    assert x.is_dense()
    assert x.values == pytest.approx((1.0, math.exp(-1), math.exp(-2)))
    assert orbit_of(x) == OrbitId(face=(0, 1, 2))


def test_face_points(quadric):
    x = face_point(quadric, (0,))
    assert x.support == (0,)
    assert str(orbit_of(x)) == "O{0}"
    with pytest.raises(InvalidPointError):
        face_point(quadric, (0, 1))


def test_toric_point_validation(quadric):
    chart = ConfigurationChart(quadric)
    x = toric_point(chart, [1, 2, 4])
    assert evaluate(x, [2, 2]) == pytest.approx(4.0)
    assert evaluate(x, [1, 1]) == pytest.approx(2.0)
    with pytest.raises(InvalidPointError):
        toric_point(chart, [1, 1, 2])
    with pytest.raises(InvalidPointError):
        toric_point(chart, [1, -1, 1])
    with pytest.raises(DimensionMismatchError):
        toric_point(chart, [1, 1])


def test_evaluation_on_a_boundary_orbit(quadric):
    x = face_point(quadric, (2,))
    assert evaluate(x, [1, 2]) == pytest.approx(1.0)
    assert evaluate(x, [1, 0]) == 0.0
    with pytest.raises(PreconditionError):
        evaluate(x, [0, 1])


def test_membership_of_the_cusp():
    cusp = PointConfiguration.of([[2], [3]], EXACT)
    assert membership_residual(cusp, [4, 8]).is_zero()
    assert membership_residual(cusp, [0, 0]).is_zero()
    assert membership_residual(cusp, [1, 2]).value == 3
    # (0, 1) has the right relation but a support that is not a face
    assert not membership_residual(cusp, [0, 1]).is_zero()
    with pytest.raises(InvalidPointError):
        membership_residual(cusp, [-1, 1])
    with pytest.raises(DimensionMismatchError):
        membership_residual(cusp, [1, 1, 1])


def test_distinguished_points_lie_in_their_orbits(sigma2_fan):
    for i in range(len(sigma2_fan)):
        assert orbit_of(distinguished_point(sigma2_fan, i)) == OrbitId(cone_index=i)
    assert orbit_of(dense_point(sigma2_fan)) == OrbitId(cone_index=0)


def test_orbit_closures(sigma2_fan):
    e1 = index(sigma2_fan, [1, 0])
    quadrant = index(sigma2_fan, [1, 0], [0, 1])
    far = index(sigma2_fan, [0, 1], [-1, -1])
    assert orbit_closure_contains(sigma2_fan, 0, quadrant)
    assert orbit_closure_contains(sigma2_fan, e1, quadrant)
    assert not orbit_closure_contains(sigma2_fan, e1, far)


def test_torus_action_moves_the_dense_point(sigma2_fan):
    moved = act(TorusElement.of([1, 0], EXACT), dense_point(sigma2_fan))
    assert same_point(moved, dense_point(sigma2_fan, [1, 0]))
    assert not same_point(moved, dense_point(sigma2_fan))
    assert act(TorusElement.of([1, 0], EXACT), ZERO) is ZERO


def test_change_chart(sigma2_fan):
    e1 = index(sigma2_fan, [1, 0])
    quadrant = index(sigma2_fan, [1, 0], [0, 1])
    x = distinguished_point(sigma2_fan, e1)
    y = change_chart(x, quadrant)
    assert y.chart.index == quadrant
    assert same_point(x, y)
    with pytest.raises(PreconditionError):
        change_chart(x, index(sigma2_fan, [0, 1], [-1, -1]))


def test_monoid_product(sigma2_fan, sigma3_fan):
    e1 = distinguished_point(sigma2_fan, index(sigma2_fan, [1, 0]))
    e2 = distinguished_point(sigma2_fan, index(sigma2_fan, [0, 1]))
    product = monoid_product(e1, e2)
    assert orbit_of(product) == OrbitId(cone_index=index(sigma2_fan, [1, 0], [0, 1]))
    right = distinguished_point(sigma3_fan, index(sigma3_fan, [1, 0]))
    left = distinguished_point(sigma3_fan, index(sigma3_fan, [-1, 0]))
    assert monoid_product(right, left) is ZERO
    assert monoid_product(ZERO, right) is ZERO


def test_map_point_follows_the_projection(hirzebruch2_fan):
    line = p1_fan(EXACT)
    fm = validate_fan_map(Matrix.of([[1, 0]], mode=EXACT), hirzebruch2_fan, line)
    x = distinguished_point(hirzebruch2_fan, index(hirzebruch2_fan, [1, 0]))
    assert orbit_of(map_point(fm, x)) == OrbitId(cone_index=index(line, [1]))
    y = distinguished_point(hirzebruch2_fan, index(hirzebruch2_fan, [0, 1]))
    assert orbit_of(map_point(fm, y)) == OrbitId(cone_index=0)


def test_charts_compare_by_what_they_chart(triangle, sigma2_fan):
    with pytest.raises(TypeError):
        Chart()
    a = ConfigurationChart(triangle)
    assert a.same_as(ConfigurationChart(PointConfiguration.of([[0, 0], [1, 0], [0, 1]], EXACT)))
    assert not a.same_as(ConeChart(sigma2_fan, 0))
    assert ConeChart(sigma2_fan, 1).same_as(ConeChart(sigma2_fan, 1))
    assert not ConeChart(sigma2_fan, 1).same_as(ConeChart(sigma2_fan, 2))
