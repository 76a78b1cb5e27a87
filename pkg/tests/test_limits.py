import numpy as np
import pytest

from itoric.errors import NoLimitError, PreconditionError
from itoric.geometry.cone import Cone
from itoric.geometry.fan import normal_fan
from itoric.settings import ScalarMode
from itoric.toric.limits import (
    is_compact,
    limit_one_parameter,
    limit_values,
    projective_limit,
    recover_fan,
    sample_directions,
)
from itoric.toric.points import (
    OrbitId,
    TorusElement,
    act,
    dense_point,
    distinguished_point,
    orbit_of,
    same_point,
)
from itoric.toric.projective import moment_map, projective_embed

EXACT = ScalarMode.EXACT


def index(f, *gens):
    return f.index_of(Cone(list(gens), mode=EXACT))


@pytest.mark.parametrize(
    "v, gens",
    [
        ([0, 0], []),
        ([3, 0], [[1, 0]]),
        ([1, 1], [[1, 0], [0, 1]]),
        ([-1, 1], [[0, 1], [-1, -1]]),
        ([1, -2], [[1, 0], [-1, -1]]),
    ],
)
def test_limits_land_in_the_orbit_of_the_cone_holding_v(sigma2_fan, v, gens):
    x = limit_one_parameter(sigma2_fan, v)
    expected = index(sigma2_fan, *gens) if gens else 0
    assert orbit_of(x) == OrbitId(cone_index=expected)


def test_limit_keeps_the_torus_parameter(sigma2_fan):
    base = dense_point(sigma2_fan, [1, 2])
    x = limit_one_parameter(sigma2_fan, [1, 0], base)
    assert x.values == pytest.approx(
        limit_one_parameter(sigma2_fan, [1, 0], dense_point(sigma2_fan, [0, 2])).values)


def test_no_limit_outside_the_support(sigma1_fan):
    assert orbit_of(limit_one_parameter(sigma1_fan, [2, -1])).cone_index == index(sigma1_fan, [2, -1])
    with pytest.raises(NoLimitError):
        limit_one_parameter(sigma1_fan, [-1, 0])


def test_limit_is_read_off_the_chart_values(sigma2_fan):
    base = dense_point(sigma2_fan, [0, 1])
    x = limit_one_parameter(sigma2_fan, [1, 0], base)
    assert x.chart.index in sigma2_fan.maximal()
    assert len(x.support) < len(x.chart.generators)
    expected = act(TorusElement.of([0, 1], EXACT), distinguished_point(sigma2_fan, index(sigma2_fan, [1, 0])))
    assert same_point(x, expected)


def test_limits_from_a_boundary_orbit(sigma1_fan, sigma2_fan):
    ray = index(sigma2_fan, [1, 0])
    x_ray = distinguished_point(sigma2_fan, ray)
    # v along the ray acts trivially on its orbit
    assert orbit_of(limit_one_parameter(sigma2_fan, [-1, 0], x_ray)).cone_index == ray
    corner = limit_one_parameter(sigma2_fan, [0, 1], x_ray)
    assert orbit_of(corner).cone_index == index(sigma2_fan, [1, 0], [0, 1])
    with pytest.raises(NoLimitError):
        limit_one_parameter(sigma1_fan, [-1, 0], distinguished_point(sigma1_fan, index(sigma1_fan, [0, 1])))


def test_coordinate_limits(segment3):
    quadric = segment3.homogenize()
    x = limit_values(quadric, [0, 1])
    assert x.support == (0,)
    assert limit_values(quadric, [0, 0]).is_dense()
    with pytest.raises(NoLimitError):
        limit_values(quadric, [0, -1])


@pytest.mark.parametrize(
    "v, expected",
    [
        ([0, 0], (1.0, 1.0, 1.0)),
        ([1, 0], (1.0, 0.0, 1.0)),
        ([1, 1], (1.0, 0.0, 0.0)),
        ([-1, 1], (0.0, 1.0, 0.0)),
        ([1, -1], (0.0, 0.0, 1.0)),
    ],
)
def test_projective_limits(triangle, v, expected):
    assert projective_limit(triangle, v) == expected


def test_projective_limit_of_a_vanishing_base(triangle):
    with pytest.raises(NoLimitError):
        projective_limit(triangle, [1, 1], base=[0.0, 1.0, 1.0])


@pytest.mark.parametrize("name, count", [("sigma2_fan", 7), ("sigma3_fan", 9), ("hirzebruch2_fan", 9)])
def test_recovering_fans_from_limits(request, name, count):
    f = request.getfixturevalue(name)
    recovered = recover_fan(f, samples=64)
    assert recovered.is_valid
    assert len(recovered.fan) == count
    assert set(recovered.fan.cones) == set(f.cones)


def test_recovering_an_incomplete_fan(sigma1_fan):
    recovered = recover_fan(sigma1_fan, samples=64)
    assert recovered.is_valid
    assert not is_compact(recovered.fan)


def test_direction_samples_cover_every_cone(sigma3_fan):
    directions = sample_directions(sigma3_fan, 16)
    hit = {sigma3_fan.cone_of_point(v) for v in directions}
    assert hit == set(range(len(sigma3_fan)))


def test_projective_embedding_of_distinguished_points(triangle):
    lifted = triangle.homogenize()
    f = normal_fan(lifted)
    dense = projective_embed(lifted, f, dense_point(f))
    assert dense == pytest.approx((1 / 3, 1 / 3, 1 / 3))
    for i in f.maximal():
        (vertex,) = f.labels[i]
        image = projective_embed(lifted, f, distinguished_point(f, i))
        assert image == pytest.approx(tuple(1.0 if j == vertex else 0.0 for j in range(3)))


def test_projective_embedding_needs_labels(triangle, sigma2_fan):
    with pytest.raises(PreconditionError):
        projective_embed(triangle.homogenize(), sigma2_fan, dense_point(sigma2_fan))


def test_projective_maps_need_an_affine_configuration(triangle):
    assert not triangle.is_affine
    assert triangle.homogenize().is_affine
    f = normal_fan(triangle)
    with pytest.raises(PreconditionError):
        projective_embed(triangle, f, dense_point(f))
    with pytest.raises(PreconditionError):
        moment_map(triangle, np.array([1 / 3, 1 / 3, 1 / 3]))


def test_moment_map(triangle):
    lifted = triangle.homogenize()
    m = moment_map(lifted, np.array([1 / 3, 1 / 3, 1 / 3]))
    assert m.to_numpy() == pytest.approx([1.0, 1 / 3, 1 / 3])
    with pytest.raises(PreconditionError):
        moment_map(lifted, np.array([0.5, 0.5, 0.5]))
