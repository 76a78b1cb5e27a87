import math
from fractions import Fraction

import numpy as np
import pytest

from itoric.errors import DimensionMismatchError, NotInConeError, SolverError
from itoric.geometry.config import PointConfiguration
from itoric.numeric.scalar import Vector
from itoric.settings import BirchSettings, ScalarMode
from itoric.toric.birch import birch_solve, in_cone, locate_face, moment, solve_fiber
from itoric.toric.points import TorusElement, affine_point, membership_residual

EXACT = ScalarMode.EXACT


@pytest.fixture
def quadric(segment3):
    return segment3.homogenize()


def test_uniform_point_over_the_segment(quadric):
    x = birch_solve(quadric, [1, 1])
    assert x.values == pytest.approx((1 / 3, 1 / 3, 1 / 3), rel=1e-8)
    assert np.abs(moment(x) - np.array([1.0, 1.0])).max() <= 1e-8


def test_the_solution_lies_on_the_variety(quadric):
    x = birch_solve(quadric, [2, Fraction(7, 3)])
    assert np.abs(moment(x) - np.array([2.0, 7 / 3])).max() <= 1e-8
    z0, z1, z2 = x.values
    assert z0 * z2 == pytest.approx(z1 ** 2, rel=1e-8)


def test_independent_points_have_a_unique_preimage():
    simplex = PointConfiguration.of([[1, 0, 0], [1, 1, 0], [1, 0, 1]], EXACT)
    x = birch_solve(simplex, [1, Fraction(1, 5), Fraction(1, 2)])
    assert x.values == pytest.approx((0.3, 0.2, 0.5), rel=1e-8)


def test_targets_on_the_boundary(quadric):
    x = birch_solve(quadric, [3, 0])
    assert x.support == (0,)
    assert x.values[0] == pytest.approx(3.0)
    origin = birch_solve(quadric, [0, 0])
    assert origin.support == ()
    assert locate_face(quadric, Vector.of([1, 2], EXACT)) == (2,)
    assert locate_face(quadric, Vector.of([1, 1], EXACT)) == (0, 1, 2)


def test_targets_outside_the_cone(quadric):
    assert not in_cone(quadric, Vector.of([-1, 0], EXACT))
    with pytest.raises(NotInConeError):
        birch_solve(quadric, [-1, 0])
    with pytest.raises(NotInConeError):
        birch_solve(quadric, [1, 3])
    with pytest.raises(DimensionMismatchError):
        birch_solve(quadric, [1, 1, 1])


def test_iteration_budget(quadric):
    with pytest.raises(SolverError) as err:
        birch_solve(quadric, [1, Fraction(19, 10)], BirchSettings(max_iterations=1))
    assert err.value.residual > 0
    assert err.value.exit_code == 3


def test_weighted_fibers():
    points = np.array([[1.0, 0.0], [1.0, 1.0], [1.0, 2.0]])
    logs = solve_fiber(points, np.array([1.0, 1.0]))
    assert np.exp(logs) == pytest.approx([1 / 3] * 3, rel=1e-8)
    weighted = solve_fiber(points, np.array([1.0, 1.0]), np.log([1.0, 4.0, 1.0]))
    z = np.exp(weighted)
    assert points.T @ z == pytest.approx([1.0, 1.0], rel=1e-8)
    assert z[1] > z[0]


def test_solution_passes_the_membership_test(quadric):
    x = birch_solve(quadric, [1, 1])
    z = [Fraction(1, 3)] * 3
    assert membership_residual(quadric, z).is_zero()
    assert x.is_dense()


@pytest.mark.parametrize(
    "points, mode",
    [
        ([[1, 0], [1, 1], [1, 2]], ScalarMode.EXACT),
        ([[1, 0, 0], [1, 1, 0], [1, 0, 1], [1, 1, 1]], ScalarMode.EXACT),
        ([[1.0, 0.0], [1.0, math.sqrt(2)], [1.0, math.pi]], ScalarMode.FLOAT),
    ],
    ids=["segment", "square", "irrational"],
)
def test_moment_map_inverts_torus_points(points, mode):
    p = PointConfiguration.of(points, mode)
    rng = np.random.default_rng(2024)
    for _ in range(8):
        t = TorusElement.of(rng.uniform(-1.0, 1.0, size=p.dim).tolist(), mode)
        x = affine_point(p, t)
        y = birch_solve(p, moment(x).tolist())
        assert y.values == pytest.approx(x.values, rel=1e-8)
        assert y.support == x.support
