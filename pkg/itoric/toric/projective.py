"""the projective toric variety of a configuration inside the simplex on A"""
import logging
from typing import Tuple

import numpy as np

from itoric.errors import PreconditionError
from itoric.geometry.config import PointConfiguration
from itoric.geometry.fan import Fan
from itoric.numeric.scalar import Vector, as_vector
from itoric.toric.points import ConeChart, ToricPoint, evaluate

logger = logging.getLogger(name=__name__)

SimplexPoint = Tuple[float, ...]


def _check_affine(p: PointConfiguration):
    if not p.is_affine:
        raise PreconditionError('the configuration does not lie on an affine hyperplane off the origin; homogenize it first')


def _normalized(values: np.ndarray) -> np.ndarray:
    total = values.sum()
    if total <= 0:
        raise PreconditionError('the point maps to the zero vector')
    return values / total


def projective_embed(p: PointConfiguration, f: Fan, x: ToricPoint, check_tolerance: float = 1e-10) -> SimplexPoint:
    """
    (phi(a - f) : a in A) scaled to coordinate sum 1, for f in the face of
    conv(A) labelling the chart of x; the result does not depend on f
    """
    _check_affine(p)
    if not isinstance(x.chart, ConeChart) or x.chart.fan is not f:
        raise PreconditionError('the point is not on the given fan')
    if f.labels is None:
        raise PreconditionError('the fan carries no face labels; build it with normal_fan')
    face = f.labels[x.chart.index]
    if not face:
        raise PreconditionError(f'chart {x.chart.index} has an empty face label')
    images = []
    for j in face:
        values = np.array([evaluate(x, a - p[j]) for a in p.points])
        images.append(_normalized(values))
    for other in images[1:]:
        if not np.allclose(other, images[0], rtol=0.0, atol=check_tolerance):
            raise PreconditionError('the embedding depends on the choice of face point; chart and face disagree')
    logger.debug(f'embedded a point of chart {x.chart.index} through face {face}')
    return tuple(float(v) for v in images[0])


def moment_map(p: PointConfiguration, z) -> Vector:
    """sum_a z_a a for z in the simplex on A"""
    _check_affine(p)
    z = np.array([float(c) for c in as_vector(z).coords]) if not isinstance(z, np.ndarray) else z
    if len(z) != len(p):
        raise PreconditionError(f'{len(z)} coordinates for {len(p)} points')
    if (z < -1e-12).any() or abs(z.sum() - 1.0) > 1e-9:
        raise PreconditionError('the point is not in the simplex')
    pts = np.array([a.to_numpy() for a in p.points]).reshape(len(p), p.dim)
    return Vector(tuple(float(c) for c in pts.T @ z))
