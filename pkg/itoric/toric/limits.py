"""
one-parameter limits lim_{s -> oo} gamma_{sv} . x and recovery of a fan from
the orbits those limits land in
"""
import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import norm, qmc

from itoric.errors import NoLimitError
from itoric.geometry.cone import Cone
from itoric.geometry.config import PointConfiguration
from itoric.geometry.fan import Fan, validate_fan
from itoric.numeric.scalar import Vector, as_vector, sign
from itoric.settings import RecoverySettings, ScalarMode
from itoric.toric.points import (
    ConfigurationChart,
    ToricPoint,
    change_chart,
    dense_point,
    orbit_closure_contains,
    orbit_cone_and_parameter,
    orbit_of,
)

logger = logging.getLogger(name=__name__)


def limit_one_parameter(f: Fan, v, base: Optional[ToricPoint] = None) -> ToricPoint:
    """
    lim_{s -> oo} gamma_{sv} . base, read off in the chart of a maximal cone
    holding the orbit of ``base``: a chart generator u with a nonzero value
    keeps it when <u, v> = 0, goes to 0 when <u, v> > 0 and diverges when
    <u, v> < 0. The limit exists in a chart iff no generator diverges there.
    """
    v = as_vector(v, f.mode)
    if base is None:
        base = dense_point(f)
    tau, _ = orbit_cone_and_parameter(base)
    for index in f.maximal():
        if not f.is_face_of(tau, index):
            continue
        moved = change_chart(base, index)
        logs = []
        for u, lv in zip(moved.chart.generators, moved.log_values):
            s = sign(u.dot(v))
            if s < 0 and lv is not None:
                break
            logs.append(lv if s == 0 else None)
        else:
            return ToricPoint(moved.chart, tuple(logs))
    raise NoLimitError(f'gamma_(s{v}) diverges in every chart of the fan')


def limit_values(p: PointConfiguration, v, base: Optional[ToricPoint] = None) -> ToricPoint:
    """coordinatewise: 0 where <a, v> > 0, base where = 0, no limit where < 0"""
    v = as_vector(v, p.mode)
    chart = ConfigurationChart(p)
    if base is None:
        base = ToricPoint(chart, tuple(0.0 for _ in p.points))
    logs = []
    for a, lv in zip(p.points, base.log_values):
        s = sign(a.dot(v))
        if lv is None or s > 0:
            logs.append(None)
        elif s == 0:
            logs.append(lv)
        else:
            raise NoLimitError(f'the coordinate of {a} diverges along {v}')
    return ToricPoint(chart, tuple(logs))


def projective_limit(p: PointConfiguration, v, base: Optional[Sequence[float]] = None) -> Tuple[float, ...]:
    """limit in projective space: base values on the minimizers of <a, v>, scaled to max 1"""
    v = as_vector(v, p.mode)
    base = [1.0] * len(p) if base is None else [float(b) for b in base]
    keep = set(p.minimizers(v))
    values = [b if i in keep else 0.0 for i, b in enumerate(base)]
    top = max(values)
    if top <= 0:
        raise NoLimitError('the limit is the zero vector')
    return tuple(x / top for x in values)


def _sphere_directions(n: int, count: int) -> np.ndarray:
    """deterministic, roughly uniform unit vectors"""
    if n == 1:
        return np.array([[1.0], [-1.0]])
    if n == 2:
        angles = 2 * math.pi * (np.arange(count) + 0.5) / count
        return np.stack([np.cos(angles), np.sin(angles)], axis=1)
    if n == 3:
        # spherical fibonacci lattice
        k = np.arange(count) + 0.5
        z = 1 - 2 * k / count
        r = np.sqrt(1 - z * z)
        phi = math.pi * (3 - math.sqrt(5)) * k
        return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)
    halton = qmc.Halton(d=n, scramble=False).random(count + 1)[1:]
    gauss = norm.ppf(np.clip(halton, 1e-12, 1 - 1e-12))
    return gauss / np.linalg.norm(gauss, axis=1, keepdims=True)


def _to_mode(v: np.ndarray, mode: ScalarMode) -> Vector:
    if mode == ScalarMode.EXACT:
        return Vector(tuple(Fraction(float(x)).limit_denominator(1000) for x in v))
    return Vector(tuple(float(x) for x in v))


def sample_directions(f: Fan, count: int) -> List[Vector]:
    """low-discrepancy directions plus generators, midpoints and relative interior points of every cone"""
    out = [_to_mode(v, f.mode) for v in _sphere_directions(f.ambient_dim, count)]
    for c in f.cones:
        gens = list(c.generators)
        out.extend(gens)
        out.extend(a + b for a, b in combinations(gens, 2))
        out.append(c.relint_point())
    out.append(Vector.zero(f.ambient_dim, f.mode))
    unique = {v.sort_key(): v for v in out}
    return list(unique.values())


@dataclass(frozen=True)
class RecoveredFan:
    fan: Fan
    matches: Tuple[bool, ...]
    class_sizes: Dict[int, int]

    @property
    def is_valid(self) -> bool:
        return all(self.matches) and len(self.fan) == len(self.matches)


def recover_fan(f: Fan, samples: Optional[int] = None) -> RecoveredFan:
    """
    group sampled directions by the support of their limit point, which names
    the orbit it lies in; each orbit class closes up to a cone, the hull of
    the classes in its closure
    """
    samples = samples or RecoverySettings().samples
    if f.ambient_dim == 0:
        return RecoveredFan(f, (True,), {0: 1})
    classes: Dict[int, List[Vector]] = defaultdict(list)
    missed = 0
    base = dense_point(f)
    for v in sample_directions(f, samples):
        try:
            x = limit_one_parameter(f, v, base)
        except NoLimitError:
            missed += 1
            continue
        classes[orbit_of(x).cone_index].append(v)
    logger.info(f'{sum(len(c) for c in classes.values())} directions in {len(classes)} orbit classes, {missed} without a limit')

    recovered: List[Cone] = []
    matches = []
    for sigma in sorted(classes):
        directions = [v for rho in classes if orbit_closure_contains(f, rho, sigma) for v in classes[rho]]
        cone = Cone(directions, f.ambient_dim, f.mode)
        recovered.append(cone)
        matches.append(cone == f.cones[sigma])
        if not matches[-1]:
            logger.warning(f'class of cone {sigma} closes up to {cone!r}')
    fan = validate_fan(recovered, f.ambient_dim, f.mode)
    matches.extend(False for _ in range(len(f) - len(matches)))
    return RecoveredFan(fan, tuple(matches), {k: len(v) for k, v in classes.items()})


def is_compact(f: Fan) -> bool:
    """X_Sigma is compact exactly when the fan is complete"""
    return f.is_complete()
