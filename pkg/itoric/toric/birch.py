"""
the inverse of the algebraic moment map X_A -> cone(A)

for b in cone(A) the preimage is the maximizer of the entropy
H(p) = -sum p_a (log p_a - 1) over {p >= 0 : sum p_a a = b}. Its log
coordinates are linear in a, so we solve the dual problem: minimize
f(mu) = sum exp(<a, mu>) - <b, mu> over the points of the face holding b.
"""
import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy import linalg

from itoric.errors import DimensionMismatchError, NotInConeError, SolverError
from itoric.geometry.config import PointConfiguration
from itoric.numeric.lp import LpConstraint, LpProblem, Relation, lp_feasible
from itoric.numeric.scalar import Vector, as_vector
from itoric.settings import BirchSettings
from itoric.toric.points import ConfigurationChart, ToricPoint

logger = logging.getLogger(name=__name__)


@dataclass(frozen=True)
class _Reduced:
    """face points and target in coordinates of the span of the face"""
    indices: Tuple[int, ...]
    points: np.ndarray
    target: np.ndarray
    basis: np.ndarray
    log_weights: np.ndarray


def in_cone(p: PointConfiguration, b: Vector) -> bool:
    """b = sum lambda_a a with lambda >= 0"""
    rows = tuple(
        LpConstraint(Vector(tuple(a[k] for a in p.points)), Relation.EQ, b[k])
        for k in range(p.dim))
    return lp_feasible(LpProblem(len(p), rows, nonnegative=True)).feasible


def locate_face(p: PointConfiguration, b: Vector) -> Tuple[int, ...]:
    """indices of the points spanning the face of cone(A) whose relative interior holds b"""
    cone = p.cone()
    faces = sorted(cone.faces(), key=lambda f: -f.dim)
    for face in faces:
        if face.cone.relint_contains(b):
            return tuple(i for i, a in enumerate(p.points) if face.cone.contains(a))
    raise NotInConeError(f'{b} lies in no face of cone(A)')


def _reduce(indices: Tuple[int, ...], pts: np.ndarray, b: np.ndarray, log_weights: np.ndarray) -> _Reduced:
    u, s, _ = linalg.svd(pts.T, full_matrices=False)
    r = int((s > 1e-12 * max(1.0, s.max(initial=0.0))).sum())
    basis = u[:, :r]
    return _Reduced(indices, pts @ basis, basis.T @ b, basis, log_weights)


def _fgh(red: _Reduced) -> Callable:
    def fgh(mu: np.ndarray, only_f: bool = False):
        logs = red.points @ mu + red.log_weights
        weights = np.exp(np.minimum(logs, 700.0))
        f = float(weights.sum() - red.target @ mu)
        if only_f:
            return f
        g = red.points.T @ weights - red.target
        h = (red.points * weights[:, None]).T @ red.points
        return f, g, h
    return fgh


def backtracking_line_search(
        fgh: Callable,
        x: np.ndarray,
        d: np.ndarray,
        slope: float,
        settings: BirchSettings) -> Optional[float]:
    """armijo backtracking; None when no step decreases the objective"""
    t = 1.0
    f0 = fgh(x, only_f=True)
    while t > 1e-12:
        if fgh(x + t * d, only_f=True) <= f0 + settings.armijo * t * slope:
            return t
        t *= settings.backtrack
    return None


def _minimize(red: _Reduced, settings: BirchSettings) -> Tuple[np.ndarray, float]:
    fgh = _fgh(red)
    mu = np.zeros(red.points.shape[1])
    scale = max(1.0, float(np.abs(red.target).max(initial=0.0)))
    residual = float('inf')
    newton = True
    for it in range(settings.max_iterations):
        _, g, h = fgh(mu)
        residual = float(np.abs(g).max(initial=0.0))
        logger.debug(f'birch iteration {it}: residual {residual:.3e} ({"newton" if newton else "gradient"})')
        if residual <= settings.residual_tolerance * scale:
            return mu, residual
        if newton:
            try:
                d = linalg.solve(h, -g, assume_a='pos')
            except (linalg.LinAlgError, ValueError):
                d = None
            if d is not None and float(g @ d) < 0:
                t = backtracking_line_search(fgh, mu, d, float(g @ d), settings)
                if t is None and residual < 1e-6 * scale:
                    # near the optimum f stops resolving decreases; take the full step
                    t = 1.0
                if t is not None:
                    mu = mu + t * d
                    continue
            logger.debug('newton step stalled, falling back to gradient steps')
            newton = False
        d = -g
        t = backtracking_line_search(fgh, mu, d, float(g @ d), settings)
        if t is None:
            break
        mu = mu + t * d
        newton = True
    _, g, _ = fgh(mu)
    residual = float(np.abs(g).max(initial=0.0))
    if residual <= settings.residual_tolerance * scale:
        return mu, residual
    raise SolverError(f'moment map inversion did not converge (residual {residual:.3e})', residual=residual)


def solve_fiber(
        points: np.ndarray,
        target: np.ndarray,
        log_weights: Optional[np.ndarray] = None,
        settings: Optional[BirchSettings] = None) -> np.ndarray:
    """
    log z with z_a = w_a exp(<a, mu>) and sum_a z_a a = target, for a
    target in the relative interior of cone(points)
    """
    settings = settings or BirchSettings()
    log_weights = np.zeros(len(points)) if log_weights is None else np.asarray(log_weights, dtype=float)
    red = _reduce(tuple(range(len(points))), points, target, log_weights)
    mu, _ = _minimize(red, settings)
    return red.points @ mu + log_weights


def birch_solve(p: PointConfiguration, b, settings: Optional[BirchSettings] = None) -> ToricPoint:
    """the unique point of X_A whose moment sum_a z_a a equals b"""
    settings = settings or BirchSettings()
    b = as_vector(b, p.mode)
    if b.dim != p.dim:
        raise DimensionMismatchError(f'target of dimension {b.dim} for points in dimension {p.dim}')
    if not in_cone(p, b):
        raise NotInConeError(f'{b} is not in cone(A)')
    indices = locate_face(p, b)
    logger.debug(f'{b} lies in the relative interior of the face spanned by points {indices}')
    logs: List[Optional[float]] = [None] * len(p)
    if indices:
        pts = np.array([p[i].to_numpy() for i in indices]).reshape(len(indices), p.dim)
        red = _reduce(indices, pts, b.to_numpy(), np.zeros(len(indices)))
        mu, residual = _minimize(red, settings)
        for i, lv in zip(indices, red.points @ mu):
            logs[i] = float(lv)
        logger.info(f'moment map inverted with residual {residual:.3e}')
    return ToricPoint(ConfigurationChart(p), tuple(logs))


def moment(x: ToricPoint) -> np.ndarray:
    """sum_a z_a a"""
    pts = x.chart.generator_matrix()
    return pts.T @ np.array(x.values)
