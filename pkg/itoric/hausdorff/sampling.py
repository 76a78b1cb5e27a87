"""
deterministic point clouds on translates omega . Z_A of projective toric
varieties in the simplex on A, and the sampled hausdorff distance

a cloud is drawn face by face of conv(A), so the boundary orbits are sampled
along with the dense one: by default low discrepancy targets are pulled back
through the moment map, optionally a torus grid is pushed forward.
"""
import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.spatial import ConvexHull, cKDTree
from scipy.stats import qmc

from itoric.errors import DimensionMismatchError, PreconditionError, SolverError
from itoric.geometry.config import PointConfiguration
from itoric.numeric.scalar import Scalar
from itoric.settings import BirchSettings, HausdorffSettings, Sampler, ScalarMode
from itoric.toric.birch import solve_fiber
from itoric.toric.points import TorusElement, affine_point, toric_relations

logger = logging.getLogger(name=__name__)

# one row per sampled point, one column per point of A
Cloud = np.ndarray


def log_translation(p: PointConfiguration, log_omega: Optional[Sequence] = None) -> np.ndarray:
    if log_omega is None:
        return np.zeros(len(p))
    out = np.array([float(c) for c in log_omega])
    if out.shape != (len(p),):
        raise DimensionMismatchError(f'{out.size} translation coordinates for {len(p)} points')
    if not np.isfinite(out).all():
        raise PreconditionError('translations must be positive')
    return out


def _lifted(p: PointConfiguration) -> np.ndarray:
    # rows (1, a)
    return np.array([a.to_numpy() for a in p.homogenize().points], dtype=float)


def log_spread(p: PointConfiguration, log_omega: np.ndarray) -> float:
    """max - min of log omega after removing its best affine fit c + <m, a>, which the torus absorbs"""
    lifted = _lifted(p)
    log_omega = np.asarray(log_omega, dtype=float)
    coef, *_ = np.linalg.lstsq(lifted, log_omega, rcond=None)
    rest = log_omega - lifted @ coef
    return float(rest.max() - rest.min())


def _frame(points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    origin = points.mean(axis=0)
    u, s, _ = np.linalg.svd((points - origin).T, full_matrices=False)
    r = int((s > 1e-10 * max(1.0, s.max(initial=0.0))).sum())
    return origin, u[:, :r]


def interior_targets(points: np.ndarray, count: int) -> np.ndarray:
    """``count`` halton points of the relative interior of conv(points)"""
    origin, basis = _frame(points)
    d = basis.shape[1]
    if d == 0:
        return origin[None, :]
    coords = (points - origin) @ basis
    lo, hi = coords.min(axis=0), coords.max(axis=0)
    eps = 1e-9 * max(1.0, float(np.abs(coords).max()))
    if d == 1:
        def inside(y):
            return (y[:, 0] > lo[0] + eps) & (y[:, 0] < hi[0] - eps)
    else:
        eqs = ConvexHull(coords).equations

        def inside(y):
            return (y @ eqs[:, :-1].T + eqs[:, -1] < -eps).all(axis=1)
    sampler = qmc.Halton(d=d, scramble=False)
    # the first halton point is a corner of the box
    sampler.fast_forward(1)
    accepted: List[np.ndarray] = []
    total = 0
    for _ in range(64):
        batch = qmc.scale(sampler.random(max(count, 64)), lo, hi)
        keep = batch[inside(batch)]
        accepted.append(keep)
        total += len(keep)
        if total >= count:
            break
    y = np.concatenate(accepted)[:count]
    return origin + y @ basis.T


def _faces(p: PointConfiguration) -> List[Tuple[int, ...]]:
    """point sets of the nonempty faces of conv(A), A itself included"""
    lifted = p.homogenize()
    out = []
    for face in lifted.cone().faces():
        members = tuple(i for i, a in enumerate(lifted.points) if face.cone.contains(a))
        if members:
            out.append(members)
    return sorted(set(out), key=lambda f: (-len(f), f))


def _face_count(density: int, face_dim: int, dim: int) -> int:
    if dim == 0 or face_dim == 0:
        return 1
    return max(1, math.ceil(density ** (face_dim / dim)))


def _sample_face(
        lifted: np.ndarray,
        members: Tuple[int, ...],
        log_omega: np.ndarray,
        count: int,
        settings: BirchSettings) -> Cloud:
    pts = lifted[list(members)]
    rows = []
    skipped = 0
    for target in interior_targets(pts, count):
        try:
            logs = solve_fiber(pts, target, log_omega[list(members)], settings)
        except SolverError:
            skipped += 1
            continue
        z = np.zeros(len(lifted))
        z[list(members)] = np.exp(logs)
        rows.append(z / z.sum())
    if skipped:
        logger.warning(f'{skipped} of {count} samples on face {members} did not converge and were dropped')
    return np.array(rows).reshape(len(rows), len(lifted))


def _push_face(
        lifted: PointConfiguration,
        members: Tuple[int, ...],
        log_omega: np.ndarray,
        count: int,
        radius: float) -> Cloud:
    # halton grid of torus elements in [-radius, radius]^n, first coordinate
    # fixed at 0 since it only rescales
    face = lifted.sub(members)
    n = lifted.dim - 1
    grid = qmc.Halton(d=n, scramble=False).random(count + 1)[1:]
    grid = qmc.scale(grid, [-radius] * n, [radius] * n)
    rows = []
    for s in grid:
        x = affine_point(face, TorusElement.of([0.0] + s.tolist(), ScalarMode.FLOAT))
        logs = np.array(x.log_values) + log_omega[list(members)]
        z = np.zeros(len(lifted))
        z[list(members)] = np.exp(logs - logs.max())
        rows.append(z / z.sum())
    return np.array(rows).reshape(len(rows), len(lifted))


def sample_translate(
        p: PointConfiguration,
        log_omega: Optional[Sequence] = None,
        density: Optional[int] = None,
        settings: Optional[HausdorffSettings] = None,
        birch: Optional[BirchSettings] = None) -> Cloud:
    """
    a deterministic sample of omega . Z_A, with omega = exp(log_omega):
    ``density`` points on the dense orbit and proportionally fewer on each
    proper face of conv(A)

    the default ``Sampler.MOMENT`` pulls halton targets in each face of
    conv(A) back through the moment map, which spreads the cloud evenly over
    the image. ``Sampler.TORUS`` pushes a halton grid of torus elements forward
    through ``affine_point`` instead; its points crowd towards the vertices.
    """
    settings = settings or HausdorffSettings()
    density = density or settings.density
    birch = birch or BirchSettings()
    log_omega = log_translation(p, log_omega)
    spread = log_spread(p, log_omega)
    if spread > settings.max_log_ratio:
        raise PreconditionError(
            f'log omega spreads {spread:.3g} beyond max_log_ratio {settings.max_log_ratio:g} '
            'modulo affine functions; the samples would underflow')
    homogenized = p.homogenize()
    lifted = _lifted(p)
    dim = p.affine_rank()
    clouds = []
    for members in _faces(p):
        face_dim = p.sub(members).affine_rank() if len(members) > 1 else 0
        count = _face_count(density, face_dim, dim)
        if settings.sampler == Sampler.TORUS:
            clouds.append(_push_face(homogenized, members, log_omega, count, settings.torus_radius))
        else:
            clouds.append(_sample_face(lifted, members, log_omega, count, birch))
    cloud = np.concatenate(clouds)
    logger.debug(f'sampled {len(cloud)} points of a translate of Z_A on {len(clouds)} faces ({settings.sampler.value})')
    return cloud


def translate_residual(p: PointConfiguration, log_omega: Optional[Sequence], z) -> float:
    """largest gap |z^u omega^v - z^v omega^u| over the relations of the lifted points"""
    log_omega = log_translation(p, log_omega)
    z = np.asarray(z, dtype=float)
    if z.shape != (len(p),):
        raise DimensionMismatchError(f'{z.size} coordinates for {len(p)} points')
    omega = np.exp(log_omega)
    worst = 0.0
    for u, v in toric_relations(p.homogenize()):
        lhs = np.prod(z ** u) * np.prod(omega ** v)
        rhs = np.prod(z ** v) * np.prod(omega ** u)
        worst = max(worst, abs(float(lhs - rhs)))
    return worst


def _check_cloud(cloud: Cloud, name: str) -> np.ndarray:
    cloud = np.asarray(cloud, dtype=float)
    if cloud.ndim != 2 or len(cloud) == 0:
        raise PreconditionError(f'{name} is an empty point cloud')
    return cloud


def hausdorff_distance(x: Cloud, y: Cloud) -> Scalar:
    """max of the two directed sup-inf euclidean distances"""
    x, y = _check_cloud(x, 'first cloud'), _check_cloud(y, 'second cloud')
    if x.shape[1] != y.shape[1]:
        raise DimensionMismatchError(f'clouds in dimensions {x.shape[1]} and {y.shape[1]}')
    x_to_y = float(cKDTree(y).query(x)[0].max())
    y_to_x = float(cKDTree(x).query(y)[0].max())
    return Scalar(max(x_to_y, y_to_x))


def sampling_resolution(cloud: Cloud) -> float:
    """largest nearest neighbour gap inside a cloud"""
    cloud = _check_cloud(cloud, 'cloud')
    if len(cloud) < 2:
        return 0.0
    distances, _ = cKDTree(cloud).query(cloud, k=2)
    return float(distances[:, 1].max())
