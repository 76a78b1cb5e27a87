"""csv point clouds and svg pictures of small point sets"""
import csv
import logging
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from scipy.spatial import ConvexHull, QhullError  # noqa: E402

from itoric.errors import PreconditionError  # noqa: E402

logger = logging.getLogger(name=__name__)

PathLike = Union[str, Path]


def write_csv(path: PathLike, header: Sequence[str], rows: Sequence[Sequence]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open('w', newline='', encoding='utf-8') as f:
        w = csv.writer(f)
        w.writerow(list(header))
        for row in rows:
            w.writerow([repr(float(x)) if isinstance(x, (float, np.floating)) else x for x in row])
    logger.debug(f'wrote {len(rows)} rows to {path}')
    return path


def write_cloud(path: PathLike, cloud: np.ndarray, labels: Optional[Sequence[str]] = None) -> Path:
    """one row per point of the cloud, one column per point of A"""
    cloud = np.asarray(cloud, dtype=float)
    labels = list(labels) if labels is not None else [f'a{i}' for i in range(cloud.shape[1])]
    return write_csv(path, labels, cloud.tolist())


def pca_projection(points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """2-d coordinates on the top two principal axes, and those axes as rows"""
    points = np.asarray(points, dtype=float)
    centered = points - points.mean(axis=0)
    if points.shape[1] <= 2:
        axes = np.eye(points.shape[1], 2)
        coords = centered @ axes
        return coords, axes.T
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    axes = vt[:2]
    if axes.shape[0] < 2:
        axes = np.vstack([axes, np.zeros(points.shape[1])])
    return centered @ axes.T, axes


def write_svg(path: PathLike, points: np.ndarray, title: str = '') -> List[List[float]]:
    """
    the points and their convex hull, projected by pca when they live in
    more than two dimensions; returns the projection axes
    """
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or len(points) == 0:
        raise PreconditionError('nothing to draw')
    coords, axes = pca_projection(points)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.scatter(coords[:, 0], coords[:, 1], s=18, color='black', zorder=3)
    spread = np.ptp(coords, axis=0) if len(coords) > 1 else np.zeros(2)
    if len(coords) >= 3 and (spread > 1e-12).all():
        try:
            hull = ConvexHull(coords)
            loop = list(hull.vertices) + [hull.vertices[0]]
            ax.plot(coords[loop, 0], coords[loop, 1], color='tab:blue')
        except QhullError:
            logger.debug('points are collinear after projection; drawing no hull')
    elif len(coords) >= 2:
        order = np.argsort(coords[:, 0])
        ax.plot(coords[order, 0], coords[order, 1], color='tab:blue')
    for i, (x, y) in enumerate(coords):
        ax.annotate(str(i), (x, y), textcoords='offset points', xytext=(4, 4), fontsize=8)
    ax.set_title(title)
    ax.set_aspect('equal', adjustable='datalim')
    fig.savefig(path, format='svg', bbox_inches='tight')
    plt.close(fig)
    logger.info(f'wrote {path}')
    return axes.tolist()
