"""
translated complexes Z(S, omega) and the limits of omega . Z_A along
power-sum paths in the space of liftings
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from itoric.errors import DimensionMismatchError, NoLimitError, NotRegularError, PreconditionError
from itoric.geometry.cone import Cone, Face
from itoric.geometry.config import PointConfiguration
from itoric.geometry.fan import Fan
from itoric.hausdorff.sampling import (
    Cloud,
    hausdorff_distance,
    log_translation,
    sample_translate,
    sampling_resolution,
)
from itoric.numeric.scalar import Vector, as_vector, sign
from itoric.secondary.polytope import secondary_fan
from itoric.secondary.subdivision import (
    Subdivision,
    affine_dependencies,
    is_regular,
    lifting_cone,
    regular_subdivision,
    volume,
)
from itoric.settings import HausdorffSettings, ScalarMode
from itoric.toric.points import ConeChart, TorusElement, ToricPoint, point_from_form

logger = logging.getLogger(name=__name__)

Exponent = Union[int, float, Fraction]


@dataclass(frozen=True)
class PowerSumPath:
    """v(s) = sum_k c_k s^alpha_k, exponents strictly decreasing"""
    terms: Tuple[Tuple[Exponent, Vector], ...]

    def __post_init__(self):
        exponents = [a for a, _ in self.terms]
        if any(b >= a for a, b in zip(exponents, exponents[1:])):
            raise PreconditionError(f'exponents {exponents} are not strictly decreasing')
        dims = {c.dim for _, c in self.terms}
        if len(dims) > 1:
            raise DimensionMismatchError(f'path coefficients of dimensions {sorted(dims)}')

    @classmethod
    def of(cls, terms: Sequence[Tuple[Exponent, Sequence]], mode: Optional[ScalarMode] = None) -> "PowerSumPath":
        ordered = sorted(((a, as_vector(c, mode)) for a, c in terms), key=lambda t: -t[0])
        return cls(tuple(ordered))

    @classmethod
    def ray(cls, direction, offset=None, mode: Optional[ScalarMode] = None) -> "PowerSumPath":
        """s . direction + offset"""
        terms = [(1, direction)]
        if offset is not None:
            terms.append((0, offset))
        return cls.of(terms, mode)

    @property
    def dim(self) -> Optional[int]:
        return self.terms[0][1].dim if self.terms else None

    def at(self, s: float) -> np.ndarray:
        total = np.zeros(self.dim or 0)
        for a, c in self.terms:
            total = total + c.to_numpy() * float(s) ** float(a)
        return total

    def growing(self) -> List[Vector]:
        return [c for a, c in self.terms if a > 0]

    def bounded_part(self) -> np.ndarray:
        """the coefficient of s^0"""
        for a, c in self.terms:
            if a == 0:
                return c.to_numpy()
        return np.zeros(self.dim or 0)

    def in_mode(self, mode: ScalarMode) -> "PowerSumPath":
        return PowerSumPath(tuple((a, as_vector(c, mode)) for a, c in self.terms))


def _eventual_sign(h: Vector, path: PowerSumPath) -> int:
    # sign of h(v(s)) for large s: the first nonzero pairing by decreasing exponent
    for _, c in path.terms:
        s = sign(h.dot(c))
        if s != 0:
            return s
    return 0


def eventually_in(sigma: Cone, path: PowerSumPath) -> bool:
    if path.dim is not None and path.dim != sigma.ambient_dim:
        raise DimensionMismatchError(f'path in dimension {path.dim}, cone in dimension {sigma.ambient_dim}')
    path = path.in_mode(sigma.mode)
    if any(_eventual_sign(e, path) != 0 for e in sigma.equations):
        return False
    return all(_eventual_sign(h, path) >= 0 for h in sigma.facet_normals)


def min_face_of_boundedness(sigma: Cone, path: PowerSumPath) -> Face:
    """
    the smallest face tau of sigma such that every functional of
    sigma-dual ∩ tau-perp vanishes on the growing terms of the path
    """
    if not eventually_in(sigma, path):
        raise NoLimitError(f'the path does not eventually stay in {sigma!r}')
    path = path.in_mode(sigma.mode)
    growing = path.growing()
    for face in sorted(sigma.faces(), key=lambda f: f.dim):
        dual = sigma.dual_face(face).cone
        functionals = dual.extreme_rays + dual.lineality_basis
        if all(sign(psi.dot(c)) == 0 for psi in functionals for c in growing):
            logger.debug(f'path is bounded modulo the face of dimension {face.dim}')
            return face
    raise NoLimitError('no face of the cone bounds the path')


@dataclass(frozen=True)
class TranslatedComplex:
    """Z(S, omega) = union over the cells F of S of omega . Z_F"""
    configuration: PointConfiguration
    subdivision: Subdivision
    log_omega: Tuple[float, ...]

    @classmethod
    def of(cls, s: Subdivision, log_omega: Optional[Sequence] = None) -> "TranslatedComplex":
        p = s.configuration
        return cls(p, s, tuple(float(x) for x in log_translation(p, log_omega)))

    def translate(self, log_omega: Sequence) -> "TranslatedComplex":
        """omega' . Z(S, omega)"""
        shift = log_translation(self.configuration, log_omega)
        return TranslatedComplex(self.configuration, self.subdivision, tuple(np.array(self.log_omega) + shift))

    def same_as(self, other: "TranslatedComplex", tolerance: float = 1e-9) -> bool:
        """equal sets: same cells and log omega - log omega' affine on every cell"""
        if self.subdivision.cells != other.subdivision.cells:
            return False
        diff = np.array(self.log_omega) - np.array(other.log_omega)
        basis = np.array([v.to_numpy() for v in affine_dependencies(self.subdivision)], dtype=float).T
        if basis.size == 0:
            return bool(np.abs(diff).max(initial=0.0) <= tolerance)
        coef, *_ = np.linalg.lstsq(basis, diff, rcond=None)
        return bool(np.abs(basis @ coef - diff).max(initial=0.0) <= tolerance * max(1.0, np.abs(diff).max()))


def limit_complex(p: PointConfiguration, path: PowerSumPath, fan: Optional[Fan] = None) -> TranslatedComplex:
    """
    the limit of gamma_{v(s)} . Z_A: Z(S_tau, gamma_v) for the minimum face
    of boundedness tau and the bounded part v of the path
    """
    if path.dim is not None and path.dim != len(p):
        raise DimensionMismatchError(f'path in dimension {path.dim} for {len(p)} points')
    fan = fan or secondary_fan(p)
    if not path.terms:
        path = PowerSumPath(((0, Vector.zero(len(p), p.mode)),))
    sigma = next((i for i in fan.maximal() if eventually_in(fan.cones[i], path)), None)
    if sigma is None:
        raise NoLimitError('the path leaves the support of the secondary fan')
    tau = min_face_of_boundedness(fan.cones[sigma], path)
    s = regular_subdivision(p, tau.cone.relint_point())
    logger.info(f'limit along the path: {len(s)} cells from a face of dimension {tau.dim}')
    # gamma_v has log omega_a = -v_a
    return TranslatedComplex.of(s, -path.bounded_part())


def psi_correspondence(zc: TranslatedComplex, fan: Optional[Fan] = None) -> ToricPoint:
    """gamma_v . x_sigma in the chart of sigma = C(S) of the secondary fan, for omega = gamma_v"""
    p = zc.configuration
    if is_regular(zc.subdivision) is None:
        raise NotRegularError(f'the subdivision {zc.subdivision.cells} is not regular')
    fan = fan or secondary_fan(p)
    index = fan.index_of(lifting_cone(zc.subdivision))
    if index is None:
        raise NotRegularError('the cone of the subdivision is not in the secondary fan')
    chart = ConeChart(fan, index)
    perp = chart.sigma.dual_face(chart.sigma).cone
    return point_from_form(chart, perp, -np.array(zc.log_omega))


def torus_of(log_omega: Sequence) -> TorusElement:
    """the torus element gamma_v acting on the secondary fan charts as omega"""
    return TorusElement.of([-float(x) for x in log_omega], ScalarMode.FLOAT)


def sample_complex(
        zc: TranslatedComplex,
        density: Optional[int] = None,
        settings: Optional[HausdorffSettings] = None) -> Cloud:
    """union of the samples of omega|F . Z_F, zero off F, density shared by volume"""
    settings = settings or HausdorffSettings()
    density = density or settings.density
    p = zc.configuration
    total = float(volume(p))
    log_omega = np.array(zc.log_omega)
    clouds = []
    for cell in zc.subdivision.cells:
        share = float(volume(p, cell)) / total if total > 0 else 1.0
        count = max(8, round(density * share))
        sub = sample_translate(p.sub(cell), log_omega[list(cell)], count, settings)
        cloud = np.zeros((len(sub), len(p)))
        cloud[:, list(cell)] = sub
        clouds.append(cloud)
    out = np.concatenate(clouds)
    logger.debug(f'sampled {len(out)} points on {len(clouds)} cells')
    return out


@dataclass(frozen=True)
class ConvergenceSeries:
    s_values: Tuple[float, ...]
    distances: Tuple[float, ...]
    resolution: float
    limit: TranslatedComplex
    clouds: Tuple[Cloud, ...]
    target: Cloud

    @property
    def is_decreasing(self) -> bool:
        return all(b < a for a, b in zip(self.distances, self.distances[1:]))

    @property
    def settles(self) -> bool:
        """the last distance is within five sampling resolutions"""
        return bool(self.distances) and self.distances[-1] < 5 * self.resolution


def convergence_series(
        p: PointConfiguration,
        lifting,
        s_values: Sequence[float] = (1, 2, 4, 8, 16),
        offset=None,
        density: Optional[int] = None,
        fan: Optional[Fan] = None,
        settings: Optional[HausdorffSettings] = None) -> ConvergenceSeries:
    """hausdorff distances from gamma_{s lifting + offset} . Z_A to its limit complex"""
    settings = settings or HausdorffSettings()
    density = density or settings.density
    path = PowerSumPath.ray(lifting, offset, p.mode)
    limit = limit_complex(p, path, fan)
    target = sample_complex(limit, density, settings)
    resolution = sampling_resolution(target)
    distances, clouds = [], []
    for s in s_values:
        cloud = sample_translate(p, -path.at(s), density, settings)
        d = float(hausdorff_distance(cloud, target))
        logger.info(f's = {s}: hausdorff distance {d:.4g} (resolution {resolution:.4g})')
        distances.append(d)
        clouds.append(cloud)
    return ConvergenceSeries(
        tuple(float(s) for s in s_values), tuple(distances), resolution, limit, tuple(clouds), target)
