"""
points of irrational toric varieties as monoid homomorphisms

a point is stored through its values on a fixed generating set of the chart
monoid: the points A of a configuration (X_A) or generators of the dual of a
cone of a fan (the chart V_sigma of X_Sigma). Values are kept as logarithms;
``None`` stands for the value 0.
"""
import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from itoric.errors import (
    DimensionMismatchError,
    InvalidPointError,
    PreconditionError,
)
from itoric.geometry.cone import Cone, Face
from itoric.geometry.config import PointConfiguration
from itoric.geometry.fan import Fan, FanMap
from itoric.lattice.integer import integer_kernel, as_int_list
from itoric.lattice.monoid import hilbert_basis
from itoric.numeric.linalg import Matrix, kernel_basis
from itoric.numeric.scalar import (
    Scalar,
    Vector,
    as_vector,
    coerce,
    numeric_context,
    sign,
)
from itoric.settings import ScalarMode

logger = logging.getLogger(name=__name__)

LogValues = Tuple[Optional[float], ...]


@dataclass(frozen=True)
class TorusElement:
    """v in N acting through gamma_v(u) = exp(-<u, v>)"""
    v: Vector

    @classmethod
    def of(cls, v, mode: Optional[ScalarMode] = None) -> "TorusElement":
        return cls(as_vector(v, mode))

    def log_character(self, u: Vector) -> float:
        return -float(np.dot(u.to_numpy(), self.v.to_numpy()))


@lru_cache(maxsize=256)
def chart_generators(sigma: Cone) -> Tuple[Vector, ...]:
    """
    the generating set of the dual monoid used for charts: the hilbert basis
    in exact mode, extreme rays plus ± the lineality basis otherwise
    """
    if sigma.mode == ScalarMode.EXACT:
        return hilbert_basis(sigma).elements
    dual = sigma.dual()
    basis = dual.lineality_basis
    return tuple(dual.extreme_rays + basis + [-b for b in basis])


class Chart(ABC):
    """a monoid cone together with the generators a point is evaluated on"""

    @property
    @abstractmethod
    def generators(self) -> Tuple[Vector, ...]:
        pass

    @property
    @abstractmethod
    def monoid_cone(self) -> Cone:
        pass

    @property
    def dim(self) -> int:
        return self.monoid_cone.ambient_dim

    @property
    def mode(self) -> ScalarMode:
        return self.monoid_cone.mode

    def generator_matrix(self) -> np.ndarray:
        return np.array([g.to_numpy() for g in self.generators]).reshape(len(self.generators), self.dim)

    def face_members(self, face: Face) -> Tuple[int, ...]:
        return tuple(i for i, g in enumerate(self.generators) if face.cone.contains(g))

    @abstractmethod
    def same_as(self, other: "Chart") -> bool:
        pass


@dataclass(frozen=True, eq=False)
class ConfigurationChart(Chart):
    """X_A: generators are the points of A, the monoid cone is cone(A)"""
    configuration: PointConfiguration

    @property
    def generators(self) -> Tuple[Vector, ...]:
        return self.configuration.points

    @property
    def monoid_cone(self) -> Cone:
        return _configuration_cone(self.configuration)

    def same_as(self, other: Chart) -> bool:
        return isinstance(other, ConfigurationChart) and other.configuration == self.configuration


@lru_cache(maxsize=64)
def _configuration_cone(p: PointConfiguration) -> Cone:
    return p.cone()


@dataclass(frozen=True, eq=False)
class ConeChart(Chart):
    """V_sigma for the cone ``index`` of ``fan``"""
    fan: Fan
    index: int

    @property
    def sigma(self) -> Cone:
        return self.fan.cone(self.index)

    @property
    def generators(self) -> Tuple[Vector, ...]:
        return chart_generators(self.sigma)

    @property
    def monoid_cone(self) -> Cone:
        return self.sigma.dual()

    def same_as(self, other: Chart) -> bool:
        return isinstance(other, ConeChart) and other.fan is self.fan and other.index == self.index


@dataclass(frozen=True)
class OrbitId:
    """the orbit W_sigma (cone index) or the orbit of X_A over a face (point indices)"""
    cone_index: Optional[int] = None
    face: Optional[Tuple[int, ...]] = None

    def __str__(self) -> str:
        if self.cone_index is not None:
            return f'W[{self.cone_index}]'
        return 'O{' + ','.join(str(i) for i in self.face) + '}'


@dataclass(frozen=True)
class OrbitForm:
    """x = gamma_w . eps_F with F the support face of the chart monoid"""
    face: Face
    members: Tuple[int, ...]
    w: np.ndarray


@dataclass(frozen=True, eq=False)
class ToricPoint:
    chart: Chart
    log_values: LogValues

    def __post_init__(self):
        if len(self.log_values) != len(self.chart.generators):
            raise DimensionMismatchError(
                f'{len(self.log_values)} values for a chart with {len(self.chart.generators)} generators')

    @property
    def values(self) -> Tuple[float, ...]:
        return tuple(0.0 if lv is None else math.exp(lv) for lv in self.log_values)

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, lv in enumerate(self.log_values) if lv is not None)

    def is_dense(self) -> bool:
        return all(lv is not None for lv in self.log_values)

    def __repr__(self) -> str:
        vals = ', '.join(f'{v:.6g}' for v in self.values)
        return f'ToricPoint({vals})'


@dataclass(frozen=True)
class AbsorbingPoint:
    """the element 0 of the monoid X_Sigma+, outside every chart"""

    def __repr__(self) -> str:
        return 'ZERO'


ZERO = AbsorbingPoint()
AnyPoint = Union[ToricPoint, AbsorbingPoint]


def _log_tolerance(logs: Sequence[float]) -> float:
    scale = max([1.0] + [abs(x) for x in logs])
    return max(numeric_context().tolerance * 1e3, 1e-9) * scale


def orbit_form(x: ToricPoint) -> OrbitForm:
    """support face and a torus parameter w with x = gamma_w . eps_F"""
    chart = x.chart
    support = x.support
    total = Vector.zero(chart.dim, chart.mode)
    for i in support:
        total = total + chart.generators[i]
    face = chart.monoid_cone.minimal_face_containing(total)
    members = chart.face_members(face)
    if tuple(members) != tuple(support):
        raise InvalidPointError('the support of the point does not generate a face')
    if not support:
        return OrbitForm(face, members, np.zeros(chart.dim))
    g = np.array([chart.generators[i].to_numpy() for i in support])
    rhs = -np.array([x.log_values[i] for i in support])
    w, *_ = np.linalg.lstsq(g, rhs, rcond=None)
    residual = float(np.abs(g @ w - rhs).max())
    if residual > _log_tolerance(rhs):
        raise InvalidPointError(f'values are not multiplicative (log residual {residual:.3g})')
    return OrbitForm(face, members, w)


def point_from_form(chart: Chart, face_cone: Cone, w: np.ndarray) -> ToricPoint:
    """gamma_w . eps_F in ``chart``, with F given by its cone"""
    logs = []
    for g in chart.generators:
        if face_cone.contains(g):
            logs.append(-float(np.dot(g.to_numpy(), w)))
        else:
            logs.append(None)
    return ToricPoint(chart, tuple(logs))


def toric_point(chart: Chart, values: Sequence) -> ToricPoint:
    """validated point from nonnegative values on the chart generators"""
    logs = []
    for v in values:
        v = float(coerce(v, ScalarMode.FLOAT))
        if v < 0:
            raise InvalidPointError(f'negative value {v}')
        logs.append(None if v <= numeric_context().tolerance else math.log(v))
    x = ToricPoint(chart, tuple(logs))
    orbit_form(x)
    return x


def evaluate(x: ToricPoint, u) -> float:
    """phi(u) for u in the chart monoid cone"""
    u = as_vector(u, x.chart.mode)
    if not x.chart.monoid_cone.contains(u):
        raise PreconditionError(f'{u} is not in the chart monoid')
    form = orbit_form(x)
    if not form.face.cone.contains(u):
        return 0.0
    return math.exp(-float(np.dot(u.to_numpy(), form.w)))


def affine_point(p: PointConfiguration, t: TorusElement) -> ToricPoint:
    chart = ConfigurationChart(p)
    return ToricPoint(chart, tuple(t.log_character(a) for a in p.points))


def act(t: TorusElement, x: AnyPoint) -> AnyPoint:
    if isinstance(x, AbsorbingPoint):
        return x
    if t.v.dim != x.chart.dim:
        raise DimensionMismatchError('torus element and chart have different dimensions')
    logs = tuple(
        None if lv is None else lv + t.log_character(g)
        for lv, g in zip(x.log_values, x.chart.generators))
    return ToricPoint(x.chart, logs)


def toric_relations(p: PointConfiguration) -> List[Tuple[np.ndarray, np.ndarray]]:
    # (u, v) exponent pairs spanning the relations among the points
    if p.mode == ScalarMode.EXACT and all(a.is_integral() for a in p.points):
        rows = [[int(a[k]) for a in p.points] for k in range(p.dim)]
        kernel = [np.array(as_int_list(w), dtype=float) for w in integer_kernel(rows, len(p))]
    else:
        matrix = Matrix.from_rows([Vector(tuple(a[k] for a in p.points)) for k in range(p.dim)], len(p))
        kernel = [w.to_numpy() for w in kernel_basis(matrix)]
    return [(np.maximum(w, 0.0), np.maximum(-w, 0.0)) for w in kernel]


def _monomial(z: Sequence, exponents: np.ndarray, tol: float):
    out = None
    for zi, e in zip(z, exponents):
        if abs(e) <= tol:
            continue
        if isinstance(zi, float) or not float(e).is_integer():
            term = float(zi) ** float(e)
        else:
            term = zi ** int(round(e))
        out = term if out is None else out * term
    return 1 if out is None else out


def membership_residual(p: PointConfiguration, z) -> Scalar:
    """
    0 iff z lies in X_A: the support of z must be the set of points of a face of
    cone(A), and every relation sum u_a a = sum v_a a must give z^u = z^v
    """
    z = as_vector(z, p.mode)
    if z.dim != len(p):
        raise DimensionMismatchError(f'{z.dim} coordinates for {len(p)} points')
    if any(sign(c) < 0 for c in z):
        raise InvalidPointError('coordinates must be nonnegative')
    tol = numeric_context().tolerance
    zero = z.zero_value()
    worst = zero
    for u, v in toric_relations(p):
        gap = abs(_monomial(z.coords, u, tol) - _monomial(z.coords, v, tol))
        worst = max(worst, coerce(gap, p.mode))

    support = [i for i, c in enumerate(z) if sign(c) != 0]
    cone = _configuration_cone(p)
    total = Vector.zero(p.dim, p.mode)
    for i in support:
        total = total + p[i]
    face = cone.minimal_face_containing(total)
    missing = [i for i, a in enumerate(p.points) if i not in support and face.cone.contains(a)]
    if missing:
        # a positive multiple of a missing point splits off the support sum,
        # so z^support must vanish
        worst = max(worst, coerce(_monomial([z[i] for i in support], np.ones(len(support)), tol), p.mode))
    return Scalar(worst)


def orbit_of(x: ToricPoint) -> OrbitId:
    form = orbit_form(x)
    chart = x.chart
    if isinstance(chart, ConfigurationChart):
        return OrbitId(face=form.members)
    sigma = chart.sigma
    tau = sigma.face_by_functional(form.face.cone.relint_point()).cone
    index = chart.fan.index_of(tau)
    if index is None:
        raise InvalidPointError('the orbit cone is not a cone of the fan')
    return OrbitId(cone_index=index)


def distinguished_point(f: Fan, index: int) -> ToricPoint:
    """x_sigma: 1 on the generators in sigma-perp, 0 elsewhere"""
    chart = ConeChart(f, index)
    sigma = chart.sigma
    perp = sigma.dual_face(sigma).cone
    return point_from_form(chart, perp, np.zeros(f.ambient_dim))


def face_point(p: PointConfiguration, face: Sequence[int]) -> ToricPoint:
    """eps_F on X_A: 1 on the points of the face, 0 elsewhere"""
    chart = ConfigurationChart(p)
    face = set(face)
    x = ToricPoint(chart, tuple(0.0 if i in face else None for i in range(len(p))))
    orbit_form(x)
    return x


def dense_point(f: Fan, w=None) -> ToricPoint:
    """gamma_w . eps in the chart of the minimal cone"""
    w_arr = np.zeros(f.ambient_dim) if w is None else as_vector(w).to_numpy()
    chart = ConeChart(f, 0)
    return point_from_form(chart, chart.monoid_cone, w_arr)


def orbit_cone_and_parameter(x: ToricPoint) -> Tuple[int, np.ndarray]:
    if not isinstance(x.chart, ConeChart):
        raise PreconditionError('the point is not on a fan chart')
    form = orbit_form(x)
    return orbit_of(x).cone_index, form.w


def change_chart(x: ToricPoint, index: int) -> ToricPoint:
    """x in the chart of the cone ``index``, which must contain its orbit cone"""
    tau, w = orbit_cone_and_parameter(x)
    f = x.chart.fan
    if not f.is_face_of(tau, index):
        raise PreconditionError(f'the point does not lie in the chart of cone {index}')
    target = ConeChart(f, index)
    perp = target.sigma.dual_face(f.cones[tau]).cone
    return point_from_form(target, perp, w)


def same_point(x: AnyPoint, y: AnyPoint) -> bool:
    if isinstance(x, AbsorbingPoint) or isinstance(y, AbsorbingPoint):
        return isinstance(x, AbsorbingPoint) and isinstance(y, AbsorbingPoint)
    if isinstance(x.chart, ConfigurationChart):
        if not x.chart.same_as(y.chart):
            return False
        return np.allclose(x.values, y.values, rtol=1e-8, atol=1e-10)
    if orbit_of(x) != orbit_of(y):
        return False
    y = change_chart(y, x.chart.index)
    return np.allclose(x.values, y.values, rtol=1e-8, atol=1e-10)


def monoid_product(x: AnyPoint, y: AnyPoint) -> AnyPoint:
    """
    pointwise product in a chart holding both points; ZERO when no cone of
    the fan contains both orbit cones
    """
    if isinstance(x, AbsorbingPoint) or isinstance(y, AbsorbingPoint):
        return ZERO
    if isinstance(x.chart, ConfigurationChart):
        if not x.chart.same_as(y.chart):
            raise PreconditionError('points on different configurations')
        logs = tuple(None if a is None or b is None else a + b for a, b in zip(x.log_values, y.log_values))
        return ToricPoint(x.chart, logs)
    f = x.chart.fan
    if y.chart.fan is not f:
        raise PreconditionError('points on different fans')
    tx, ty = orbit_of(x).cone_index, orbit_of(y).cone_index
    common = next((j for j in range(len(f)) if f.is_face_of(tx, j) and f.is_face_of(ty, j)), None)
    if common is None:
        return ZERO
    xs, ys = change_chart(x, common), change_chart(y, common)
    logs = tuple(None if a is None or b is None else a + b for a, b in zip(xs.log_values, ys.log_values))
    return ToricPoint(xs.chart, logs)


def orbit_closure_contains(f: Fan, rho: int, sigma: int) -> bool:
    """W_sigma in the closure of W_rho: x_rho lies in V_sigma and supp(x_sigma) ⊆ supp(x_rho)"""
    x_rho = distinguished_point(f, rho)
    try:
        moved = change_chart(x_rho, sigma)
    except PreconditionError:
        return False
    x_sigma = distinguished_point(f, sigma)
    return set(x_sigma.support) <= set(moved.support)


def map_point(fan_map: FanMap, x: ToricPoint) -> ToricPoint:
    """gamma_w . x_tau  ->  gamma_{Psi w} . x_tau' with Psi(relint tau) in relint tau'"""
    if not isinstance(x.chart, ConeChart) or x.chart.fan is not fan_map.source:
        raise PreconditionError('the point is not on the source fan')
    tau, w = orbit_cone_and_parameter(x)
    image = fan_map.image(fan_map.source.cones[tau].relint_point())
    target_index = fan_map.target.cone_of_point(image)
    if target_index is None:
        raise PreconditionError('the image of the orbit cone lies in no target cone')
    psi = fan_map.matrix.to_numpy()
    chart = ConeChart(fan_map.target, target_index)
    perp = chart.sigma.dual_face(chart.sigma).cone
    return point_from_form(chart, perp, psi @ w)


