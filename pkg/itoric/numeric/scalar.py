"""
scalars, vectors and the process-wide numeric context

every coordinate in the package is either a ``Fraction`` (exact mode) or a
``float`` (float mode). Vectors hold raw numbers of one kind; ``Scalar`` wraps a
single number when it leaves the package (pairings, volumes, residuals).
"""
import logging
import math
import threading
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Tuple, Union

import numpy as np

from itoric.errors import DimensionMismatchError, ModeMismatchError
from itoric.settings import NumericSettings, ScalarMode

logger = logging.getLogger(name=__name__)

Number = Union[Fraction, float]


@dataclass(frozen=True)
class NumericContext:
    mode: ScalarMode
    tolerance: float
    lp_margin: float
    max_lp_iterations: int

    @classmethod
    def from_settings(cls, settings: NumericSettings) -> "NumericContext":
        return cls(
            mode=settings.mode,
            tolerance=settings.tolerance,
            lp_margin=settings.lp_margin,
            max_lp_iterations=settings.max_lp_iterations,
        )


_context_lock = threading.Lock()
_context = NumericContext.from_settings(NumericSettings())


def numeric_context() -> NumericContext:
    return _context


@contextmanager
def use_numeric(
        mode: Optional[ScalarMode] = None,
        tolerance: Optional[float] = None,
        lp_margin: Optional[float] = None):
    """temporarily swap the process-wide context, mainly for library callers"""
    global _context
    previous = _context
    settings = NumericSettings(
        mode=mode or previous.mode,
        tolerance=tolerance or previous.tolerance,
        lp_margin=lp_margin or previous.lp_margin,
        max_lp_iterations=previous.max_lp_iterations,
    )
    with _context_lock:
        _context = NumericContext.from_settings(settings)
    try:
        yield _context
    finally:
        with _context_lock:
            _context = previous


def tolerance() -> float:
    return _context.tolerance


def active_mode() -> ScalarMode:
    return _context.mode


def mode_of(x: Number) -> ScalarMode:
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        return ScalarMode.EXACT
    if isinstance(x, float):
        return ScalarMode.FLOAT
    raise ModeMismatchError(f'not a scalar: {x!r}')


def coerce(x, mode: Optional[ScalarMode] = None) -> Number:
    """
    parse an input literal into the given (or active) mode; ints, Fractions,
    floats, decimal strings and "p/q" strings are accepted
    """
    mode = mode or _context.mode
    if isinstance(x, Scalar):
        x = x.value
    if isinstance(x, bool):
        raise ModeMismatchError(f'booleans are not scalars: {x!r}')
    if mode == ScalarMode.EXACT:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, float):
            if not math.isfinite(x):
                raise ModeMismatchError(f'non-finite literal {x!r} in exact mode')
            # decimal literal as written, not the binary expansion
            return Fraction(repr(x))
        if isinstance(x, str):
            try:
                return Fraction(x.strip())
            except (ValueError, ZeroDivisionError):
                raise ModeMismatchError(f'not an exact literal: {x!r}')
    else:
        if isinstance(x, (int, float, Fraction)):
            return float(x)
        if isinstance(x, str):
            try:
                return float(Fraction(x.strip()))
            except (ValueError, ZeroDivisionError):
                raise ModeMismatchError(f'not a numeric literal: {x!r}')
    raise ModeMismatchError(f'cannot read {x!r} as a scalar')


def is_zero(x: Number) -> bool:
    if isinstance(x, float):
        return abs(x) <= _context.tolerance
    return x == 0


def sign(x: Number) -> int:
    if is_zero(x):
        return 0
    return 1 if x > 0 else -1


def check_same_mode(*values: Number) -> ScalarMode:
    modes = {mode_of(v) for v in values}
    if len(modes) > 1:
        raise ModeMismatchError('mixed exact and float arithmetic')
    return modes.pop() if modes else _context.mode


def number_str(x: Number) -> str:
    if isinstance(x, Fraction):
        return str(x)
    return repr(float(x))


@dataclass(frozen=True, eq=False)
class Scalar:
    value: Number

    def __post_init__(self):
        if isinstance(self.value, int) and not isinstance(self.value, bool):
            object.__setattr__(self, 'value', Fraction(self.value))
        mode_of(self.value)

    @property
    def mode(self) -> ScalarMode:
        return mode_of(self.value)

    def _other(self, other) -> Number:
        if isinstance(other, Scalar):
            other = other.value
        if isinstance(other, int) and not isinstance(other, bool):
            other = Fraction(other) if self.mode == ScalarMode.EXACT else float(other)
        if mode_of(other) != self.mode:
            raise ModeMismatchError('mixed exact and float arithmetic')
        return other

    def __add__(self, other):
        return Scalar(self.value + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.value - self._other(other))

    def __rsub__(self, other):
        return Scalar(self._other(other) - self.value)

    def __mul__(self, other):
        return Scalar(self.value * self._other(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Scalar(self.value / self._other(other))

    def __neg__(self):
        return Scalar(-self.value)

    def __abs__(self):
        return Scalar(abs(self.value))

    def __eq__(self, other):
        try:
            return is_zero(self.value - self._other(other))
        except ModeMismatchError:
            return False

    def __hash__(self):
        return hash((self.mode, self.value if self.mode == ScalarMode.EXACT else None))

    def __lt__(self, other):
        return sign(self.value - self._other(other)) < 0

    def __le__(self, other):
        return sign(self.value - self._other(other)) <= 0

    def __gt__(self, other):
        return sign(self.value - self._other(other)) > 0

    def __ge__(self, other):
        return sign(self.value - self._other(other)) >= 0

    def __float__(self):
        return float(self.value)

    def is_zero(self) -> bool:
        return is_zero(self.value)

    def sign(self) -> int:
        return sign(self.value)

    def __str__(self):
        return number_str(self.value)

    def __repr__(self):
        return f'Scalar({self})'


def _normalize_coords(values: Iterable) -> Tuple[Number, ...]:
    coords = []
    for v in values:
        if isinstance(v, Scalar):
            v = v.value
        if isinstance(v, int) and not isinstance(v, bool):
            v = Fraction(v)
        coords.append(v)
    return tuple(coords)


@dataclass(frozen=True)
class Vector:
    coords: Tuple[Number, ...]
    _mode: ScalarMode = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        coords = _normalize_coords(self.coords)
        if not coords:
            raise DimensionMismatchError('vectors must have positive dimension')
        object.__setattr__(self, 'coords', coords)
        object.__setattr__(self, '_mode', check_same_mode(*coords))

    @classmethod
    def of(cls, values: Iterable, mode: Optional[ScalarMode] = None) -> "Vector":
        return cls(tuple(coerce(v, mode) for v in values))

    @classmethod
    def zero(cls, dim: int, mode: Optional[ScalarMode] = None) -> "Vector":
        return cls.of([0] * dim, mode)

    @classmethod
    def unit(cls, dim: int, index: int, mode: Optional[ScalarMode] = None) -> "Vector":
        return cls.of([1 if i == index else 0 for i in range(dim)], mode)

    @property
    def mode(self) -> ScalarMode:
        return self._mode

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[Number]:
        return iter(self.coords)

    def __getitem__(self, i: int) -> Number:
        return self.coords[i]

    def scalar(self, i: int) -> Scalar:
        return Scalar(self.coords[i])

    def _check(self, other: "Vector"):
        if self.dim != other.dim:
            raise DimensionMismatchError(f'dimension mismatch: {self.dim} vs {other.dim}')
        if self.mode != other.mode:
            raise ModeMismatchError('mixed exact and float vectors')

    def __add__(self, other: "Vector") -> "Vector":
        self._check(other)
        return Vector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Vector") -> "Vector":
        self._check(other)
        return Vector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Vector":
        return Vector(tuple(-a for a in self.coords))

    def scale(self, c) -> "Vector":
        c = coerce(c, self.mode)
        return Vector(tuple(c * a for a in self.coords))

    def dot(self, other: "Vector") -> Number:
        self._check(other)
        return sum((a * b for a, b in zip(self.coords, other.coords)), self.zero_value())

    def zero_value(self) -> Number:
        return Fraction(0) if self.mode == ScalarMode.EXACT else 0.0

    def is_zero(self) -> bool:
        return all(is_zero(a) for a in self.coords)

    def is_integral(self) -> bool:
        return self.mode == ScalarMode.EXACT and all(a.denominator == 1 for a in self.coords)

    def norm(self) -> float:
        return math.sqrt(sum(float(a) ** 2 for a in self.coords))

    def direct_sum(self, other: "Vector") -> "Vector":
        if self.mode != other.mode:
            raise ModeMismatchError('mixed exact and float vectors')
        return Vector(self.coords + other.coords)

    def primitive(self) -> "Vector":
        """primitive integer direction (exact) or unit direction (float)"""
        return Vector(primitive_coords(self.coords))

    def sign_normalized(self) -> "Vector":
        """flip so that the first nonzero entry is positive"""
        for a in self.coords:
            s = sign(a)
            if s:
                return self if s > 0 else -self
        return self

    def to_numpy(self) -> np.ndarray:
        return np.array([float(a) for a in self.coords], dtype=float)

    def sort_key(self) -> tuple:
        if self.mode == ScalarMode.EXACT:
            return tuple(self.coords)
        # float keys are rounded so tolerance-equal vectors sort together
        digits = max(0, int(-math.log10(_context.tolerance)) - 1)
        return tuple(round(a, digits) + 0.0 for a in self.coords)

    def __str__(self):
        return '(' + ', '.join(number_str(a) for a in self.coords) + ')'


def primitive_coords(coords: Sequence[Number]) -> Tuple[Number, ...]:
    if not coords:
        return tuple(coords)
    if isinstance(coords[0], Fraction):
        lcm = 1
        for a in coords:
            lcm = lcm * a.denominator // math.gcd(lcm, a.denominator)
        ints = [int(a * lcm) for a in coords]
        g = 0
        for a in ints:
            g = math.gcd(g, a)
        if g == 0:
            return tuple(Fraction(0) for _ in coords)
        return tuple(Fraction(a // g) for a in ints)
    norm = math.sqrt(sum(a * a for a in coords))
    if norm <= _context.tolerance:
        return tuple(0.0 for _ in coords)
    return tuple(a / norm for a in coords)


def pairing(u: Vector, v: Vector) -> Scalar:
    """the canonical pairing of M and N"""
    return Scalar(u.dot(v))


def as_vector(value, mode: Optional[ScalarMode] = None) -> Vector:
    if isinstance(value, Vector):
        if mode and value.mode != mode:
            raise ModeMismatchError('vector is in the wrong scalar mode')
        return value
    return Vector.of(value, mode)
