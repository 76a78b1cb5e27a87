"""
two-phase tableau simplex over Fractions (exact) or floats (tolerance)

variables are free unless the problem says otherwise. Strict rows are handled
with one gap variable t: ``a.x - t >= b`` for ``a.x > b``, ``a.x + t <= b``
for ``a.x < b``, with ``0 <= t <= margin``; the problem is strictly feasible
iff the largest attainable t is positive.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from itoric.errors import DimensionMismatchError, PreconditionError, SolverError
from itoric.numeric.scalar import (
    Number,
    Vector,
    active_mode,
    coerce,
    numeric_context,
)
from itoric.settings import ScalarMode

logger = logging.getLogger(name=__name__)


class Relation(str, Enum):
    LE = '<='
    GE = '>='
    EQ = '='
    LT = '<'
    GT = '>'

    @property
    def strict(self) -> bool:
        return self in (Relation.LT, Relation.GT)


class LpStatus(str, Enum):
    FEASIBLE = 'feasible'
    OPTIMAL = 'optimal'
    INFEASIBLE = 'infeasible'
    UNBOUNDED = 'unbounded'


@dataclass(frozen=True)
class LpConstraint:
    coeffs: Vector
    relation: Relation
    rhs: Number

    @classmethod
    def of(cls, coeffs, relation: Relation, rhs=0, mode: Optional[ScalarMode] = None) -> "LpConstraint":
        vec = coeffs if isinstance(coeffs, Vector) else Vector.of(coeffs, mode)
        return cls(vec, Relation(relation), coerce(rhs, vec.mode))

    def satisfied_by(self, x: Vector, tol: float) -> bool:
        lhs = self.coeffs.dot(x) - self.rhs
        if self.relation == Relation.LE:
            return lhs <= tol
        if self.relation == Relation.GE:
            return lhs >= -tol
        if self.relation == Relation.EQ:
            return abs(lhs) <= tol
        if self.relation == Relation.LT:
            return lhs < 0
        return lhs > 0


@dataclass(frozen=True)
class LpProblem:
    nvars: int
    constraints: Tuple[LpConstraint, ...] = ()
    objective: Optional[Vector] = None
    nonnegative: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'constraints', tuple(self.constraints))
        for c in self.constraints:
            if c.coeffs.dim != self.nvars:
                raise DimensionMismatchError(f'constraint of length {c.coeffs.dim} in a problem with {self.nvars} variables')
        if self.objective is not None and self.objective.dim != self.nvars:
            raise DimensionMismatchError('objective has the wrong length')
        if self.objective is not None and self.has_strict:
            raise PreconditionError('strict inequalities are only allowed in feasibility problems')

    @property
    def has_strict(self) -> bool:
        return any(c.relation.strict for c in self.constraints)

    @property
    def mode(self) -> ScalarMode:
        if self.constraints:
            return self.constraints[0].coeffs.mode
        if self.objective is not None:
            return self.objective.mode
        return active_mode()


@dataclass(frozen=True)
class LpResult:
    status: LpStatus
    witness: Optional[Vector] = None
    value: Optional[Number] = None
    gap: Optional[Number] = None

    @property
    def feasible(self) -> bool:
        return self.status in (LpStatus.FEASIBLE, LpStatus.OPTIMAL)


@dataclass
class _Tableau:
    rows: List[List[Number]]
    basis: List[int]
    zero: Number
    tol: float
    max_iterations: int
    iterations: int = field(default=0)

    def _positive(self, x: Number) -> bool:
        return x > self.tol

    def pivot(self, r: int, c: int):
        row = self.rows[r]
        p = row[c]
        self.rows[r] = [a / p for a in row]
        row = self.rows[r]
        for i, other in enumerate(self.rows):
            if i != r and other[c] != 0:
                f = other[c]
                self.rows[i] = [a - f * b for a, b in zip(other, row)]
        self.basis[r] = c

    def run(self, z: List[Number], allowed: int) -> Tuple[bool, List[Number]]:
        """
        maximize with reduced-cost row z (z[j] < 0 means improving); returns
        (bounded, final z row)
        """
        while True:
            self.iterations += 1
            if self.iterations > self.max_iterations:
                raise SolverError(f'simplex did not terminate within {self.max_iterations} pivots')
            entering = next((j for j in range(allowed) if z[j] < -self.tol), None)
            if entering is None:
                return True, z
            best = None
            for i, row in enumerate(self.rows):
                if self._positive(row[entering]):
                    ratio = row[-1] / row[entering]
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False, z
            r = best[1]
            self.pivot(r, entering)
            row = self.rows[r]
            f = z[entering]
            z = [a - f * b for a, b in zip(z, row)]


def _standard_form(problem: LpProblem, margin: Number, zero: Number, one: Number):
    """
    columns: y (split x+/x- unless nonnegative), gap t (if strict), one slack
    per inequality; returns rows, the index of t and the variable count
    """
    n = problem.nvars
    split = not problem.nonnegative
    nx = 2 * n if split else n
    constraints = list(problem.constraints)
    strict = problem.has_strict
    t_col = nx if strict else None
    ncore = nx + (1 if strict else 0)
    slack_rows = [c for c in constraints if c.relation != Relation.EQ]
    nslack = len(slack_rows) + (1 if strict else 0)
    width = ncore + nslack
    rows = []
    s = ncore
    for c in constraints:
        row = [zero] * (width + 1)
        for j, a in enumerate(c.coeffs):
            row[j] = a
            if split:
                row[n + j] = -a
        if c.relation == Relation.GT:
            row[t_col] = -one
        elif c.relation == Relation.LT:
            row[t_col] = one
        if c.relation in (Relation.LE, Relation.LT):
            row[s] = one
            s += 1
        elif c.relation in (Relation.GE, Relation.GT):
            row[s] = -one
            s += 1
        row[-1] = c.rhs
        rows.append(row)
    if strict:
        row = [zero] * (width + 1)
        row[t_col] = one
        row[s] = one
        row[-1] = margin
        rows.append(row)
    return rows, t_col, width, nx


def _solve(problem: LpProblem, objective: Optional[Vector]) -> LpResult:
    ctx = numeric_context()
    mode = problem.mode
    exact = mode == ScalarMode.EXACT
    zero, one = (Fraction(0), Fraction(1)) if exact else (0.0, 1.0)
    tol = 0 if exact else ctx.tolerance
    margin = coerce(ctx.lp_margin, mode)

    rows, t_col, width, nx = _standard_form(problem, margin, zero, one)
    m = len(rows)
    for row in rows:
        if row[-1] < 0:
            row[:] = [-a for a in row]
    # phase one: one artificial per row
    for i, row in enumerate(rows):
        row[-1:-1] = [one if k == i else zero for k in range(m)]
    total = width + m
    tab = _Tableau(rows, [width + i for i in range(m)], zero, tol, ctx.max_lp_iterations)
    z = [zero] * width + [one] * m + [zero]
    for row in rows:
        z = [a - b for a, b in zip(z, row)]
    _, z = tab.run(z, total)
    if z[-1] < -(tol * max(1, m)):
        logger.debug(f'lp infeasible, phase one value {z[-1]}')
        return LpResult(LpStatus.INFEASIBLE)

    # drive artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] >= width:
            c = next((j for j in range(width) if abs(tab.rows[i][j]) > tol), None)
            if c is None:
                del tab.rows[i]
                del tab.basis[i]
                continue
            tab.pivot(i, c)
        i += 1
    tab.rows = [row[:width] + [row[-1]] for row in tab.rows]

    cost = [zero] * (width + 1)
    if objective is not None:
        for j, a in enumerate(objective):
            cost[j] = a
            if not problem.nonnegative:
                cost[problem.nvars + j] = -a
    elif t_col is not None:
        cost[t_col] = one
    z = [-a for a in cost]
    for i, b in enumerate(tab.basis):
        if cost[b] != 0:
            f = cost[b]
            z = [a + f * r for a, r in zip(z, tab.rows[i])]
    if objective is not None or t_col is not None:
        bounded, z = tab.run(z, width)
        if not bounded:
            logger.debug('lp objective unbounded')
            return LpResult(LpStatus.UNBOUNDED)

    y = [zero] * width
    for i, b in enumerate(tab.basis):
        y[b] = tab.rows[i][-1]
    n = problem.nvars
    if problem.nonnegative:
        x = Vector(tuple(y[:n]))
    else:
        x = Vector(tuple(y[j] - y[n + j] for j in range(n)))
    gap = y[t_col] if t_col is not None else None
    if gap is not None and not gap > tol:
        logger.debug(f'lp strict rows unattainable, best gap {gap}')
        return LpResult(LpStatus.INFEASIBLE, gap=gap)

    check_tol = 0 if exact else ctx.tolerance * 100
    for c in problem.constraints:
        if not c.satisfied_by(x, check_tol):
            raise SolverError(f'lp witness {x} violates {c.relation.value} row', residual=float(abs(c.coeffs.dot(x) - c.rhs)))
    logger.debug(f'lp solved after {tab.iterations} pivots')
    if objective is not None:
        return LpResult(LpStatus.OPTIMAL, witness=x, value=objective.dot(x))
    return LpResult(LpStatus.FEASIBLE, witness=x, gap=gap)


def lp_feasible(problem: LpProblem) -> LpResult:
    """a witness satisfying every row (strict rows with a positive gap), or INFEASIBLE"""
    if problem.nvars == 0:
        raise DimensionMismatchError('an lp needs at least one variable')
    return _solve(problem, None)


def lp_optimize(problem: LpProblem) -> LpResult:
    """maximize the problem objective over the feasible set"""
    if problem.objective is None:
        raise PreconditionError('lp_optimize needs an objective')
    return _solve(problem, problem.objective)


def feasible_point(
        nvars: int,
        ge: Sequence[Vector] = (),
        gt: Sequence[Vector] = (),
        eq: Sequence[Vector] = (),
        mode: Optional[ScalarMode] = None) -> Optional[Vector]:
    """
    homogeneous helper: x with h.x >= 0, g.x > 0 and e.x == 0 for the given
    rows, or None
    """
    mode = mode or active_mode()
    zero = coerce(0, mode)
    rows = [LpConstraint(h, Relation.GE, zero) for h in ge]
    rows += [LpConstraint(g, Relation.GT, zero) for g in gt]
    rows += [LpConstraint(e, Relation.EQ, zero) for e in eq]
    result = lp_feasible(LpProblem(nvars, tuple(rows)))
    return result.witness if result.feasible else None
