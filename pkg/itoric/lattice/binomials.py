"""toric ideal binomials from an integer basis of the lattice of relations"""
import logging
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from itoric.errors import ModeMismatchError
from itoric.geometry.config import PointConfiguration
from itoric.lattice.integer import as_int_list, integer_kernel
from itoric.settings import ScalarMode

logger = logging.getLogger(name=__name__)


@dataclass(frozen=True)
class LatticeBinomial:
    """y^plus - y^minus with disjoint supports and A.plus == A.minus"""
    plus: Tuple[int, ...]
    minus: Tuple[int, ...]

    @classmethod
    def from_relation(cls, w: Sequence[int]) -> "LatticeBinomial":
        return cls(tuple(max(a, 0) for a in w), tuple(max(-a, 0) for a in w))

    @property
    def exponent(self) -> Tuple[int, ...]:
        return tuple(a - b for a, b in zip(self.plus, self.minus))

    @staticmethod
    def _monomial(exponents: Sequence[int]) -> str:
        terms = []
        for i, e in enumerate(exponents):
            if e == 1:
                terms.append(f'x{i}')
            elif e > 1:
                terms.append(f'x{i}^{e}')
        return '*'.join(terms) if terms else '1'

    def __str__(self) -> str:
        return f'{self._monomial(self.plus)} - {self._monomial(self.minus)}'

    def evaluate(self, y: Sequence[float]) -> Tuple[float, float]:
        """both monomials at y, in log space to stay finite"""
        log_plus = sum(e * math.log(v) for e, v in zip(self.plus, y) if e)
        log_minus = sum(e * math.log(v) for e, v in zip(self.minus, y) if e)
        return math.exp(log_plus), math.exp(log_minus)


def toric_lattice_binomials(p: PointConfiguration) -> List[LatticeBinomial]:
    """
    one binomial per vector of an integer basis of ker(A); they generate the
    toric ideal up to saturation, not necessarily as an ideal
    """
    if p.mode != ScalarMode.EXACT:
        raise ModeMismatchError('toric binomials need exact integer points')
    columns = [as_int_list(a) for a in p.points]
    rows = [[col[k] for col in columns] for k in range(p.dim)]
    kernel = integer_kernel(rows, len(p))
    out = [LatticeBinomial.from_relation(as_int_list(w)) for w in kernel]
    logger.debug(f'{len(out)} binomials for {len(p)} points')
    return out
