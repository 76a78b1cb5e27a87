"""
scalar codec for the json documents: "p/q" strings in exact mode, plain json
numbers in float mode
"""
from fractions import Fraction
from typing import Annotated, List, Optional, Sequence, Union

from pydantic import AfterValidator

from itoric.numeric.scalar import Number, Vector, as_vector
from itoric.settings import ScalarMode


def _check_literal(x):
    if isinstance(x, str):
        try:
            Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f'not a number: {x!r}')
    return x


# what a document may hold where a scalar is expected
ScalarLiteral = Annotated[Union[int, float, str], AfterValidator(_check_literal)]
VectorLiteral = List[ScalarLiteral]


def encode_scalar(x: Number) -> Union[str, float]:
    if isinstance(x, Fraction):
        return str(x)
    return float(x)


def encode_vector(v: Vector) -> List[Union[str, float]]:
    return [encode_scalar(x) for x in v]


def encode_vectors(vs: Sequence[Vector]) -> List[List[Union[str, float]]]:
    return [encode_vector(v) for v in vs]


def decode_vector(raw: Sequence[ScalarLiteral], mode: Optional[ScalarMode] = None) -> Vector:
    return as_vector(list(raw), mode)


def decode_vectors(raw: Sequence[Sequence[ScalarLiteral]], mode: Optional[ScalarMode] = None) -> List[Vector]:
    return [decode_vector(r, mode) for r in raw]


def parse_vector_option(text: str, mode: Optional[ScalarMode] = None) -> Vector:
    """a comma separated vector given on the command line, e.g. "1,-1/2,0" """
    parts = [t.strip() for t in text.split(',') if t.strip()]
    return as_vector(parts, mode)
