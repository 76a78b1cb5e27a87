"""the small fans in the plane and on the line used throughout the gallery"""
from typing import Optional

from itoric.geometry.fan import Fan, fan_from_rays
from itoric.settings import ScalarMode


def p1_fan(mode: Optional[ScalarMode] = None) -> Fan:
    """the complete fan on the line: R>=, R<= and the origin"""
    return fan_from_rays([[1], [-1]], [[0], [1]], mode)


def sigma1(mode: Optional[ScalarMode] = None) -> Fan:
    """cone{e1, e2} and cone{e1, 2e1 - e2}; not complete"""
    return fan_from_rays([[1, 0], [0, 1], [2, -1]], [[0, 1], [0, 2]], mode)


def sigma2(mode: Optional[ScalarMode] = None) -> Fan:
    """the fan of the projective plane: rays e1, e2, -e1 - e2"""
    return fan_from_rays([[1, 0], [0, 1], [-1, -1]], [[0, 1], [1, 2], [0, 2]], mode)


def sigma3(mode: Optional[ScalarMode] = None) -> Fan:
    """the four quadrants"""
    return fan_from_rays(
        [[1, 0], [0, 1], [-1, 0], [0, -1]],
        [[0, 1], [1, 2], [2, 3], [3, 0]],
        mode)


def hirzebruch(r: int, mode: Optional[ScalarMode] = None) -> Fan:
    """rays e1, e2, -e1 + r e2, -e2"""
    return fan_from_rays(
        [[1, 0], [0, 1], [-1, r], [0, -1]],
        [[0, 1], [0, 3], [2, 3], [2, 1]],
        mode)
