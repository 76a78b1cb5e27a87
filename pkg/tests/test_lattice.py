from fractions import Fraction

import pytest

from itoric.errors import ModeMismatchError, NotInDualError
from itoric.geometry.cone import Cone
from itoric.geometry.config import PointConfiguration
from itoric.lattice.binomials import LatticeBinomial, toric_lattice_binomials
from itoric.lattice.integer import (
    IntegerLattice,
    int_vector,
    integer_kernel,
    lattice_of,
    saturate,
    xgcd,
)
from itoric.lattice.monoid import face_monoid_check, hilbert_basis, is_monoid_combination
from itoric.settings import ScalarMode

EXACT = ScalarMode.EXACT


def ints(vectors):
    return [[int(a) for a in v] for v in vectors]


def test_xgcd():
    x, y, g = xgcd(240, 46)
    assert g == 2
    assert 240 * x + 46 * y == 2


def test_lattice_membership_and_reduction():
    lattice = IntegerLattice(2, [[2, 0], [1, 3]])
    assert len(lattice) == 2
    assert [3, 3] in lattice
    assert [1, 0] not in lattice
    assert lattice.reduce([5, 3]) == lattice.reduce([3, 0])
    assert [1, 0] not in lattice_of([int_vector([2, 0])])


def test_saturation_recovers_primitive_vectors():
    lattice = saturate([[2, 0]], 2)
    assert [1, 0] in lattice
    assert [0, 1] not in lattice


def test_integer_kernel_is_saturated():
    assert ints(integer_kernel([[2, 3]], 2)) == [[3, -2]]
    kernel = integer_kernel([[1, 1, 1], [0, 1, 2]], 3)
    assert len(kernel) == 1
    assert ints(kernel)[0] in ([1, -2, 1], [-1, 2, -1])
    assert len(integer_kernel([], 2)) == 2


def test_hilbert_basis_of_sigma3(sigma3_cone):
    hb = hilbert_basis(sigma3_cone)
    assert ints(hb) == [[1, 0], [1, 1], [1, 2]]
    assert hb.lineality == ()
    assert hb.contains(int_vector([1, 1]))


def test_hilbert_basis_generates_the_monoid(sigma3_cone):
    hb = list(hilbert_basis(sigma3_cone))
    dual = sigma3_cone.dual()
    for a in range(0, 5):
        for b in range(0, 5):
            v = int_vector([a, b])
            if dual.contains(v):
                assert is_monoid_combination(v, hb)


def test_hilbert_basis_with_lineality():
    ray = Cone([[1, 0]], mode=EXACT)
    hb = hilbert_basis(ray)
    assert ints(hb) == [[0, -1], [0, 1], [1, 0]]
    assert ints(hb.lineality) == [[0, 1]]
    half_plane = Cone([[1, 0], [-1, 0], [0, 1]], mode=EXACT)
    assert ints(hilbert_basis(half_plane)) == [[0, 1]]


def test_hilbert_basis_of_the_positive_orthant():
    orthant = Cone([[1, 0, 0], [0, 1, 0], [0, 0, 1]], mode=EXACT)
    assert ints(hilbert_basis(orthant)) == [[0, 0, 1], [0, 1, 0], [1, 0, 0]]


def test_hilbert_basis_needs_exact_cones():
    with pytest.raises(ModeMismatchError):
        hilbert_basis(Cone([[1.0, 0.0]], mode=ScalarMode.FLOAT))


@pytest.mark.parametrize("m", [[1, 0], [1, 2], [2, 1]])
def test_face_monoid_identity(sigma3_cone, m):
    witness = face_monoid_check(sigma3_cone, m)
    assert witness.is_valid
    assert witness.error_message is None
    for d in witness.decompositions:
        assert d.multiple >= 0
        assert sigma3_cone.dual().contains(d.base)
    doc = witness.model_dump()
    assert doc['functional'] == [str(a) for a in m]


def test_face_monoid_preconditions(sigma3_cone):
    with pytest.raises(NotInDualError):
        face_monoid_check(sigma3_cone, [0, 1])
    with pytest.raises(ModeMismatchError):
        face_monoid_check(sigma3_cone, [Fraction(1, 2), 0])


def test_toric_binomials_of_the_quadric_cone():
    p = PointConfiguration.of([[1, 0], [1, 1], [1, 2]], EXACT)
    (binomial,) = toric_lattice_binomials(p)
    assert binomial.exponent in ((1, -2, 1), (-1, 2, -1))
    # the point (t1^a1 t2^a2)_a of the torus orbit lies on it
    y = [2.0, 6.0, 18.0]
    plus, minus = binomial.evaluate(y)
    assert plus == pytest.approx(minus)


def test_binomial_printing():
    b = LatticeBinomial.from_relation([3, -2])
    assert str(b) == "x0^3 - x1^2"
    assert b.exponent == (3, -2)
    assert str(LatticeBinomial.from_relation([1, 1, -1])) == "x0*x1 - x2"


def test_binomials_need_exact_points():
    p = PointConfiguration.of([[2.0], [3.0]], ScalarMode.FLOAT)
    with pytest.raises(ModeMismatchError):
        toric_lattice_binomials(p)
