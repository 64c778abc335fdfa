import math
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from torusint.heights import (
    AlgebraicNumber,
    TorusPoint,
    bm_floor,
    grassmann_height,
    point_height,
    torsion_order,
    weil_height,
)
from torusint.intmatrix import IntMatrix
from torusint.polys import IntPolynomial


def test_height_of_two():
    h = weil_height(AlgebraicNumber.from_rational(2))
    assert abs(float(h) - math.log(2)) < 1e-12


def test_height_of_half_log_three_root():
    # x^2 - 3x + 3: Mahler measure 3, degree 2 -> height (1/2) log 3
    alpha = AlgebraicNumber(IntPolynomial((3, -3, 1)), 0)
    h = weil_height(alpha)
    assert abs(float(h) - 0.5 * math.log(3)) < 1e-10


def test_height_of_root_of_unity_is_zero():
    zeta = AlgebraicNumber(IntPolynomial((1, -1, 1)), 0)
    assert abs(float(weil_height(zeta))) < 1e-20


def test_height_of_rational():
    h = weil_height(AlgebraicNumber.from_rational(Fraction(2, 3)))
    assert abs(float(h) - math.log(3)) < 1e-12


def test_torsion_orders():
    zeta6 = AlgebraicNumber(IntPolynomial((1, -1, 1)), 0)
    assert torsion_order(zeta6) == 6
    two = AlgebraicNumber.from_rational(2)
    assert torsion_order(two) is None
    assert torsion_order(AlgebraicNumber.from_rational(-1)) == 2
    assert torsion_order(AlgebraicNumber.from_rational(1)) == 1


def test_bm_floor_values():
    assert abs(bm_floor(1) - 0.0107337) < 1e-6
    assert abs(bm_floor(2) - 0.0019349) < 1e-6


def test_bm_floor_monotone_decreasing():
    vals = [bm_floor(d) for d in range(1, 30)]
    assert all(a > b > 0 for a, b in zip(vals, vals[1:]))


def test_bm_floor_bounds_nontorsion_heights():
    # a few non-torsion algebraic numbers of small degree
    cases = [
        AlgebraicNumber.from_rational(2),
        AlgebraicNumber(IntPolynomial((-2, 0, 1)), 0),   # sqrt(2)
        AlgebraicNumber(IntPolynomial((3, -3, 1)), 0),
        AlgebraicNumber(IntPolynomial((-1, -1, 0, 1)), 0),
    ]
    for alpha in cases:
        assert torsion_order(alpha) is None
        assert float(weil_height(alpha)) > bm_floor(alpha.degree)


def test_grassmann_height_single_row():
    g = grassmann_height(IntMatrix(((3, 4),)))
    assert g.minor_gcd == 1
    assert g.gram_det == 25
    assert abs(float(g) - 5.0) < 1e-12
    # exact bound D^2 ((N+1) max^2)^(N-M): here 1 * (2+1)*16 = 48 >= 25
    assert g.gram_det <= 48


def test_grassmann_height_identity():
    g = grassmann_height(IntMatrix.identity(3))
    assert abs(float(g) - 1.0) < 1e-12


def test_grassmann_invariant_under_row_scaling_gcd():
    a = IntMatrix(((2, 0, 2), (0, 4, 0)))
    b = IntMatrix(((1, 0, 1), (0, 1, 0)))
    # heights agree because the minor gcd divides out the content
    assert abs(float(grassmann_height(a)) - float(grassmann_height(b))) < 1e-10


def test_point_height_rationals():
    p = TorusPoint.from_rationals((2, 3, Fraction(1, 5)))
    h = point_height(p)
    # max coordinate height: h(2)=log2, h(3)=log3, h(1/5)=log5
    assert abs(float(h) - math.log(5)) < 1e-10


def test_point_coordinates_and_conjugates():
    from torusint.numfield import NFElement

    mod = IntPolynomial((1, -1, 1))
    g = NFElement.generator(mod)
    one = NFElement.one(mod)
    p = TorusPoint(mod, (g, one - g, one + g))
    assert p.n == 3
    assert p.field_degree == 2
    conj = p.conjugate_coordinate_balls(precision=96)
    assert len(conj) == 2
    for coords in conj:
        assert len(coords) == 3


small_nonzero = st.integers(min_value=2, max_value=50)


@given(small_nonzero, st.integers(min_value=-4, max_value=4).filter(lambda k: k != 0))
@settings(max_examples=40, deadline=None)
def test_height_power_scaling(q, k):
    alpha = AlgebraicNumber.from_rational(q)
    hk = weil_height(AlgebraicNumber.from_rational(Fraction(q) ** k))
    h1 = weil_height(alpha)
    assert abs(float(hk) - abs(k) * float(h1)) < 1e-9


@given(st.fractions(min_value=Fraction(1, 50), max_value=50, max_denominator=50))
@settings(max_examples=40, deadline=None)
def test_height_of_inverse(q):
    h = weil_height(AlgebraicNumber.from_rational(q))
    hinv = weil_height(AlgebraicNumber.from_rational(1 / q))
    assert abs(float(h) - float(hinv)) < 1e-9
