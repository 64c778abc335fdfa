from fractions import Fraction

from torusint.numfield import NFElement
from torusint.polys import IntPolynomial


MOD6 = IntPolynomial((1, -1, 1))  # t^2 - t + 1, generator is a primitive 6th root


def test_generator_satisfies_modulus():
    g = NFElement.generator(MOD6)
    # g^2 = g - 1
    assert g * g == g - NFElement.one(MOD6)


def test_power_torsion():
    g = NFElement.generator(MOD6)
    assert (g ** 6).is_one
    assert not (g ** 2).is_one
    assert (g ** 3) == -NFElement.one(MOD6)


def test_torsion_order():
    g = NFElement.generator(MOD6)
    assert g.torsion_order() == 6
    assert (g * g).torsion_order() == 3
    assert NFElement.one(MOD6).torsion_order() == 1
    two = NFElement.one(MOD6) + NFElement.one(MOD6)
    assert two.torsion_order() is None


def test_inverse():
    g = NFElement.generator(MOD6)
    x = g + NFElement.one(MOD6)
    assert (x * x.inverse()).is_one


def test_min_poly_of_generator():
    g = NFElement.generator(MOD6)
    assert g.min_poly().canonical().coeffs == (1, -1, 1)


def test_min_poly_of_rational():
    mod = IntPolynomial((-2, 0, 1))  # t^2 - 2
    s = NFElement.generator(mod)
    # s^2 = 2 is rational with minimal polynomial t - 2
    sq = s * s
    assert sq.is_rational() == Fraction(2)
    assert sq.min_poly().canonical().coeffs == (-2, 1)


def test_sqrt2_arithmetic():
    mod = IntPolynomial((-2, 0, 1))
    s = NFElement.generator(mod)
    one = NFElement.one(mod)
    # (1+s)(1-s) = 1 - 2 = -1
    assert (one + s) * (one - s) == -one
    assert (one + s).torsion_order() is None


def test_evaluate_matches_root():
    from torusint.heights import AlgebraicNumber

    g = NFElement.generator(MOD6)
    tball = AlgebraicNumber(MOD6, 0).approx(128)
    v = (g * g).evaluate(tball)
    # g^2 is a primitive cube root of unity: |g^2| = 1
    assert abs(float(v.abs_ball()) - 1.0) < 1e-25
