import json

import pytest

from torusint.balls import ComplexBall
from torusint.curve import (
    check_hypothesis,
    curve_from_coeffs,
    exponent_matrix,
    load_curve,
)
from torusint.errors import InvalidInputError
from torusint.heights import AlgebraicNumber
from torusint.polys import IntPolynomial

DEMO = "scripts/curves/demo.json"


def _demo():
    # (t, 1 - t, 1 + t)
    return curve_from_coeffs([((0, 1), (1,)), ((1, -1), (1,)), ((1, 1), (1,))])


def test_load_curve_file():
    c = load_curve(DEMO)
    assert c.n == 3
    assert c.content_hash() == _demo().content_hash()


def test_load_curve_text():
    text = json.dumps({
        "name": "pair",
        "n": 2,
        "coords": [
            {"num": [0, 1], "den": [1]},
            {"num": [1, 1], "den": [1]},
        ],
    })
    c = load_curve(text)
    assert c.n == 2
    assert c.name == "pair"


def test_zero_coordinate_rejected():
    with pytest.raises(InvalidInputError):
        curve_from_coeffs([((0, 1), (1,)), ((0,), (1,))])


def test_hypothesis_rejects_dependent_coordinates():
    # (t, t^2, 1+t): x2 = x1^2, a multiplicative relation holding identically
    c = curve_from_coeffs([((0, 1), (1,)), ((0, 0, 1), (1,)), ((1, 1), (1,))])
    witness = check_hypothesis(c)
    assert witness is not None
    # the witness relation is (2, -1, 0) up to sign
    assert tuple(abs(x) for x in witness) == (2, 1, 0)


def test_hypothesis_rejects_constant_coordinate():
    c = curve_from_coeffs([((5,), (1,)), ((0, 1), (1,)), ((1, 1), (1,))])
    witness = check_hypothesis(c)
    assert witness is not None
    assert witness[1] == 0 and witness[2] == 0 and witness[0] != 0


def test_hypothesis_accepts_demo():
    assert check_hypothesis(_demo()) is None


def test_evaluate_at_half():
    c = _demo()
    t = ComplexBall.exact(0.5, 128)
    balls, flagged = c.evaluate(t)
    assert not flagged
    vals = [complex(b) for b in balls]
    assert abs(vals[0] - 0.5) < 1e-20
    assert abs(vals[1] - 0.5) < 1e-20
    assert abs(vals[2] - 1.5) < 1e-20


def test_evaluate_flags_vanishing_coordinate():
    c = _demo()
    t = ComplexBall.exact(1, 128)  # 1 - t = 0 there
    _, flagged = c.evaluate(t)
    assert flagged


def test_evaluate_at_algebraic_parameter():
    c = _demo()
    zeta = AlgebraicNumber(IntPolynomial((1, -1, 1)), 0).approx(128)
    balls, flagged = c.evaluate(zeta)
    assert not flagged
    # t and 1-t lie on the unit circle there; |1+t| = sqrt(3)
    assert abs(float(balls[0].abs_ball()) - 1.0) < 1e-25
    assert abs(float(balls[1].abs_ball()) - 1.0) < 1e-25
    assert abs(float(balls[2].abs_ball()) - 3 ** 0.5) < 1e-15


def test_exponent_matrix_shape():
    m, factors = exponent_matrix(_demo())
    assert m.rows == 3
    # factors t, 1-t, 1+t plus the degree column
    assert m.cols == len(factors) + 1 == 4
