from fractions import Fraction

import pytest

from torusint.chain import counting_epsilon, degree_chain, height_exponent
from torusint.errors import InvalidInputError


def test_exponent_example():
    assert height_exponent(3, 1) == 20
    assert counting_epsilon(3, 1) == Fraction(1, 40)


def test_exponent_second_example():
    assert height_exponent(4, 2) == 32
    assert counting_epsilon(4, 2) == Fraction(1, 64)


def test_chain_identity_exhaustive():
    for n in range(3, 11):
        for r in range(1, n - 1):
            rep = degree_chain(n, r)
            assert rep.e_height * rep.epsilon == Fraction(1, 2)


def test_chain_report_fields():
    rep = degree_chain(3, 1, d=2)
    assert rep.n == 3 and rep.r == 1 and rep.d == 2
    assert rep.e_height == 20
    assert rep.epsilon == Fraction(1, 40)
    assert any("1/2" in line for line in rep.lines())


def test_chain_rejects_bad_rank():
    with pytest.raises(InvalidInputError):
        degree_chain(3, 2)
    with pytest.raises(InvalidInputError):
        degree_chain(3, 0)
    with pytest.raises(InvalidInputError):
        degree_chain(3, 1, d=0)
