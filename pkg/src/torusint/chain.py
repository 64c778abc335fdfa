"""The degree-bound bookkeeping that closes the finiteness argument.

A point of degree d on the curve lying in codimension >= 2 subgroups
produces >= d conjugates in the region, all on rational subspaces of
height <= const * d^e_H with e_H = 2(3r+2)(n-r).  The counting theorem
bounds those by const * T^epsilon with epsilon = 1/(4(3r+2)(n-r)), and
the two exponents multiply to exactly 1/2: d <= const * d^(1/2), which
caps d.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInputError


def height_exponent(n: int, r: int) -> int:
    return 2 * (3 * r + 2) * (n - r)


def counting_epsilon(n: int, r: int) -> Fraction:
    return Fraction(1, 4 * (3 * r + 2) * (n - r))


@dataclass(frozen=True)
class ChainReport:
    n: int
    r: int
    d: int
    e_height: int
    epsilon: Fraction
    comparison_exponent: Fraction  # e_height * epsilon, always 1/2
    conclusion: str

    def lines(self):
        return [
            f"n={self.n} r={self.r} d={self.d}",
            f"height exponent e_H = 2(3r+2)(n-r) = {self.e_height}",
            f"counting exponent epsilon = 1/(4(3r+2)(n-r)) = {self.epsilon}",
            f"product e_H * epsilon = {self.comparison_exponent}",
            self.conclusion,
        ]


def degree_chain(n: int, r: int, d: int = 1) -> ChainReport:
    """Exact arithmetic of the chain  d << N(Z, c*d^e_H) << d^(e_H*eps).

    Valid for 1 <= r <= n-2; the product of the exponents is the
    identity 1/2 that makes the comparison 'd vs d^(1/2)' close."""
    if not isinstance(n, int) or not isinstance(r, int) or not isinstance(d, int):
        raise InvalidInputError("n, r, d must be integers")
    if d < 1:
        raise InvalidInputError("degree must be positive")
    if not 1 <= r <= n - 2:
        raise InvalidInputError("need 1 <= r <= n-2")
    e_h = height_exponent(n, r)
    eps = counting_epsilon(n, r)
    prod = e_h * eps
    if prod != Fraction(1, 2):
        raise AssertionError("exponent identity failed")  # algebraically impossible
    conclusion = (
        f"degree d satisfies d <= c * d^{prod}, so d <= c^2: "
        "bounded degree, hence finiteness by Northcott"
    )
    return ChainReport(
        n=n,
        r=r,
        d=d,
        e_height=e_h,
        epsilon=eps,
        comparison_exponent=prod,
        conclusion=conclusion,
    )
