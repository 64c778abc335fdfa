"""Exact arithmetic in Q[t]/(m) for an irreducible integer modulus m.

Elements are residue classes with Fraction coefficients.  This is the
engine behind every "verified exactly" claim: power products of curve
coordinates are reduced modulo the parameter's minimal polynomial, so
equality with 1 is a finite rational computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import sympy as sp

from .errors import InvalidInputError
from .polys import IntPolynomial, factor_irreducible, resultant_x_minus


@dataclass(frozen=True)
class NFElement:
    """Residue g(t) mod m(t), coefficients lowest degree first."""

    modulus: IntPolynomial
    coeffs: tuple  # length deg(m), Fractions

    def __init__(self, modulus: IntPolynomial, coeffs):
        d = modulus.degree
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > d:
            cs = _reduce(cs, modulus)
        cs = cs + [Fraction(0)] * (d - len(cs))
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "coeffs", tuple(cs[:d]))

    # -- constructors ----------------------------------------------------
    @classmethod
    def from_poly(cls, modulus: IntPolynomial, p: IntPolynomial) -> "NFElement":
        return cls(modulus, [Fraction(c) for c in p.coeffs])

    @classmethod
    def one(cls, modulus: IntPolynomial) -> "NFElement":
        return cls(modulus, [Fraction(1)])

    @classmethod
    def zero(cls, modulus: IntPolynomial) -> "NFElement":
        return cls(modulus, [])

    @classmethod
    def generator(cls, modulus: IntPolynomial) -> "NFElement":
        return cls(modulus, [Fraction(0), Fraction(1)])

    # -- predicates ------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    @property
    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and all(c == 0 for c in self.coeffs[1:])

    def is_rational(self):
        if all(c == 0 for c in self.coeffs[1:]):
            return self.coeffs[0]
        return None

    # -- ring operations -------------------------------------------------
    def _check(self, other: "NFElement"):
        if self.modulus != other.modulus:
            raise InvalidInputError("mixed moduli in field arithmetic")

    def __add__(self, other: "NFElement") -> "NFElement":
        self._check(other)
        return NFElement(self.modulus, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "NFElement") -> "NFElement":
        self._check(other)
        return NFElement(self.modulus, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "NFElement":
        return NFElement(self.modulus, [-a for a in self.coeffs])

    def __mul__(self, other) -> "NFElement":
        if isinstance(other, (int, Fraction)):
            return NFElement(self.modulus, [a * other for a in self.coeffs])
        self._check(other)
        prod = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        return NFElement(self.modulus, _reduce(prod, self.modulus))

    __rmul__ = __mul__

    def inverse(self) -> "NFElement":
        if self.is_zero:
            raise InvalidInputError("inverse of zero in number field")
        # extended euclid over Q[t]
        r0 = [Fraction(c) for c in self.modulus.coeffs]
        r1 = list(self.coeffs)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while any(c != 0 for c in r1):
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r0 is the gcd, a nonzero constant since modulus is irreducible
        c = next(c for c in reversed(r0) if c != 0)
        return NFElement(self.modulus, [x / c for x in s0])

    def __truediv__(self, other: "NFElement") -> "NFElement":
        return self * other.inverse()

    def __pow__(self, k: int) -> "NFElement":
        if k < 0:
            return (self ** (-k)).inverse()
        result = NFElement.one(self.modulus)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- invariants ------------------------------------------------------
    def min_poly(self) -> IntPolynomial:
        """Minimal polynomial over Q via a resultant characteristic poly."""
        rat = self.is_rational()
        if rat is not None:
            return IntPolynomial((-rat.numerator, rat.denominator)).canonical()
        lcm = 1
        for c in self.coeffs:
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
        num = IntPolynomial(tuple(int(c * lcm) for c in self.coeffs))
        char = resultant_x_minus(self.modulus, num, lcm)
        facs = factor_irreducible(char)
        # char = minpoly^(d/e): all irreducible factors coincide
        assert len(facs) == 1, "characteristic polynomial split unexpectedly"
        return facs[0][0]

    def torsion_order(self, max_checked: int = None):
        """Order as a root of unity, or None.

        Candidate orders k have phi(k) dividing the field degree, hence
        k is bounded by roughly 2*(d+1)^2; the search is exhaustive.
        """
        if self.is_zero:
            return None
        d = self.modulus.degree
        for k in _torsion_candidates(d):
            if (self**k).is_one:
                return k
        return None

    def evaluate(self, tball):
        """Certified ball value at a ball enclosing the chosen root of m."""
        from .balls import ComplexBall

        acc = ComplexBall.from_int(0, tball.prec)
        for c in reversed(self.coeffs):
            acc = acc * tball + _frac_ball(c, tball.prec)
        return acc

    def __repr__(self):
        return f"NFElement({list(self.coeffs)} mod {self.modulus})"


def _frac_ball(c: Fraction, prec: int):
    from .balls import ComplexBall, RealBall

    rb = RealBall.from_fraction(c, prec)
    import mpmath as mp

    return ComplexBall(mp.mpc(rb.mid), rb.rad, prec)


@lru_cache(maxsize=256)
def _torsion_candidates(d: int):
    bound = 2 * (d + 1) * (d + 1) + 6
    return tuple(k for k in range(1, bound + 1) if d % sp.totient(k) == 0)


# -- dense Fraction polynomial helpers ----------------------------------
def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    for i, y in enumerate(b):
        a[i] -= y
    return a


def _poly_divmod(a, b):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    bb = list(b)
    while bb and bb[-1] == 0:
        bb.pop()
    q = [Fraction(0)] * max(len(a) - len(bb) + 1, 1)
    while len(a) >= len(bb) and a:
        f = a[-1] / bb[-1]
        k = len(a) - len(bb)
        q[k] = f
        for i, y in enumerate(bb):
            a[k + i] -= f * y
        while a and a[-1] == 0:
            a.pop()
    return q, a


def _reduce(coeffs, modulus: IntPolynomial):
    m = [Fraction(c) for c in modulus.coeffs]
    _, r = _poly_divmod(coeffs, m)
    return r
