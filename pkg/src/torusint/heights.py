"""Weil heights, torsion detection, and Grassmannian heights.

weil_height uses the Mahler measure form
    h(a) = (1/d) * (log|lead| + sum over roots of log+ |root|)
computed from certified root balls, returned as a real enclosure whose
width is driven below a configurable target by the precision ladder.

Torsion is decided exactly by comparing the minimal polynomial against
cyclotomic polynomials of matching degree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath as mp
import sympy as sp

from .balls import ComplexBall, RealBall, real_zero
from .errors import InvalidInputError, RankDeficiencyError
from .intmatrix import IntMatrix, gram_det, minors_gcd
from .numfield import NFElement
from .polys import IntPolynomial, cyclotomic, is_irreducible
from .precision import DEFAULT_CAP, ladder
from .roots import isolate_roots

DEFAULT_WIDTH = mp.mpf("1e-20")


@dataclass(frozen=True)
class AlgebraicNumber:
    """An algebraic number: irreducible minimal polynomial + one chosen root.

    The approximation is materialized lazily; constructing from a minimal
    polynomial alone picks the first root in the (Re, Im) sort order.
    """

    min_poly: IntPolynomial
    root_index: int = 0

    def __post_init__(self):
        if self.min_poly.degree < 1:
            raise InvalidInputError("minimal polynomial must be nonconstant")

    @classmethod
    def from_rational(cls, q) -> "AlgebraicNumber":
        q = Fraction(q)
        if q == 0:
            raise InvalidInputError("zero is not a point of the torus")
        return cls(IntPolynomial((-q.numerator, q.denominator)).canonical())

    @property
    def degree(self) -> int:
        return self.min_poly.degree

    def approx(self, precision: int = 128) -> ComplexBall:
        return isolate_roots(self.min_poly, precision)[self.root_index]

    def as_rational(self):
        if self.degree == 1:
            c0, c1 = self.min_poly.coeffs
            return Fraction(-c0, c1)
        return None


def torsion_order(alpha: AlgebraicNumber):
    """m if alpha is a primitive m-th root of unity, else None."""
    return _cyclotomic_index(alpha.min_poly)


@lru_cache(maxsize=64)
def _cyclotomic_table(d: int):
    """Map canonical coefficients -> m over all m with phi(m) = d."""
    table = {}
    bound = 2 * (d + 1) * (d + 1) + 6
    for m in range(1, bound + 1):
        if sp.totient(m) == d:
            table[cyclotomic(m).coeffs] = m
    return table


def _cyclotomic_index(p: IntPolynomial):
    if p.degree < 1:
        return None
    return _cyclotomic_table(p.degree).get(p.canonical().coeffs)


def bm_floor(d: int) -> float:
    """Height floor 1/(52 d^2 log 6d) for non-torsion algebraics of degree d."""
    if d < 1:
        raise InvalidInputError("degree must be at least 1")
    return 1.0 / (52.0 * d * d * math.log(6.0 * d))


def weil_height(
    alpha: AlgebraicNumber,
    width=DEFAULT_WIDTH,
    cap: int = DEFAULT_CAP,
) -> RealBall:
    """Certified enclosure of the absolute logarithmic Weil height."""
    p = alpha.min_poly.canonical()
    d = p.degree
    if _cyclotomic_index(p) is not None:
        return real_zero()
    rat = alpha.as_rational()
    if rat is not None:
        if rat == 0:
            raise InvalidInputError("height of zero is undefined here")
        with mp.workprec(160):
            v = mp.log(max(abs(rat.numerator), rat.denominator))
        return RealBall(v, mp.ldexp(abs(v) + 1, -150), 128)
    for prec in ladder(128, cap):
        balls = isolate_roots(p, prec // 2, cap)
        lo = mp.mpf(0)
        hi = mp.mpf(0)
        with mp.workprec(prec):
            for b in balls:
                au, al = b.abs_upper(), b.abs_lower()
                if au > 1:
                    hi += mp.log(au)
                if al > 1:
                    lo += mp.log(al)
            hi += mp.log(abs(p.leading))
            lo += mp.log(abs(p.leading))
            mid = (hi + lo) / (2 * d)
            rad = (hi - lo) / (2 * d) + mp.ldexp(abs(mid) + 1, 8 - prec)
        if 2 * rad < width:
            return RealBall(mid, rad, prec)
    raise AssertionError("unreachable")


def height_of_nf(elem: NFElement, width=DEFAULT_WIDTH) -> RealBall:
    """Weil height of a number-field residue via its minimal polynomial."""
    if elem.is_zero:
        raise InvalidInputError("height of zero")
    return weil_height(AlgebraicNumber(elem.min_poly()), width)


@dataclass(frozen=True)
class TorusPoint:
    """Point of G_m^n with all coordinates in one field Q[t]/(m).

    The designated embedding sends t to the root of m with index
    root_index (in (Re, Im) sort order of the isolated roots).
    """

    field_poly: IntPolynomial
    coords: tuple  # NFElements
    root_index: int = 0

    def __post_init__(self):
        for c in self.coords:
            if c.is_zero:
                raise InvalidInputError("torus point has a zero coordinate")

    @classmethod
    def from_rationals(cls, values) -> "TorusPoint":
        m = IntPolynomial((0, 1))  # t, field = Q with t -> 0
        coords = tuple(NFElement(m, [Fraction(v)]) for v in values)
        return cls(m, coords)

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def field_degree(self) -> int:
        return self.field_poly.degree

    def parameter_ball(self, precision: int = 128) -> ComplexBall:
        return isolate_roots(self.field_poly, precision)[self.root_index]

    def coordinate_balls(self, precision: int = 128):
        t = self.parameter_ball(precision)
        return [c.evaluate(t) for c in self.coords]

    def conjugate_coordinate_balls(self, precision: int = 128):
        """Coordinate balls at every embedding, indexed by root of m."""
        out = []
        for t in isolate_roots(self.field_poly, precision):
            out.append([c.evaluate(t) for c in self.coords])
        return out

    def coordinate_numbers(self):
        return [AlgebraicNumber(c.min_poly()) for c in self.coords]


def point_height(point: TorusPoint, width=DEFAULT_WIDTH) -> RealBall:
    """max over coordinates of the Weil height (certified upper envelope)."""
    best = None
    for c in point.coords:
        h = height_of_nf(c, width)
        if best is None or h.mid > best.mid:
            best = h
    return best if best is not None else real_zero()


@dataclass(frozen=True)
class GrassmannHeight:
    minor_gcd: int
    gram_det: int
    value: RealBall

    def __float__(self):
        return float(self.value)


def grassmann_height(a: IntMatrix, prec: int = 128) -> GrassmannHeight:
    """Height D^-1 sqrt|det(A A^t)| of the rational subspace A z = 0.

    Also asserts the coefficient estimate
        H <= (sqrt(N+1) * max|a_ij|)^(N-M)
    which holds exactly as gram <= D^2 * ((N+1) max^2)^(N-M).
    """
    if a.rows == 0 or a.rank() != a.rows:
        raise RankDeficiencyError("matrix does not have full row rank")
    d = minors_gcd(a)
    g = gram_det(a)
    if g < 0:  # gram determinant is a sum of squared minors, never negative
        raise AssertionError("negative gram determinant")
    nm = a.rows
    n_plus_1 = a.cols
    bound = d * d * ((n_plus_1) * a.max_abs() ** 2) ** nm
    if g > bound:
        raise AssertionError("Grassmannian height exceeds its coefficient bound")
    with mp.workprec(prec + 32):
        v = mp.sqrt(mp.mpf(g)) / d
        rad = mp.ldexp(abs(v) + 1, 4 - prec)
    return GrassmannHeight(d, g, RealBall(v, rad, prec))
