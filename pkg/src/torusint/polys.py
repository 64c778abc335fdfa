"""Integer polynomials: exact arithmetic, gcd, factorization.

Coefficients are stored lowest degree first.  Heavy lifting (gcd over Q
cleared to Z, irreducible factorization, resultants, cyclotomics) is
delegated to sympy's ZZ polynomial domain; this module owns the canonical
form (content 1, positive leading coefficient) used as a dictionary key
everywhere else.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import sympy as sp

from .errors import InvalidInputError

_X = sp.symbols("_t")


def _strip(coeffs) -> tuple:
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(int(c) for c in cs)


@dataclass(frozen=True)
class IntPolynomial:
    """Univariate polynomial over Z, coefficients lowest degree first."""

    coeffs: tuple

    def __init__(self, coeffs):
        object.__setattr__(self, "coeffs", _strip(coeffs))

    # -- basic structure -------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        if self.is_zero:
            raise InvalidInputError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def content(self) -> int:
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def canonical(self) -> "IntPolynomial":
        """Content 1, positive leading coefficient; zero stays zero."""
        if self.is_zero:
            return self
        c = self.content()
        if self.coeffs[-1] < 0:
            c = -c
        return IntPolynomial(tuple(a // c for a in self.coeffs))

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(tuple(other * c for c in self.coeffs))
        if self.is_zero or other.is_zero:
            return ZERO
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPolynomial":
        if k < 0:
            raise InvalidInputError("negative polynomial power")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Horner evaluation; works for int, Fraction, complex, balls."""
        if self.is_zero:
            return 0 * x
        acc = 0 * x + self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def eval_fraction(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift_compose_neg(self) -> "IntPolynomial":
        """p(-t)."""
        return IntPolynomial(
            tuple(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))
        )

    # -- sympy bridge ----------------------------------------------------
    def to_sympy(self):
        return sp.Poly(list(reversed(self.coeffs)) or [0], _X, domain=sp.ZZ)

    @classmethod
    def from_sympy(cls, poly) -> "IntPolynomial":
        p = sp.Poly(poly, _X) if not isinstance(poly, sp.Poly) else poly
        return cls(tuple(reversed([int(c) for c in p.all_coeffs()])))

    def __repr__(self):
        if self.is_zero:
            return "IntPolynomial(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*t^{i}")
        return "IntPolynomial(" + " + ".join(terms) + ")"


ZERO = IntPolynomial(())
ONE = IntPolynomial((1,))
T = IntPolynomial((0, 1))


def from_coeffs(coeffs) -> IntPolynomial:
    return IntPolynomial(tuple(int(c) for c in coeffs))


def from_fractions(coeffs) -> IntPolynomial:
    """Clear denominators of a Fraction coefficient list, then canonicalize."""
    fracs = [Fraction(c) for c in coeffs]
    lcm = 1
    for f in fracs:
        lcm = lcm * f.denominator // math.gcd(lcm, f.denominator)
    return IntPolynomial(tuple(int(f * lcm) for f in fracs)).canonical()


def poly_gcd(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """Gcd over Q, cleared to integer coefficients, canonical form."""
    if p.is_zero and q.is_zero:
        raise InvalidInputError("gcd of two zero polynomials")
    if p.is_zero:
        return q.canonical()
    if q.is_zero:
        return p.canonical()
    g = sp.gcd(p.to_sympy(), q.to_sympy())
    return IntPolynomial.from_sympy(g).canonical()


def exact_divide(p: IntPolynomial, d: IntPolynomial) -> IntPolynomial:
    """p / d when the division is exact over Q; raises otherwise."""
    quo, rem = sp.div(p.to_sympy(), d.to_sympy(), domain=sp.QQ)
    if not rem.is_zero:
        raise InvalidInputError("division is not exact")
    return from_fractions([Fraction(str(c)) for c in reversed(quo.all_coeffs())])


@lru_cache(maxsize=4096)
def _sqf_cached(p: IntPolynomial):
    _, pairs = p.to_sympy().sqf_list()
    return tuple((IntPolynomial.from_sympy(f).canonical(), m) for f, m in pairs)


def squarefree_decomposition(p: IntPolynomial):
    """[(factor, multiplicity)] with each factor squarefree and canonical."""
    if p.is_zero:
        raise InvalidInputError("zero polynomial")
    return list(_sqf_cached(p))


def factor_irreducible(p: IntPolynomial):
    """[(irreducible canonical factor, multiplicity)] over Q; constants dropped."""
    if p.is_zero:
        raise InvalidInputError("zero polynomial")
    _, pairs = p.to_sympy().factor_list()
    out = []
    for f, m in pairs:
        fp = IntPolynomial.from_sympy(f).canonical()
        if fp.degree >= 1:
            out.append((fp, int(m)))
    return out


def is_irreducible(p: IntPolynomial) -> bool:
    if p.degree < 1:
        return False
    facs = factor_irreducible(p)
    return len(facs) == 1 and facs[0][1] == 1


@lru_cache(maxsize=4096)
def cyclotomic(m: int) -> IntPolynomial:
    """The m-th cyclotomic polynomial, canonical form."""
    if m < 1:
        raise InvalidInputError("cyclotomic index must be positive")
    return IntPolynomial.from_sympy(
        sp.Poly(sp.cyclotomic_poly(m, _X), _X)
    ).canonical()


def resultant_x_minus(m: IntPolynomial, num: IntPolynomial, scale: int):
    """Res_t(m(t), scale*x - num(t)) as an IntPolynomial in x.

    Its roots are num(theta)/scale over the roots theta of m; used to get
    characteristic polynomials of algebraic numbers given as residues.
    """
    t, x = sp.symbols("_rt _rx")
    mt = sum(c * t**i for i, c in enumerate(m.coeffs))
    gt = sum(c * t**i for i, c in enumerate(num.coeffs))
    res = sp.resultant(sp.Poly(mt, t), sp.Poly(scale * x - gt, t), t)
    p = sp.Poly(res, x)
    return IntPolynomial(tuple(reversed([int(c) for c in p.all_coeffs()])))
