"""Rationally parametrized curves in G_m^n and the monomial-independence check.

A curve is given by n coordinate functions x_i(t) = num_i(t)/den_i(t)
with integer coefficients.  The load-time hypothesis check decides, via
factor-exponent linear algebra including the place at infinity, whether
some nonzero integer vector m makes prod x_i^(m_i) identically constant.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .balls import ComplexBall
from .errors import InvalidInputError, PoleError
from .intmatrix import IntMatrix, kernel_basis
from .polys import IntPolynomial, exact_divide, factor_irreducible, poly_gcd

SPEC_FIELDS = ("n", "coords", "name")


@dataclass(frozen=True)
class Curve:
    n: int
    coords: tuple  # of (num, den) IntPolynomial pairs, coprime, canonicalized
    name: str = "curve"

    @property
    def numerators(self):
        return [c[0] for c in self.coords]

    @property
    def denominators(self):
        return [c[1] for c in self.coords]

    def content_hash(self) -> str:
        payload = json.dumps(
            {
                "n": self.n,
                "coords": [
                    {"num": list(num.coeffs), "den": list(den.coeffs)}
                    for num, den in self.coords
                ],
            },
            sort_keys=True,
        )
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def evaluate(self, t: ComplexBall):
        """Certified coordinate balls at a parameter ball.

        Raises PoleError if a denominator ball contains zero.  Returns
        (balls, flagged) where flagged lists indices of coordinates whose
        ball contains 0 (potential exit from the torus).
        """
        balls = []
        flagged = []
        for i, (num, den) in enumerate(self.coords):
            dval = _eval(den, t)
            if dval.contains_zero():
                raise PoleError(f"denominator of x_{i + 1} vanishes on the ball")
            val = _eval(num, t) / dval
            if val.contains_zero():
                flagged.append(i)
            balls.append(val)
        return balls, flagged


def _eval(p: IntPolynomial, t: ComplexBall) -> ComplexBall:
    acc = ComplexBall.from_int(0, t.prec)
    for c in reversed(p.coeffs):
        acc = acc * t + c
    return acc


def curve_from_coeffs(coord_coeffs, name="curve") -> Curve:
    """Build a Curve from [(num_coeffs, den_coeffs), ...]; dens default to 1."""
    coords = []
    for entry in coord_coeffs:
        if isinstance(entry, (list, tuple)) and len(entry) == 2 and \
                isinstance(entry[0], (list, tuple)):
            num, den = IntPolynomial(entry[0]), IntPolynomial(entry[1])
        else:
            num, den = IntPolynomial(entry), IntPolynomial((1,))
        if den.is_zero:
            raise InvalidInputError("zero denominator")
        if num.is_zero:
            raise InvalidInputError("coordinate identically zero leaves G_m")
        g = poly_gcd(num, den)
        if g.degree >= 1:
            num, den = exact_divide(num, g), exact_divide(den, g)
        coords.append((num, den))
    return Curve(len(coords), tuple(coords), name)


def load_curve(path_or_text) -> Curve:
    """Parse the JSON curve spec: {n, coords: [{num: [...], den: [...]}], name}."""
    text = path_or_text
    if "\n" not in str(path_or_text) and str(path_or_text).endswith(".json"):
        with open(path_or_text) as f:
            text = f.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"malformed curve spec: {e}") from e
    if "coords" not in data:
        raise InvalidInputError("curve spec missing field 'coords'")
    coords = []
    for i, entry in enumerate(data["coords"]):
        if "num" not in entry:
            raise InvalidInputError(f"coords[{i}] missing field 'num'")
        num = entry["num"]
        den = entry.get("den", [1])
        coords.append((num, den))
    curve = curve_from_coeffs(coords, name=data.get("name", "curve"))
    if "n" in data and data["n"] != curve.n:
        raise InvalidInputError(
            f"field 'n' = {data['n']} disagrees with {curve.n} coordinates"
        )
    return curve


def exponent_matrix(curve: Curve):
    """Rows: per coordinate, exponents over all distinct irreducible factors
    appearing in numerators/denominators, plus a degree column for the order
    of vanishing at infinity.  Row-independence over Q is equivalent to the
    no-constant-monomial hypothesis."""
    factors = []  # distinct canonical irreducible polys, discovery order
    index = {}

    def factor_exponents(p: IntPolynomial):
        out = {}
        for f, m in factor_irreducible(p):
            if f.coeffs not in index:
                index[f.coeffs] = len(factors)
                factors.append(f)
            out[index[f.coeffs]] = m
        return out

    rows_raw = []
    for num, den in curve.coords:
        e = {}
        for k, m in factor_exponents(num).items():
            e[k] = e.get(k, 0) + m
        for k, m in factor_exponents(den).items():
            e[k] = e.get(k, 0) - m
        deg = num.degree - den.degree  # minus the order of vanishing at infinity
        rows_raw.append((e, deg))
    rows = []
    for e, deg in rows_raw:
        rows.append([e.get(k, 0) for k in range(len(factors))] + [deg])
    return IntMatrix(rows), factors


def check_hypothesis(curve: Curve):
    """None if no nonzero monomial in the x_i is identically constant;
    otherwise a primitive integer witness vector m."""
    mat, _ = exponent_matrix(curve)
    if mat.rank() == curve.n:
        return None
    # kernel of the transpose: integer combos of rows summing to zero
    witnesses = kernel_basis(mat.transpose())
    return tuple(witnesses[0])


def monomial_is_constant(curve: Curve, m) -> bool:
    """Symbolic check that prod x_i^(m_i) is a constant rational function."""
    num = IntPolynomial((1,))
    den = IntPolynomial((1,))
    for (nu, de), e in zip(curve.coords, m):
        if e > 0:
            num = num * nu**e
            den = den * de**e
        elif e < 0:
            num = num * de ** (-e)
            den = den * nu ** (-e)
    g = poly_gcd(num, den)
    return exact_divide(num, g).degree == 0 and exact_divide(den, g).degree == 0
