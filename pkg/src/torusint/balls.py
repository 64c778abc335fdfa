"""Certified real and complex ball arithmetic on top of mpmath.

A ball is (center, radius); every operation widens the radius so that the
true value of the expression always lies inside the result.  Centers are
computed with 32 guard bits beyond the ball's nominal precision, and each
operation adds a rounding slack of 2^(2-prec-32)*(|center|+1), so radii
stay well below 2^-prec for desk-scale expression depths.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp

from .errors import InvalidInputError, PrecisionExhaustedError

GUARD = 32


def _ctx(prec: int):
    return mp.workprec(prec + GUARD)


def _slack(value_mag, prec: int):
    return mp.ldexp(value_mag + 1, 2 - prec - GUARD)


@dataclass(frozen=True)
class RealBall:
    mid: mp.mpf
    rad: mp.mpf
    prec: int = 128

    @classmethod
    def exact(cls, x, prec: int = 128) -> "RealBall":
        with _ctx(prec):
            m = mp.mpf(x) if not isinstance(x, tuple) else mp.mpf(x[0]) / x[1]
            return cls(m, _slack(abs(m), prec) if not _is_dyadic(x) else mp.mpf(0), prec)

    @classmethod
    def from_fraction(cls, fr, prec: int = 128) -> "RealBall":
        with _ctx(prec):
            m = mp.mpf(fr.numerator) / fr.denominator
            return cls(m, _slack(abs(m), prec), prec)

    @property
    def upper(self) -> mp.mpf:
        with _ctx(self.prec):
            return self.mid + self.rad + _slack(abs(self.mid), self.prec)

    @property
    def lower(self) -> mp.mpf:
        with _ctx(self.prec):
            return self.mid - self.rad - _slack(abs(self.mid), self.prec)

    @property
    def width(self) -> mp.mpf:
        return 2 * self.rad

    def _p(self, other) -> int:
        return min(self.prec, other.prec) if isinstance(other, RealBall) else self.prec

    def __add__(self, other):
        p = self._p(other)
        o = other if isinstance(other, RealBall) else RealBall.exact(other, p)
        with _ctx(p):
            m = self.mid + o.mid
            return RealBall(m, self.rad + o.rad + _slack(abs(m), p), p)

    __radd__ = __add__

    def __neg__(self):
        # negation must round at the ball's own precision, not the caller's
        # ambient mpmath context (which may be coarser and would shave bits
        # off the center without growing the radius)
        with _ctx(self.prec):
            return RealBall(-self.mid, self.rad, self.prec)

    def __sub__(self, other):
        o = other if isinstance(other, RealBall) else RealBall.exact(other, self.prec)
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        p = self._p(other)
        o = other if isinstance(other, RealBall) else RealBall.exact(other, p)
        with _ctx(p):
            m = self.mid * o.mid
            r = (
                abs(self.mid) * o.rad
                + abs(o.mid) * self.rad
                + self.rad * o.rad
                + _slack(abs(m), p)
            )
            return RealBall(m, r, p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = other if isinstance(other, RealBall) else RealBall.exact(other, self.prec)
        return self * o.reciprocal()

    def reciprocal(self) -> "RealBall":
        p = self.prec
        with _ctx(p):
            lo = abs(self.mid) - self.rad
            if lo <= 0:
                raise InvalidInputError("reciprocal of a ball containing zero")
            m = 1 / self.mid
            r = self.rad / (abs(self.mid) * lo) + _slack(abs(m), p)
            return RealBall(m, r, p)

    def abs_upper(self) -> mp.mpf:
        with _ctx(self.prec):
            return abs(self.mid) + self.rad + _slack(abs(self.mid), self.prec)

    def abs_lower(self) -> mp.mpf:
        with _ctx(self.prec):
            lo = abs(self.mid) - self.rad - _slack(abs(self.mid), self.prec)
            return lo if lo > 0 else mp.mpf(0)

    def contains(self, x) -> bool:
        with _ctx(self.prec):
            return abs(self.mid - mp.mpf(x)) <= self.rad + _slack(abs(self.mid), self.prec)

    def contains_zero(self) -> bool:
        with _ctx(self.prec):
            return abs(self.mid) <= self.rad + _slack(abs(self.mid), self.prec)

    def log(self) -> "RealBall":
        """log of a strictly positive ball."""
        p = self.prec
        with _ctx(p):
            lo = self.lower
            if lo <= 0:
                raise InvalidInputError("log of a ball touching (-inf, 0]")
            m = mp.log(self.mid)
            r = self.rad / lo + _slack(abs(m), p)
            return RealBall(m, r, p)

    def unique_integer(self):
        """The single integer contained in the ball, or None."""
        with _ctx(self.prec):
            k = int(mp.nint(self.mid))
            if abs(self.mid - k) + self.rad < mp.mpf("0.5"):
                return k
            # ball may straddle: check it contains exactly one integer anyway
            lo, hi = self.lower, self.upper
            ints = range(int(mp.ceil(lo)), int(mp.floor(hi)) + 1)
            ints = [i for i in ints]
            return ints[0] if len(ints) == 1 else None

    def definitely_lt(self, other) -> bool:
        o = other if isinstance(other, RealBall) else RealBall.exact(other, self.prec)
        return self.upper < o.lower

    def definitely_gt(self, other) -> bool:
        o = other if isinstance(other, RealBall) else RealBall.exact(other, self.prec)
        return self.lower > o.upper

    def __float__(self):
        return float(self.mid)

    def __repr__(self):
        return f"RealBall({mp.nstr(self.mid, 17)} +/- {mp.nstr(self.rad, 3)})"


def _is_dyadic(x) -> bool:
    return isinstance(x, int)


def real_zero(prec: int = 128) -> RealBall:
    return RealBall(mp.mpf(0), mp.mpf(0), prec)


@dataclass(frozen=True)
class ComplexBall:
    mid: mp.mpc
    rad: mp.mpf
    prec: int = 128

    @classmethod
    def exact(cls, z, prec: int = 128) -> "ComplexBall":
        with _ctx(prec):
            m = mp.mpc(z)
            return cls(m, _slack(abs(m), prec), prec)

    @classmethod
    def from_int(cls, k: int, prec: int = 128) -> "ComplexBall":
        return cls(mp.mpc(k), mp.mpf(0), prec)

    def _p(self, other) -> int:
        return min(self.prec, other.prec) if isinstance(other, ComplexBall) else self.prec

    def _coerce(self, other, p):
        if isinstance(other, ComplexBall):
            return other
        if isinstance(other, RealBall):
            return ComplexBall(mp.mpc(other.mid), other.rad, other.prec)
        if isinstance(other, int):
            return ComplexBall.from_int(other, p)
        return ComplexBall.exact(other, p)

    def __add__(self, other):
        p = self._p(other)
        o = self._coerce(other, p)
        with _ctx(p):
            m = self.mid + o.mid
            return ComplexBall(m, self.rad + o.rad + _slack(abs(m), p), p)

    __radd__ = __add__

    def __neg__(self):
        with _ctx(self.prec):
            return ComplexBall(-self.mid, self.rad, self.prec)

    def __sub__(self, other):
        p = self._p(other)
        return self + (-self._coerce(other, p))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        p = self._p(other)
        o = self._coerce(other, p)
        with _ctx(p):
            m = self.mid * o.mid
            r = (
                abs(self.mid) * o.rad
                + abs(o.mid) * self.rad
                + self.rad * o.rad
                + _slack(abs(m), p)
            )
            return ComplexBall(m, r, p)

    __rmul__ = __mul__

    def reciprocal(self) -> "ComplexBall":
        p = self.prec
        with _ctx(p):
            lo = abs(self.mid) - self.rad
            if lo <= 0:
                raise InvalidInputError("reciprocal of a ball containing zero")
            m = 1 / self.mid
            r = self.rad / (abs(self.mid) * lo) + _slack(abs(m), p)
            return ComplexBall(m, r, p)

    def __truediv__(self, other):
        p = self._p(other)
        return self * self._coerce(other, p).reciprocal()

    def __rtruediv__(self, other):
        p = self._p(other)
        return self._coerce(other, p) * self.reciprocal()

    def __pow__(self, k: int) -> "ComplexBall":
        if k < 0:
            return (self ** (-k)).reciprocal()
        result = ComplexBall.from_int(1, self.prec)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "ComplexBall":
        with _ctx(self.prec):
            return ComplexBall(mp.conj(self.mid), self.rad, self.prec)

    # -- predicates ------------------------------------------------------
    def contains_zero(self) -> bool:
        with _ctx(self.prec):
            return abs(self.mid) <= self.rad + _slack(abs(self.mid), self.prec)

    def contains(self, z) -> bool:
        with _ctx(self.prec):
            return abs(self.mid - mp.mpc(z)) <= self.rad + _slack(abs(self.mid), self.prec)

    def disjoint(self, other: "ComplexBall") -> bool:
        p = min(self.prec, other.prec)
        with _ctx(p):
            return abs(self.mid - other.mid) > self.rad + other.rad + _slack(abs(self.mid), p)

    def overlaps(self, other: "ComplexBall") -> bool:
        return not self.disjoint(other)

    # -- magnitude / argument -------------------------------------------
    def abs_ball(self) -> RealBall:
        with _ctx(self.prec):
            return RealBall(abs(self.mid), self.rad + _slack(abs(self.mid), self.prec), self.prec)

    def abs_upper(self) -> mp.mpf:
        with _ctx(self.prec):
            return abs(self.mid) + self.rad + _slack(abs(self.mid), self.prec)

    def abs_lower(self) -> mp.mpf:
        with _ctx(self.prec):
            lo = abs(self.mid) - self.rad - _slack(abs(self.mid), self.prec)
            return lo if lo > 0 else mp.mpf(0)

    def log_abs(self) -> RealBall:
        """Certified log|z|; requires the ball to exclude zero."""
        p = self.prec
        with _ctx(p):
            lo = self.abs_lower()
            if lo <= 0:
                raise InvalidInputError("log|.| of a ball containing zero")
            m = mp.log(abs(self.mid))
            r = self.rad / lo + _slack(abs(m), p)
            return RealBall(m, r, p)

    def arg_ball(self) -> RealBall:
        """Argument in (-pi, pi]; caller handles branch normalization.

        The radius bound rad/|z|_lower dominates the opening half-angle of
        the cone spanned by the ball as seen from the origin.
        """
        p = self.prec
        with _ctx(p):
            lo = self.abs_lower()
            if lo <= 0 or self.rad >= lo:
                raise InvalidInputError("argument of a ball containing zero")
            m = mp.arg(self.mid)
            r = mp.asin(self.rad / lo) + _slack(abs(m), p)
            return RealBall(m, r, p)

    def real_ball(self) -> RealBall:
        return RealBall(self.mid.real, self.rad, self.prec)

    def imag_ball(self) -> RealBall:
        return RealBall(self.mid.imag, self.rad, self.prec)

    def __complex__(self):
        return complex(self.mid)

    def __repr__(self):
        return f"ComplexBall({mp.nstr(self.mid, 17)} +/- {mp.nstr(self.rad, 3)})"


def eval_poly_ball(coeffs, z):
    """Horner evaluation of integer coefficients at a ComplexBall."""
    acc = ComplexBall.from_int(0, z.prec)
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc
