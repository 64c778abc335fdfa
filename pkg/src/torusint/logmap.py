"""Principal-branch logarithm coordinates shared by search, decomposition
and counting: log(rho * e^(2 pi i theta)) = log rho + 2 pi i theta with
theta in [0, 1), followed by the identification of C^n with R^2n through
(Re y, Im y / 2 pi) per coordinate.
"""

from __future__ import annotations

import mpmath as mp

from .balls import ComplexBall, RealBall
from .errors import PrecisionExhaustedError
from .intmatrix import IntMatrix


def principal_theta(ball: ComplexBall):
    """arg(z) / 2 pi normalized to [0, 1) as a certified ball.

    Returns (theta_ball, clamped): when the argument ball straddles 0 the
    value is assigned to the lower boundary (theta ~ 0) and flagged, per
    the boundary convention; callers escalate precision before trusting a
    clamped value.
    """
    arg = ball.arg_ball()  # in (-pi, pi]
    with mp.workprec(ball.prec + 32):
        two_pi = 2 * mp.pi
        theta = RealBall(arg.mid / two_pi, arg.rad / two_pi + mp.ldexp(1, -ball.prec - 16), ball.prec)
        if theta.contains_zero() and theta.mid != 0:
            return RealBall(mp.mpf(0), theta.rad + abs(theta.mid), ball.prec), True
        if theta.mid < 0:
            return RealBall(theta.mid + 1, theta.rad, ball.prec), False
        return theta, False


def phi_coordinates(coord_balls):
    """The 2n real coordinates (log|x_1|, theta_1, ..., log|x_n|, theta_n).

    Returns (coords, any_clamped).
    """
    out = []
    clamped_any = False
    for b in coord_balls:
        theta, clamped = principal_theta(b)
        clamped_any = clamped_any or clamped
        out.append(b.log_abs())
        out.append(theta)
    return out, clamped_any


def relation_b_integer(vector, phi_coords):
    """The integer b with sum_i a_i * theta_i = b for a vector satisfying
    the multiplicative relation at the point; None if the ball does not
    pin down a unique integer."""
    acc = None
    for a, theta in zip(vector, phi_coords[1::2]):
        term = theta * a
        acc = term if acc is None else acc + term
    return acc.unique_integer()


def subspace_matrix(vectors, b_values, n: int) -> IntMatrix:
    """Integer matrix of the linear system cutting out the subspace that
    contains phi(Log P): for each relation vector a with integer b,
        a_1 z_1 + a_2 z_3 + ... + a_n z_(2n-1) = 0
        a_1 z_2 + a_2 z_4 + ... + a_n z_2n    = b z_(2n+1).
    Shape 2k x (2n+1)."""
    rows = []
    for a, b in zip(vectors, b_values):
        odd = [0] * (2 * n + 1)
        even = [0] * (2 * n + 1)
        for i, c in enumerate(a):
            odd[2 * i] = c
            even[2 * i + 1] = c
        even[2 * n] = -b
        rows.append(odd)
        rows.append(even)
    return IntMatrix(rows)


def subspace_residual(matrix: IntMatrix, phi_coords) -> mp.mpf:
    """Upper bound for max_k |row_k . (z, 1)| over the system rows."""
    worst = mp.mpf(0)
    for row in matrix.entries:
        acc = None
        for c, z in zip(row[:-1], phi_coords):
            if c == 0:
                continue
            term = z * c
            acc = term if acc is None else acc + term
        if acc is None:
            acc = RealBall(mp.mpf(0), mp.mpf(0), 128)
        acc = acc + row[-1]
        worst = max(worst, acc.abs_upper())
    return worst


def phi_of_point(point, precision: int = 128, escalate_to: int = 4096):
    """phi(Log P) at the designated embedding, escalating past clamped
    branch boundaries."""
    prec = precision
    while True:
        balls = point.coordinate_balls(prec)
        coords, clamped = phi_coordinates(balls)
        if not clamped or prec >= escalate_to:
            return coords
        prec *= 2
