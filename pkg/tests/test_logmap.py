from fractions import Fraction

import mpmath as mp

from torusint.balls import ComplexBall
from torusint.heights import TorusPoint
from torusint.logmap import (
    phi_coordinates,
    phi_of_point,
    principal_theta,
    relation_b_integer,
    subspace_matrix,
    subspace_residual,
)


def _ball(z, prec=128):
    with mp.workprec(prec + 32):
        return ComplexBall.exact(mp.mpc(z), prec)


def test_phi_of_one():
    coords, clamped = phi_coordinates([_ball(1)])
    rho, theta = coords
    assert abs(float(rho)) < 1e-25
    assert abs(float(theta)) < 1e-25


def test_phi_of_minus_two():
    coords, _ = phi_coordinates([_ball(-2)])
    rho, theta = coords
    assert abs(float(rho) - mp.log(2)) < 1e-20
    assert abs(float(theta) - 0.5) < 1e-25  # angle measured in turns


def test_phi_of_sixth_root():
    with mp.workprec(192):
        w = mp.exp(mp.mpc(0, 1) * mp.pi / 3)
    z = _ball(w)
    (rho, theta), _ = phi_coordinates([z])
    assert abs(float(rho)) < 1e-20
    assert abs(float(theta) - Fraction(1, 6)) < 1e-20


def test_principal_theta_range():
    for z in (1 + 1j, -1 + 1j, -1 - 1j, 1 - 1j, 2, -3):
        theta, clamped = principal_theta(_ball(z))
        assert not clamped
        assert 0 <= float(theta) < 1


def test_relation_b_is_integer():
    # point (zeta6, zeta6^-1 ...) style: use (2, 1/2) with vector (1, 1)
    phi, _ = phi_coordinates([_ball(2), _ball(0.5)])
    b = relation_b_integer((1, 1), phi)
    assert b == 0
    phi2, _ = phi_coordinates([_ball(-1), _ball(-1)])
    assert relation_b_integer((1, 1), phi2) == 1


def test_subspace_matrix_shape():
    m = subspace_matrix([(1, 1, 0), (0, 6, 0)], [0, 1], 3)
    # two relations in G_m^3: 2*rows coordinates, 2n+1 columns
    assert m.rows == 4
    assert m.cols == 7


def test_residual_vanishes_for_true_relation():
    p = TorusPoint.from_rationals((2, Fraction(1, 2), 3))
    phi = phi_of_point(p, precision=128)
    b = relation_b_integer((1, 1, 0), phi)
    m = subspace_matrix([(1, 1, 0)], [b], 3)
    res = subspace_residual(m, phi)
    assert res < mp.mpf(2) ** -100
