import mpmath as mp

from torusint.polys import IntPolynomial
from torusint.roots import (
    cauchy_root_bound,
    contains_root_of,
    isolate_roots,
    isolate_roots_winding,
    winding_number,
)


def _p(*coeffs):
    return IntPolynomial(tuple(coeffs))


def test_isolate_x2_plus_1():
    roots = isolate_roots(_p(1, 0, 1), precision=64)
    assert len(roots) == 2
    got = sorted((round(complex(b).real, 6), round(complex(b).imag, 6))
                 for b in roots)
    assert got == [(0.0, -1.0), (0.0, 1.0)]
    for ball in roots:
        assert ball.rad < mp.ldexp(1, -60)


def test_isolate_golden_ratio():
    roots = isolate_roots(_p(-1, -1, 1), precision=64)
    vals = sorted(complex(b).real for b in roots)
    assert abs(vals[0] - (1 - 5**0.5) / 2) < 1e-10
    assert abs(vals[1] - (1 + 5**0.5) / 2) < 1e-10


def test_isolate_sixth_roots_field():
    # t^2 - t + 1 has roots exp(+-i pi/3)
    roots = isolate_roots(_p(1, -1, 1), precision=96)
    assert len(roots) == 2
    for ball in roots:
        z = complex(ball)
        assert abs(abs(z) - 1) < 1e-20
        assert abs(abs(z.imag) - mp.sin(mp.pi / 3)) < 1e-20


def test_each_ball_contains_a_root():
    p = _p(-2, 0, 1)  # t^2 - 2
    for ball in isolate_roots(p, precision=64):
        assert contains_root_of(ball, p)


def test_multiplicities_sum_to_degree():
    # (t-1)^2 (t+2) = t^3 - 3t + 2
    p = _p(2, -3, 0, 1)
    roots = isolate_roots(p, precision=64)
    # roots are repeated with multiplicity: (t-1) twice, (t+2) once
    assert len(roots) == 3
    vals = sorted(round(complex(b).real, 8) for b in roots)
    assert vals == [-2.0, 1.0, 1.0]


def test_cauchy_bound():
    assert cauchy_root_bound(_p(-2, 0, 1)) == 3.0
    assert cauchy_root_bound(_p(1, 0, 0, 2)) == 2.0


def test_winding_number_counts_roots():
    p = _p(1, 0, 1)  # roots at +-i
    assert winding_number(p, (-0.5, 0.5, 0.5, 1.5), prec=64) == 1
    assert winding_number(p, (-0.5, 0.5, -1.5, 1.5), prec=64) == 2
    assert winding_number(p, (1.0, 2.0, 1.0, 2.0), prec=64) == 0


def test_winding_isolation_in_rectangle():
    p = _p(1, -1, 1)
    rect = (0.0, 1.0, 0.25, 1.25)  # contains exp(i pi/3) only
    roots = isolate_roots_winding(p, rect=rect, precision=64)
    assert len(roots) == 1
    z = complex(roots[0][0])
    assert abs(z - complex(0.5, mp.sin(mp.pi / 3))) < 1e-12


def test_winding_isolation_multiple_rects_dedup():
    p = _p(1, 0, 1)
    # overlapping rectangles both containing +i must yield it once
    rects = [(-0.6, 0.6, 0.4, 1.6), (-0.5, 0.5, 0.5, 1.5)]
    roots = isolate_roots_winding(p, rects=rects, precision=64)
    assert len(roots) == 1
    assert abs(complex(roots[0][0]) - 1j) < 1e-12
