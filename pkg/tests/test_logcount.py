import math

import pytest

from torusint.heights import TorusPoint
from torusint.logcount import (
    EmptyRegionError,
    Region,
    choose_delta,
    conjugates_in_annulus,
    growth_report,
    pick_B,
    _sector_of_theta,
)
from torusint.numfield import NFElement
from torusint.polys import IntPolynomial


def _zeta6_point():
    mod = IntPolynomial((1, -1, 1))
    g = NFElement.generator(mod)
    one = NFElement.one(mod)
    return TorusPoint(mod, (g, one - g, one + g))


def test_choose_delta_value():
    # exp(-4 * 3 * 0.55) = exp(-6.6)
    d = choose_delta(0.55, 3)
    assert abs(d - math.exp(-6.6)) < 1e-12
    assert abs(d - 0.00136037) < 1e-6


def test_choose_delta_monotone():
    assert choose_delta(1.0, 3) < choose_delta(0.5, 3)
    assert choose_delta(0.5, 4) < choose_delta(0.5, 3)


def test_sector_of_theta():
    # angles in turns; three sectors per coordinate
    assert _sector_of_theta(0.0) == 0
    assert _sector_of_theta(0.1) == 0
    assert _sector_of_theta(0.4) == 1
    assert _sector_of_theta(0.8) == 2
    # boundary angles belong to the lower sector
    assert _sector_of_theta(1 / 3) == 0
    assert _sector_of_theta(2 / 3) == 1


def test_region_index_is_lexicographic():
    delta = 0.01
    assert Region(delta, (0, 0, 0), 3).index == 0
    assert Region(delta, (0, 0, 1), 3).index == 1
    assert Region(delta, (0, 2, 0), 3).index == 6
    assert Region(delta, (2, 2, 2), 3).index == 26


def test_pick_b_zeta6():
    p = _zeta6_point()
    delta = choose_delta(0.55, 3)
    conj = p.conjugate_coordinate_balls(precision=128)
    region = pick_B(conj, delta)
    # both conjugates are unit-modulus in the first two coordinates; the
    # chosen sector pattern must be one of the two conjugate patterns
    assert region.sector_indices in ((0, 2, 0), (2, 0, 0))


def test_pick_b_empty():
    # with a wide delta the annulus [delta, 1/delta] excludes 2, 3 and 5
    p = TorusPoint.from_rationals((2, 3, 5))
    with pytest.raises(EmptyRegionError):
        pick_B(p.conjugate_coordinate_balls(precision=128), 0.9)


def test_conjugates_in_annulus():
    p = _zeta6_point()
    delta = choose_delta(0.55, 3)
    inside, total = conjugates_in_annulus(p, delta)
    assert total == 2
    # coordinates of both conjugates have |log|x|| <= log 3 / 2 < log(1/delta)
    assert inside == 2


class _FakeReport:
    def __init__(self, t_values, counts):
        self.t_values = tuple(t_values)
        self.counts = tuple(counts)


def test_growth_slope_logarithmic_passes():
    rep = _FakeReport((10, 100, 1000), (1, 1, 2))
    v = growth_report(rep)
    assert v.verdict == "PASS"
    assert v.slope < 0.2


def test_growth_slope_flat_passes():
    rep = _FakeReport((10, 100, 1000), (3, 3, 3))
    v = growth_report(rep)
    assert v.verdict == "PASS"
    assert abs(v.slope) < 1e-12


def test_growth_slope_linear_fails():
    rep = _FakeReport((10, 100, 1000), (10, 100, 1000))
    v = growth_report(rep)
    assert v.verdict == "FAIL"
    assert v.slope > 0.5


def test_growth_inconclusive_with_few_t():
    rep = _FakeReport((10, 100), (1, 2))
    assert growth_report(rep).verdict == "INCONCLUSIVE"
