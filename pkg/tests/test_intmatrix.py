from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from torusint.intmatrix import (
    IntMatrix,
    gram_det,
    hnf,
    in_row_span,
    kernel_basis,
    lll_reduce,
    minors_gcd,
)

small_entries = st.integers(min_value=-9, max_value=9)


def _mat(rows):
    return IntMatrix(tuple(tuple(r) for r in rows))


def test_hnf_torsion_example():
    # the lattice generated by (1,1,0) and (6,0,0)
    m = _mat([(1, 1, 0), (6, 0, 0)])
    assert hnf(m).entries == ((1, 1, 0), (0, 6, 0))


def test_hnf_two_by_two():
    m = _mat([(1, 1), (1, -1)])
    assert hnf(m).entries == ((1, 1), (0, 2))


def test_hnf_idempotent():
    m = _mat([(2, 4, 6), (3, 5, 7), (1, 1, 1)])
    h = hnf(m)
    assert hnf(h) == h


@given(st.lists(st.tuples(small_entries, small_entries, small_entries),
                min_size=1, max_size=4))
@settings(max_examples=60, deadline=None)
def test_hnf_row_span_invariant(rows):
    m = _mat(rows)
    h = hnf(m)
    # every original row lies in the span of the HNF and vice versa
    for r in m.entries:
        assert in_row_span(h, r)
    # unimodular row mixing does not change the HNF
    if m.rows >= 2:
        mixed = list(m.entries)
        mixed[0] = tuple(a + 2 * b for a, b in zip(mixed[0], mixed[1]))
        assert hnf(_mat(mixed)) == h


def test_hnf_pivots_positive():
    h = hnf(_mat([(-3, 1), (0, -5)]))
    pivots = []
    for row in h.entries:
        nz = [x for x in row if x != 0]
        if nz:
            pivots.append(nz[0])
    assert all(p > 0 for p in pivots)


def test_lll_reduces_skewed_basis():
    m = _mat([(1, 0), (10, 1)])
    red = lll_reduce(m)
    # same lattice (Z^2), much shorter vectors
    assert hnf(red) == hnf(m)
    assert red.max_abs() <= 1


@given(st.lists(st.tuples(small_entries, small_entries), min_size=2, max_size=2))
@settings(max_examples=40, deadline=None)
def test_lll_preserves_lattice(rows):
    m = _mat(rows)
    if m.det() == 0:
        return
    assert hnf(lll_reduce(m)) == hnf(m)


def test_gram_det_example():
    # single row (3,4): gram determinant is 9+16 = 25
    assert gram_det(_mat([(3, 4)])) == 25


def test_minors_gcd_examples():
    # gcd of maximal minors
    assert minors_gcd(_mat([(2, 4), (0, 6)])) == 12
    assert minors_gcd(_mat([(2, 4)])) == 2
    assert minors_gcd(IntMatrix.identity(3)) == 1


def test_kernel_basis_simple():
    # kernel of (1, 1, 0) contains (1,-1,0) and (0,0,1)
    ker = kernel_basis(_mat([(1, 1, 0)]))
    assert len(ker) == 2
    for v in ker:
        assert v[0] + v[1] == 0 or (v[0] == 0 and v[1] == 0)


def test_in_row_span():
    h = hnf(_mat([(1, 1, 0), (0, 6, 0)]))
    assert in_row_span(h, (1, 1, 0))
    assert in_row_span(h, (2, 8, 0))
    assert not in_row_span(h, (1, 0, 0))
    assert not in_row_span(h, (0, 3, 0))
