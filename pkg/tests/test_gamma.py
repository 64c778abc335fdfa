from fractions import Fraction

import pytest

from torusint.errors import InvalidInputError
from torusint.gamma import (
    build_subspace,
    choose_generators,
    relation_lattice_of_point,
    small_vectors,
    smith_normal_form,
)
from torusint.heights import TorusPoint
from torusint.intmatrix import IntMatrix
from torusint.numfield import NFElement
from torusint.polys import IntPolynomial


def _zeta6_point(root_index=0):
    mod = IntPolynomial((1, -1, 1))
    g = NFElement.generator(mod)
    one = NFElement.one(mod)
    return TorusPoint(mod, (g, one - g, one + g), root_index)


def test_relation_lattice_zeta6():
    exact, torsion = relation_lattice_of_point(_zeta6_point())
    assert exact.hnf().entries == ((1, 1, 0), (0, 6, 0))
    assert torsion.hnf().entries == ((1, 0, 0), (0, 1, 0))


def test_relation_lattice_multiplicatively_independent():
    p = TorusPoint.from_rationals((2, 3, 5))
    exact, torsion = relation_lattice_of_point(p)
    assert exact.rows == 0
    assert torsion.rows == 0


def test_relation_lattice_all_ones():
    p = TorusPoint.from_rationals((1, 1, 1))
    exact, torsion = relation_lattice_of_point(p)
    # everything is a relation; the full lattice Z^3 on both counts
    assert exact.hnf().entries == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert torsion.hnf().entries == exact.hnf().entries


def test_smith_normal_form_property():
    m = IntMatrix(((2, 4, 4), (-6, 6, 12), (10, 4, 16)))
    u, d, v = smith_normal_form(m)
    prod = u @ m @ v
    assert prod == d
    # diagonal divisibility
    diag = [d.entries[i][i] for i in range(min(d.rows, d.cols))]
    for a, b in zip(diag, diag[1:]):
        if b != 0:
            assert b % a == 0


def test_decomposition_zeta6():
    dec = choose_generators(_zeta6_point())
    assert dec.r == 1
    assert dec.big_n == 6
    assert abs(float(dec.generator_heights[0]) - 0.5493061443340549) < 1e-9
    # zeta appears in every coordinate with the stated digit vector
    assert len(dec.d_vec) == 3
    # torsion part reconstructs: the chosen root is exp(-i pi/3), whose
    # digits are (5, 1, 0); the conjugate embedding gives (1, 5, 0)
    assert dec.d_vec in ((5, 1, 0), (1, 5, 0))


def test_decomposition_conjugate_embedding():
    dec = choose_generators(_zeta6_point(root_index=1))
    assert dec.r == 1
    assert dec.big_n == 6
    assert dec.d_vec == (1, 5, 0)


def test_decomposition_rank_one_powers():
    p = TorusPoint.from_rationals((4, 2, 1))
    dec = choose_generators(p)
    assert dec.r == 1
    assert dec.big_n == 1
    # generator 2 with coordinates (2^2, 2^1, 2^0)
    assert dec.t_matrix.entries == ((2,), (1,), (0,))
    import math

    assert abs(float(dec.generator_heights[0]) - math.log(2)) < 1e-9


def test_lemma_ratio_bounded():
    dec = choose_generators(_zeta6_point(), lemma_samples=50)
    assert dec.lemma_worst_ratio <= 1.0 + 1e-9


def test_small_vectors_zeta6():
    p = _zeta6_point()
    dec = choose_generators(p)
    sv = small_vectors(dec)
    vecs = set(sv.vectors)
    assert (6, 0, 0) in vecs or (0, 6, 0) in vecs
    assert sv.max_norm <= 6 * (dec.t_matrix.max_abs() * 2 + 1)


def test_small_vectors_torsion_point():
    # pure torsion point: r = 0, vectors are N e_i
    mod = IntPolynomial((1, -1, 1))
    g = NFElement.generator(mod)
    p = TorusPoint(mod, (g, g * g, -NFElement.one(mod)))
    dec = choose_generators(p)
    assert dec.r == 0
    sv = small_vectors(dec)
    n = dec.big_n
    assert set(sv.vectors) == {
        (n, 0, 0), (0, n, 0), (0, 0, n),
    }


def test_build_subspace_zeta6():
    p = _zeta6_point(root_index=1)
    dec = choose_generators(p)
    sv = small_vectors(dec)
    diag = build_subspace(p, sv, dec, precision=256)
    assert diag.contained
    assert diag.residual < 2.0 ** -246
    assert diag.b_bound_ok
    # rank(point)=1 in G_m^3: matrix has 2*(n-r) = 4 rows, 2n+1 = 7 cols
    assert diag.matrix.rows == 4
    assert diag.matrix.cols == 7
    # height bounded far below the degree bound d^(2(3r+2)(n-r))
    assert diag.height_exponent == 20
    assert diag.bound_ratio < 1
