"""Multiplicative structure of a point's coordinates: relation lattices,
generators of the free part, the torsion decomposition
    x_i = zeta_N^(d_i) * prod_j g_j^(t_ij),
the Cramer small-vector construction, and the low-height linear subspace
containing phi(Log P).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations, product

import mpmath as mp

from .errors import InconsistentDecompositionError, InvalidInputError
from .heights import TorusPoint, height_of_nf
from .heights import grassmann_height
from .intmatrix import IntMatrix, hnf, in_row_span, lll_reduce
from .logmap import phi_of_point, relation_b_integer, subspace_matrix, subspace_residual
from .numfield import NFElement

DEFAULT_NORM_BOUND = 20


# ---------------------------------------------------------------------------
# relation lattice detection
# ---------------------------------------------------------------------------
def _embedding_log_moduli(point: TorusPoint, prec: int = 160):
    """Rows: per embedding of the field, the vector log|sigma(x_i)|.

    Returns (float matrix, certified radius bound)."""
    rows = []
    max_rad = mp.mpf(0)
    for balls in point.conjugate_coordinate_balls(prec):
        row = []
        for b in balls:
            lb = b.log_abs()
            row.append(float(lb.mid))
            max_rad = max(max_rad, lb.rad)
        rows.append(row)
    return rows, float(max_rad)


def relation_lattice_of_point(
    point: TorusPoint, norm_bound: int = DEFAULT_NORM_BOUND, prec: int = 160
):
    """(exact_lattice, torsion_lattice) as HNF matrices.

    torsion_lattice spans the vectors c with prod x_i^(c_i) a root of
    unity, exact_lattice those with the product exactly 1; both complete
    up to generator max-norm norm_bound.  Candidates are sieved on the
    embedding log-moduli and every accepted vector is verified exactly.
    """
    n = point.n
    logs, rad = _embedding_log_moduli(point, prec)
    tol = norm_bound * n * (rad + 1e-12) + 1e-9

    def is_torsion_candidate(c):
        return all(
            abs(sum(ci * row[i] for i, ci in enumerate(c))) <= tol for row in logs
        )

    torsion_rows: list = []
    exact_rows: list = []
    torsion_hnf = IntMatrix([])
    exact_hnf = IntMatrix([])
    candidates = sorted(
        (v for v in product(range(-norm_bound, norm_bound + 1), repeat=n)
         if any(v)),
        key=lambda v: (max(abs(x) for x in v), v),
    )
    for c in candidates:
        if not is_torsion_candidate(c):
            continue
        in_tors = torsion_rows and in_row_span(torsion_hnf, c)
        in_exact = exact_rows and in_row_span(exact_hnf, c)
        if in_tors and in_exact:
            continue
        u = _power_product(point, c)
        if u.is_one:
            if not in_exact:
                exact_rows.append(c)
                exact_hnf = hnf(IntMatrix(exact_rows))
            if not in_tors:
                torsion_rows.append(c)
                torsion_hnf = hnf(IntMatrix(torsion_rows))
        elif u.torsion_order() is not None:
            if not in_tors:
                torsion_rows.append(c)
                torsion_hnf = hnf(IntMatrix(torsion_rows))
    return exact_hnf, torsion_hnf


def _power_product(point: TorusPoint, c) -> NFElement:
    acc = NFElement.one(point.field_poly)
    for x, e in zip(point.coords, c):
        if e:
            acc = acc * x**e
    return acc


def gamma_rank(point: TorusPoint, norm_bound: int = DEFAULT_NORM_BOUND) -> int:
    _, tors = relation_lattice_of_point(point, norm_bound)
    return point.n - tors.rows


# ---------------------------------------------------------------------------
# Smith normal form (desk scale)
# ---------------------------------------------------------------------------
def smith_normal_form(m: IntMatrix):
    """U @ m @ V = D diagonal, U and V unimodular."""
    a = [list(r) for r in m.entries]
    rows, cols = len(a), (len(a[0]) if a else 0)
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def addmul_row(dst, src, q):
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def addmul_col(dst, src, q):
        for r in a:
            r[dst] -= q * r[src]
        for r in v:
            r[dst] -= q * r[src]

    t = 0
    while t < min(rows, cols):
        # find a nonzero pivot
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            # clear column t
            done = True
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    addmul_row(i, t, q)
                    if a[i][t] != 0:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    addmul_col(j, t, q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        done = False
            if done:
                break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return IntMatrix(u), IntMatrix(a), IntMatrix(v)


def _inverse_unimodular(v: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular integer matrix, exact."""
    from fractions import Fraction

    n = v.rows
    aug = [
        [Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
        for i, row in enumerate(v.entries)
    ]
    for c in range(n):
        piv = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    out = [[int(aug[i][n + j]) for j in range(n)] for i in range(n)]
    return IntMatrix(out)


# ---------------------------------------------------------------------------
# generator choice and decomposition
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class GammaDecomposition:
    point: TorusPoint
    r: int
    generators: tuple  # NFElements g_1..g_r
    generator_heights: tuple  # RealBalls
    t_matrix: IntMatrix  # n x r
    big_n: int  # minimal common torsion order N
    d_vec: tuple  # n integers in [0, N)
    zeta: NFElement  # the fixed primitive N-th root of unity
    lemma_worst_ratio: float  # empirical generator-quality margin, 1.0 if r=0

    @property
    def t_cols_max(self):
        return tuple(
            max((abs(self.t_matrix.entries[i][j]) for i in range(self.point.n)), default=0)
            for j in range(self.r)
        )

    @property
    def t_max(self) -> int:
        return max(self.t_cols_max, default=0)


def _quotient_data(n: int, torsion_hnf: IntMatrix):
    """Exponent rows w_j (free-part basis) and per-coordinate images t0.

    torsion_hnf is the saturated kernel of Z^n -> Gamma/tors; the quotient
    is free of rank r = n - rows."""
    k = torsion_hnf.rows
    r = n - k
    if k == 0:
        w = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
        t0 = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        return w, t0
    _, d, v = smith_normal_form(torsion_hnf)
    for i in range(k):
        if d.entries[i][i] != 1:
            raise InconsistentDecompositionError(
                "torsion lattice is not saturated; raise the norm bound"
            )
    vinv = _inverse_unimodular(v)
    w = [list(vinv.entries[k + j]) for j in range(r)]
    t0 = [[v.entries[i][k + j] for j in range(r)] for i in range(n)]
    return w, t0


def _reduce_generator_basis(point: TorusPoint, w, prec: int = 160):
    """LLL-improve the free-part basis under the embedding log metric."""
    r = len(w)
    if r <= 1:
        return [list(x) for x in w], IntMatrix.identity(r)
    logs, _ = _embedding_log_moduli(point, prec)
    scale = 1 << 30
    rows = []
    for j, wj in enumerate(w):
        embed = [
            int(round(scale * sum(wi * row[i] for i, wi in enumerate(wj))))
            for row in logs
        ]
        rows.append(embed + [1 if jj == j else 0 for jj in range(r)])
    red = lll_reduce(IntMatrix(rows))
    d = len(logs)
    b = IntMatrix([[red.entries[j][d + jj] for jj in range(r)] for j in range(r)])
    new_w = [
        [sum(b.entries[j][k] * w[k][i] for k in range(r)) for i in range(len(w[0]))]
        for j in range(r)
    ]
    return new_w, b


def choose_generators(
    point: TorusPoint,
    lattices=None,
    norm_bound: int = DEFAULT_NORM_BOUND,
    lemma_samples: int = 200,
    seed: int = 0,
) -> GammaDecomposition:
    """Decompose the coordinates over a reduced generating set of the free
    part of the coordinate group, with all identities verified exactly."""
    n = point.n
    if lattices is None:
        lattices = relation_lattice_of_point(point, norm_bound)
    _, torsion_hnf = lattices
    r = n - torsion_hnf.rows
    w, t0 = _quotient_data(n, torsion_hnf)
    w, b = _reduce_generator_basis(point, w)
    # deterministic sign: first nonzero exponent positive (the matching
    # t-column flips are recovered by _consistent_t below)
    for j in range(r):
        lead = next((x for x in w[j] if x != 0), 1)
        if lead < 0:
            w[j] = [-x for x in w[j]]
    binv = _inverse_unimodular(b) if r else IntMatrix([])
    # t = t0 . b^-1, with per-generator sign fixes folded in
    t_rows = []
    for i in range(n):
        row = [
            sum(t0[i][k] * binv.entries[k][j] for k in range(r)) for j in range(r)
        ]
        t_rows.append(row)
    # recompute sign fixes: flipping w_j inverts g_j, so t_ij flips too
    gens = []
    for j in range(r):
        gens.append(_power_from_exponents(point, w[j]))
    # detect which columns were sign-flipped by re-deriving from scratch
    t_matrix, gens = _consistent_t(point, gens, t_rows)
    # torsion parts
    zetas = []
    for i in range(n):
        acc = point.coords[i]
        for j in range(r):
            e = t_matrix[i][j]
            if e:
                acc = acc * gens[j] ** (-e)
        zetas.append(acc)
    orders = []
    for i, z in enumerate(zetas):
        o = z.torsion_order()
        if o is None:
            raise InconsistentDecompositionError(
                f"torsion part of coordinate {i + 1} is not a root of unity"
            )
        orders.append(o)
    big_n = 1
    for o in orders:
        big_n = big_n * o // math.gcd(big_n, o)
    zeta, d_vec = _torsion_digits(point, zetas, orders, big_n)
    # exact reconstruction check
    for i in range(n):
        acc = zeta**d_vec[i]
        for j in range(r):
            e = t_matrix[i][j]
            if e:
                acc = acc * gens[j] ** e
        if acc.coeffs != point.coords[i].coeffs:
            raise InconsistentDecompositionError("reconstruction identity failed")
    heights = tuple(height_of_nf(g) for g in gens)
    worst = _lemma_ratio(point, gens, heights, r, lemma_samples, seed)
    return GammaDecomposition(
        point=point,
        r=r,
        generators=tuple(gens),
        generator_heights=heights,
        t_matrix=IntMatrix(t_matrix),
        big_n=big_n,
        d_vec=tuple(d_vec),
        zeta=zeta,
        lemma_worst_ratio=worst,
    )


def _power_from_exponents(point: TorusPoint, exps) -> NFElement:
    acc = NFElement.one(point.field_poly)
    for x, e in zip(point.coords, exps):
        if e:
            acc = acc * x**e
    return acc


def _consistent_t(point: TorusPoint, gens, t_rows):
    """Fix generator signs so that x_i / prod g_j^t_ij is torsion for all i.

    Flipping w_j (g -> 1/g) negates column j of t; try both orientations
    per column and keep the one already consistent with t_rows."""
    n = point.n
    r = len(gens)
    t = [list(row) for row in t_rows]
    for j in range(r):
        # verify column j orientation on the first coordinate with t_ij != 0
        probe = next((i for i in range(n) if t[i][j] != 0), None)
        if probe is None:
            continue
        acc = point.coords[probe]
        for jj in range(r):
            e = t[probe][jj]
            if e:
                acc = acc * gens[jj] ** (-e)
        if acc.torsion_order() is None:
            # column j must flip
            for i in range(n):
                t[i][j] = -t[i][j]
    return t, gens


def _torsion_digits(point: TorusPoint, zetas, orders, big_n: int):
    """Fixed primitive N-th root (smallest positive argument under the
    designated embedding) and the digits d_i with zeta_i = zeta^(d_i)."""
    one = NFElement.one(point.field_poly)
    if big_n == 1:
        return one, [0] * len(zetas)
    # close the group generated by the torsion parts
    group = {one.coeffs: one}
    frontier = [one]
    while frontier:
        nxt = []
        for g in frontier:
            for z in zetas:
                h = g * z
                if h.coeffs not in group:
                    group[h.coeffs] = h
                    nxt.append(h)
        frontier = nxt
    if len(group) != big_n:
        raise InconsistentDecompositionError("torsion subgroup has wrong order")
    tball = point.parameter_ball(160)
    with mp.workprec(200):
        target = mp.exp(2j * mp.pi / big_n)
    zeta = min(
        group.values(),
        key=lambda g: abs(complex(g.evaluate(tball).mid) - complex(target)),
    )
    powers = {}
    acc = one
    for k in range(big_n):
        powers.setdefault(acc.coeffs, k)
        acc = acc * zeta
    d_vec = []
    for z in zetas:
        if z.coeffs not in powers:
            raise InconsistentDecompositionError("digit extraction failed")
        d_vec.append(powers[z.coeffs])
    return zeta, d_vec


def _lemma_ratio(point, gens, heights, r, samples, seed) -> float:
    """Empirical worst ratio h(prod g^k) / sum |k_j| h(g_j) over random k.

    The generator-quality bound promises a basis achieving r^-1 4^-r; the
    reduced basis is a heuristic, so the ratio is reported, not assumed."""
    if r == 0 or samples <= 0:
        return 1.0
    rng = random.Random(seed)
    worst = float("inf")
    for _ in range(samples):
        k = [rng.randint(-10, 10) for _ in range(r)]
        if not any(k):
            continue
        acc = NFElement.one(point.field_poly)
        for g, e in zip(gens, k):
            if e:
                acc = acc * g**e
        denom = sum(abs(e) * float(h) for e, h in zip(k, heights))
        if denom <= 0:
            continue
        worst = min(worst, float(height_of_nf(acc)) / denom)
    return worst if worst != float("inf") else 1.0


# ---------------------------------------------------------------------------
# Cramer small vectors
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class SmallVectorSet:
    vectors: tuple  # (n - r) integer n-vectors
    max_norm: int
    pre_scaling_max: int  # before multiplying by N


def small_vectors(dec: GammaDecomposition) -> SmallVectorSet:
    """n - r independent integer solutions of the exponent system
        sum_i c_i t_ij = 0 (j = 1..r),  sum_i c_i d_i = 0 mod N,
    built by Cramer's rule on a nonzero r x r minor and scaled by N."""
    n = dec.point.n
    r = dec.r
    if r >= n:
        raise InvalidInputError("free rank must be below the ambient dimension")
    t = dec.t_matrix.entries
    if r == 0:
        vecs = []
        for i in range(n):
            v = [0] * n
            v[i] = dec.big_n
            vecs.append(tuple(v))
        return SmallVectorSet(tuple(vecs), dec.big_n, 1)
    if IntMatrix(t).rank() < r:
        raise InconsistentDecompositionError("exponent matrix rank below r")
    # pivot rows: maximal |det|, lexicographically first among ties
    best = None
    for rows_idx in combinations(range(n), r):
        m = IntMatrix([t[i] for i in rows_idx])
        d = m.det()
        if d != 0 and (best is None or abs(d) > abs(best[1])):
            best = (rows_idx, d)
    rows_idx, delta = best
    m = IntMatrix([t[i] for i in rows_idx])
    adj = _adjugate(m.transpose())
    raw = []
    for s in range(n):
        if s in rows_idx:
            continue
        ts = t[s]
        y = [-sum(adj.entries[i][j] * ts[j] for j in range(r)) for i in range(r)]
        c = [0] * n
        for idx, i in enumerate(rows_idx):
            c[i] = y[idx]
        c[s] = delta
        lead = next((x for x in c if x != 0), 1)
        if lead < 0:
            c = [-x for x in c]
        raw.append(tuple(c))
    pre_max = max(abs(x) for v in raw for x in v)
    vecs = tuple(tuple(dec.big_n * x for x in v) for v in raw)
    # exact system check
    for v in vecs:
        for j in range(r):
            if sum(v[i] * t[i][j] for i in range(n)) != 0:
                raise InconsistentDecompositionError("Cramer vector misses kernel")
        if sum(v[i] * dec.d_vec[i] for i in range(n)) % dec.big_n != 0:
            raise InconsistentDecompositionError("congruence condition failed")
    return SmallVectorSet(vecs, max(abs(x) for v in vecs for x in v), pre_max)


def _adjugate(m: IntMatrix) -> IntMatrix:
    n = m.rows
    if n == 1:
        return IntMatrix([[1]])
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            sub = [
                [m.entries[a][b] for b in range(n) if b != i]
                for a in range(n)
                if a != j
            ]
            sgn = -1 if (i + j) % 2 else 1
            row.append(sgn * IntMatrix(sub).det())
        out.append(row)
    return IntMatrix(out)


# ---------------------------------------------------------------------------
# the low-height subspace containing phi(Log P)
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class SubspaceDiagnostics:
    matrix: IntMatrix
    b_values: tuple
    height: object  # GrassmannHeight
    residual: float
    height_exponent: int  # 2(3r+2)(n-r)
    bound_ratio: float
    b_bound_ok: bool
    contained: bool


def build_subspace(
    point: TorusPoint,
    sv: SmallVectorSet,
    dec: GammaDecomposition,
    precision: int = 256,
) -> SubspaceDiagnostics:
    """Assemble the rational subspace of the paper's linear-system shape
    from the small vectors and certify that phi(Log P) lies on it."""
    n = point.n
    r = dec.r
    phi = phi_of_point(point, precision)
    bs = []
    for v in sv.vectors:
        b = relation_b_integer(v, phi)
        if b is None:
            raise InvalidInputError("b-ball does not isolate a unique integer")
        bs.append(b)
    mat = subspace_matrix(sv.vectors, bs, n)
    gh = grassmann_height(mat)
    res = subspace_residual(mat, phi)
    e_h = 2 * (3 * r + 2) * (n - r)
    d = point.field_degree
    ratio = float(gh.value) / float(d**e_h)
    b_ok = all(abs(b) <= n * sv.max_norm for b in bs)
    contained = res < mp.ldexp(1, -precision + 10)
    return SubspaceDiagnostics(
        matrix=mat,
        b_values=tuple(bs),
        height=gh,
        residual=float(res),
        height_exponent=e_h,
        bound_ratio=ratio,
        b_bound_ok=b_ok,
        contained=bool(contained),
    )
