"""Codimension-2 subgroup search: enumerate relation lattices, intersect
with the curve by polynomial gcds, verify every hit with exact algebraic
arithmetic, and catalog the finite set of unlikely intersections.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, product

from .balls import RealBall
from .curve import Curve, check_hypothesis
from .errors import HypothesisViolationError, InvalidInputError
from .heights import TorusPoint, point_height
from .intmatrix import IntMatrix, hnf
from .logmap import phi_of_point, relation_b_integer, subspace_matrix
from .numfield import NFElement
from .polys import IntPolynomial, factor_irreducible, poly_gcd
from .heights import grassmann_height


@dataclass(frozen=True)
class RelationLattice:
    """Rank-2 integer lattice in canonical HNF; defines an algebraic
    subgroup of codimension 2 via prod x_i^(c_i) = 1 over its vectors."""

    basis: IntMatrix
    coefficient_bound: int

    def __post_init__(self):
        if self.basis.hnf() != self.basis:
            raise InvalidInputError("lattice basis must be in HNF")

    @property
    def rank(self) -> int:
        return self.basis.rows

    @property
    def n(self) -> int:
        return self.basis.cols

    def key(self):
        return self.basis.entries


@dataclass(frozen=True)
class IntersectionPoint:
    t_min_poly: IntPolynomial
    point: TorusPoint
    degree: int
    height: RealBall
    witness: RelationLattice
    verified: bool

    def sort_key(self):
        return (self.degree, self.t_min_poly.coeffs)


def _canonical_sign(v):
    lead = next((x for x in v if x != 0), 0)
    return tuple(-x for x in v) if lead < 0 else tuple(v)


def _vectors(n: int, a_max: int):
    """All nonzero integer vectors with max-norm <= a_max, up to sign."""
    seen = set()
    for v in product(range(-a_max, a_max + 1), repeat=n):
        if all(x == 0 for x in v):
            continue
        seen.add(_canonical_sign(v))
    return sorted(seen)


def enumerate_lattices(n: int, a_max: int, rank: int = 2):
    """Every rank-`rank` lattice generated by vectors of max-norm <= a_max,
    exactly once (HNF-deduplicated), in lexicographic HNF order."""
    if n < 2:
        raise InvalidInputError("ambient dimension must be at least 2")
    if a_max < 0:
        raise InvalidInputError("coefficient bound must be nonnegative")
    vecs = _vectors(n, a_max)
    seen = {}
    for combo in combinations(vecs, rank):
        m = hnf(IntMatrix(combo))
        if m.rows != rank:
            continue
        bound = max(abs(x) for row in combo for x in row)
        key = m.entries
        if key not in seen or bound < seen[key][1]:
            seen[key] = (m, bound)
    for key in sorted(seen):
        m, bound = seen[key]
        yield RelationLattice(m, bound)


def relation_poly(curve: Curve, a):
    """(p_a, excluded) where p_a is the canonical numerator of
    prod x_i(t)^(a_i) - 1 and excluded is the set of irreducible factors
    of any coordinate numerator or denominator (parameters leaving G_m^n)."""
    if all(x == 0 for x in a):
        raise InvalidInputError("relation vector must be nonzero")
    top = IntPolynomial((1,))
    bot = IntPolynomial((1,))
    for (num, den), e in zip(curve.coords, a):
        if e > 0:
            top = top * num**e
            bot = bot * den**e
        elif e < 0:
            top = top * den ** (-e)
            bot = bot * num ** (-e)
    p = (top - bot).canonical()
    if p.is_zero:
        raise HypothesisViolationError(tuple(a))
    return p, excluded_factors(curve)


def excluded_factors(curve: Curve):
    """Canonical irreducible factors of every coordinate numerator and
    denominator: parameter values there leave the torus."""
    out = set()
    for num, den in curve.coords:
        for f, _ in factor_irreducible(num):
            out.add(f.coeffs)
        for f, _ in factor_irreducible(den):
            out.add(f.coeffs)
    return frozenset(out)


def _point_from_factor(curve: Curve, q: IntPolynomial) -> TorusPoint:
    coords = tuple(
        NFElement.from_poly(q, num) / NFElement.from_poly(q, den)
        for num, den in curve.coords
    )
    return TorusPoint(q, coords)


def verify_relations(point: TorusPoint, rows) -> bool:
    """Exact check of prod x_i^(c_i) == 1 for each vector in rows."""
    for row in rows:
        acc = NFElement.one(point.field_poly)
        for x, e in zip(point.coords, row):
            if e:
                acc = acc * x**e
        if not acc.is_one:
            return False
    return True


def _witness_rank_key(point: TorusPoint, lattice_hnf: IntMatrix, phi_coords):
    """(grassmannian height, hnf entries) of the shape-(6) system of the
    lattice at this point, for minimal-witness selection."""
    bs = []
    for row in lattice_hnf.entries:
        b = relation_b_integer(row, phi_coords)
        bs.append(b if b is not None else 0)
    mat = subspace_matrix(lattice_hnf.entries, bs, point.n)
    gh = grassmann_height(mat)
    return (float(gh.value), lattice_hnf.entries), mat


def intersect(curve: Curve, lattice: RelationLattice):
    """Exact intersection of the curve with the subgroup of the lattice.

    Gcd of the two basis relation polynomials, exclusion of parameters
    leaving the torus, then one IntersectionPoint per irreducible factor,
    each verified by exact algebraic arithmetic.
    """
    rows = lattice.basis.entries
    p0, excluded = relation_poly(curve, rows[0])
    p1, _ = relation_poly(curve, rows[1])
    g = poly_gcd(p0, p1)
    out = []
    if g.degree < 1:
        return out
    for q, _mult in factor_irreducible(g):
        if q.coeffs in excluded:
            continue
        point = _point_from_factor(curve, q)
        verified = verify_relations(point, rows)
        out.append(
            IntersectionPoint(
                t_min_poly=q,
                point=point,
                degree=q.degree,
                height=point_height(point),
                witness=lattice,
                verified=verified,
            )
        )
    return sorted(out, key=lambda ip: ip.sort_key())


@dataclass(frozen=True)
class SearchReport:
    curve_name: str
    curve_hash: str
    a_max: int
    points: tuple  # IntersectionPoints, sorted
    truncated: bool = False

    @property
    def count(self) -> int:
        return len(self.points)

    @property
    def max_height(self) -> float:
        return max((float(p.height) for p in self.points), default=0.0)

    @property
    def max_degree(self) -> int:
        return max((p.degree for p in self.points), default=0)

    def csv_rows(self):
        yield ["t_min_poly", "degree", "height", "witness_hnf", "verified"]
        for p in self.points:
            yield [
                " ".join(str(c) for c in p.t_min_poly.coeffs),
                str(p.degree),
                f"{float(p.height):.12f}",
                ";".join(" ".join(str(x) for x in r) for r in p.witness.basis.entries),
                str(p.verified).lower(),
            ]

    def to_json(self) -> str:
        return json.dumps(
            {
                "curve": self.curve_name,
                "curve_hash": self.curve_hash,
                "a_max": self.a_max,
                "count": self.count,
                "max_height": round(self.max_height, 12),
                "max_degree": self.max_degree,
                "truncated": self.truncated,
                "points": [
                    {
                        "t_min_poly": list(p.t_min_poly.coeffs),
                        "degree": p.degree,
                        "height": round(float(p.height), 12),
                        "witness_hnf": [list(r) for r in p.witness.basis.entries],
                        "verified": p.verified,
                    }
                    for p in self.points
                ],
            },
            sort_keys=True,
            indent=1,
        )


def relation_factor_map(curve: Curve, a_max: int, factor_cache=None, workers=None):
    """Map canonical irreducible factor -> sorted list of relation vectors
    (up to sign, max-norm <= a_max) whose relation polynomial it divides."""
    vecs = _vectors(curve.n, a_max)
    excluded = excluded_factors(curve)
    fmap = {}
    items = _factoring_sweep(curve, vecs, factor_cache, workers)
    for a, factors in items:
        for q in factors:
            if q not in excluded:
                fmap.setdefault(q, []).append(a)
    return fmap


def _factor_one(args):
    curve, a = args
    p, _ = relation_poly(curve, a)
    return a, tuple(q.coeffs for q, _m in factor_irreducible(p))


def _factoring_sweep(curve, vecs, factor_cache, workers):
    results = []
    todo = []
    for a in vecs:
        cached = factor_cache.get(a) if factor_cache is not None else None
        if cached is not None:
            results.append((a, cached))
        else:
            todo.append(a)
    if workers and workers > 1 and todo:
        from multiprocessing import Pool

        with Pool(workers) as pool:
            fresh = pool.map(_factor_one, [(curve, a) for a in todo], chunksize=32)
    else:
        fresh = [_factor_one((curve, a)) for a in todo]
    for a, factors in fresh:
        if factor_cache is not None:
            factor_cache.put(a, factors)
        results.append((a, factors))
    results.sort()
    return results


def search(
    curve: Curve,
    a_max: int,
    factor_cache=None,
    workers=None,
    phi_precision: int = 128,
) -> SearchReport:
    """Catalog of X intersected with all enumerated codimension-2 subgroups.

    A parameter value is cataloged iff at least two linearly independent
    relation vectors of max-norm <= a_max vanish on it; the witnessing
    lattice recorded per point is the one whose linear system has minimal
    Grassmannian height (ties: lexicographic HNF).
    """
    witness_vec = check_hypothesis(curve)
    if witness_vec is not None:
        raise HypothesisViolationError(witness_vec)
    fmap = relation_factor_map(curve, a_max, factor_cache, workers)
    points = []
    for q_coeffs in sorted(fmap):
        vecs = fmap[q_coeffs]
        if len(vecs) < 2:
            continue
        if IntMatrix(vecs).rank() < 2:
            continue
        q = IntPolynomial(q_coeffs)
        point = _point_from_factor(curve, q)
        phi = phi_of_point(point, phi_precision)
        best = None
        for pair in combinations(vecs, 2):
            m = hnf(IntMatrix(pair))
            if m.rows != 2:
                continue
            bound = max(abs(x) for row in pair for x in row)
            key, _mat = _witness_rank_key(point, m, phi)
            if best is None or key < best[0]:
                best = (key, m, bound)
        key, m, bound = best
        lattice = RelationLattice(m, bound)
        verified = verify_relations(point, m.entries)
        points.append(
            IntersectionPoint(
                t_min_poly=q,
                point=point,
                degree=q.degree,
                height=point_height(point),
                witness=lattice,
                verified=verified,
            )
        )
    points.sort(key=lambda ip: ip.sort_key())
    return SearchReport(
        curve_name=curve.name,
        curve_hash=curve.content_hash(),
        a_max=a_max,
        points=tuple(points),
    )
