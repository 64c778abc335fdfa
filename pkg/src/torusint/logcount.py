"""Empirical counting of bounded-height rational subspaces through the
curve's logarithmic image: the compact polyannulus T_delta, the covering
region B, the branch logarithm on B, and the growth measurement of
N(Z, T) over a ladder of height budgets.

The root finding here is numeric (argument-principle subdivision) and
deliberately independent of the exact algebraic catalog, which serves as
a cross-check rather than an input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .balls import ComplexBall
from .curve import Curve
from .errors import EmptyRegionError, InvalidInputError
from .heights import grassmann_height
from .intmatrix import IntMatrix
from .logmap import (
    phi_coordinates,
    principal_theta,
    relation_b_integer,
    subspace_matrix,
    subspace_residual,
)
from .search import _vectors, relation_poly
from .roots import isolate_roots_winding

SECTORS_PER_COORDINATE = 3
DEFAULT_VECTOR_BOUND = 6
DEFAULT_BUDGET = 5000


def choose_delta(c_bound: float, n: int) -> float:
    """Annulus parameter guaranteeing at least half the conjugates of any
    point of height <= c_bound have every |coordinate| in [delta, 1/delta].

    Union bound: a fraction f of conjugates with |sigma x_i| outside the
    annulus forces h(x_i) >= f log(1/delta), so each of the 2n one-sided
    conditions loses at most a 1/(4n) fraction."""
    if c_bound <= 0:
        raise InvalidInputError("height bound must be positive")
    return math.exp(-4 * n * c_bound)


@dataclass(frozen=True)
class Region:
    """One of the s = 3^n products of annulus sectors covering T_delta.

    Each coordinate gets the sector of angles [2 pi k/3, 2 pi (k+1)/3]
    and the radial range [delta, 1/delta]; the product is simply
    connected, so a continuous branch logarithm exists on it."""

    delta: float
    sector_indices: tuple  # n entries in {0, 1, 2}
    n: int

    def __post_init__(self):
        if not 0 < self.delta < 1:
            raise InvalidInputError("delta must lie in (0,1)")
        if len(self.sector_indices) != self.n or any(
            s not in (0, 1, 2) for s in self.sector_indices
        ):
            raise InvalidInputError("sector indices must be n values in {0,1,2}")

    @property
    def index(self) -> int:
        """Flat index with lexicographic ordering of the sector tuple."""
        out = 0
        for s in self.sector_indices:
            out = out * SECTORS_PER_COORDINATE + s
        return out

    def sector_angles(self, i: int):
        k = self.sector_indices[i]
        width = 2 * math.pi / SECTORS_PER_COORDINATE
        return (k * width, (k + 1) * width)

    def sector_center(self, i: int):
        lo, hi = self.sector_angles(i)
        return (lo + hi) / 2

    def contains(self, coord_balls, slack: float = 0.0):
        """Membership of a point given coordinate balls (midpoint test with
        optional slack; boundary angles count for the lower sector)."""
        for i, ball in enumerate(coord_balls):
            r = float(ball.abs_ball().mid)
            if not (self.delta - slack) <= r <= 1 / self.delta + slack:
                return False
            theta, _ = principal_theta(ball)
            k = _sector_of_theta(float(theta.mid))
            if k != self.sector_indices[i]:
                lo, hi = self.sector_angles(i)
                ang = 2 * math.pi * float(theta.mid)
                if not (lo - slack <= ang <= hi + slack):
                    return False
        return True


def _sector_of_theta(theta: float) -> int:
    """Sector index of an angle theta in [0,1) turns; boundary angles are
    assigned to the lower sector, except 0 itself which opens sector 0."""
    k = int(theta * SECTORS_PER_COORDINATE)
    frac = theta * SECTORS_PER_COORDINATE - k
    if frac == 0.0 and k > 0:
        return k - 1
    return min(k, SECTORS_PER_COORDINATE - 1)


def pick_B(conjugate_coordinate_balls, delta: float) -> Region:
    """The sector product holding the most conjugates of the point, ties
    broken by smallest flat index; conjugates outside T_delta are skipped.
    """
    counts: dict = {}
    n = None
    for balls in conjugate_coordinate_balls:
        n = len(balls)
        key = []
        ok = True
        for ball in balls:
            r = float(ball.abs_ball().mid)
            if not delta <= r <= 1 / delta:
                ok = False
                break
            theta, _ = principal_theta(ball)
            key.append(_sector_of_theta(float(theta.mid)))
        if ok:
            key = tuple(key)
            counts[key] = counts.get(key, 0) + 1
    if not counts:
        raise EmptyRegionError("no conjugate lies inside the polyannulus")
    best = min(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return Region(delta=delta, sector_indices=best[0], n=n)


def log_phi(region: Region, coord_balls):
    """The branch logarithm image (log|x_i|, arg x_i / 2 pi) on the region.

    The sector boundaries include the positive real axis, so the
    principal normalization theta in [0,1) is continuous on every sector;
    a ball straddling the cut escalates precision upstream and is clamped
    here with a flag."""
    if not region.contains(coord_balls, slack=1e-9):
        raise InvalidInputError("point is outside the region")
    return phi_coordinates(coord_balls)


def conjugates_in_annulus(point, delta: float, precision: int = 128):
    """(inside, total) over all embeddings, by direct modulus check."""
    inside = 0
    conjs = point.conjugate_coordinate_balls(precision)
    for balls in conjs:
        if all(
            delta <= float(b.abs_ball().mid) <= 1 / delta for b in balls
        ):
            inside += 1
    return inside, len(conjs)


# ---------------------------------------------------------------------------
# the counting harness
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class CountedPoint:
    parameter: tuple  # (re, im, rad) of the parameter ball, floats
    min_height: float
    witness: tuple  # matrix rows of the minimal subspace
    b_values: tuple
    residual: float

    def sort_key(self):
        return (self.parameter[0], self.parameter[1])


@dataclass(frozen=True)
class CountReport:
    curve_name: str
    region_index: int
    delta: float
    t_values: tuple
    counts: tuple
    points: tuple  # CountedPoint, sorted
    truncated: bool
    vector_bound: int

    def csv_rows(self):
        rows = ["T,count,truncated"]
        for t, c in zip(self.t_values, self.counts):
            rows.append(f"{t},{c},{int(self.truncated)}")
        return rows

    def point_ledger_rows(self):
        rows = ["re,im,rad,min_height,residual,witness,b"]
        for p in self.points:
            w = ";".join(",".join(str(x) for x in row) for row in p.witness)
            b = ",".join(str(x) for x in p.b_values)
            rows.append(
                f"{p.parameter[0]!r},{p.parameter[1]!r},{p.parameter[2]!r},"
                f"{p.min_height!r},{p.residual!r},{w},{b}"
            )
        return rows


def _independent(v, w) -> bool:
    return IntMatrix([list(v), list(w)]).rank() == 2


def count_subspaces(
    curve: Curve,
    region: Region,
    t_values,
    vector_bound: int = DEFAULT_VECTOR_BOUND,
    budget: int = DEFAULT_BUDGET,
    precision: int = 96,
) -> CountReport:
    """Count distinct curve points inside the region lying on rank-2
    relation subspaces of Grassmannian height at most T, per T budget.

    For each sign-canonical exponent vector the relation polynomial's
    roots are isolated by winding-number subdivision; points supporting
    two independent relations are counted, each at the minimum subspace
    height over its witnessing relation pairs."""
    t_values = tuple(sorted(t_values))
    if not t_values:
        raise InvalidInputError("need at least one height budget")
    vectors = _vectors(curve.n, vector_bound)
    truncated = False
    if len(vectors) > budget:
        vectors = vectors[:budget]
        truncated = True
    clusters: list = []  # [ball, {vector: (phi, b)}]
    for a in vectors:
        poly, _excluded = relation_poly(curve, a)
        if poly.degree < 1:
            continue
        boxes = _candidate_boxes(curve, poly, region)
        if not boxes:
            continue
        roots = isolate_roots_winding(poly, rects=boxes, precision=precision)
        for ball, _mult in roots:
            coords, flagged = _eval_coords(curve, ball)
            if coords is None or flagged:
                continue
            if not region.contains(coords, slack=1e-9):
                continue
            phi, _clamped = phi_coordinates(coords)
            b = relation_b_integer(a, phi)
            if b is None:
                continue
            _cluster_add(clusters, ball, a, b)
    points = []
    for ball, rels in clusters:
        entry = _best_witness(curve, ball, rels, precision)
        if entry is not None:
            points.append(entry)
    points.sort(key=CountedPoint.sort_key)
    counts = tuple(
        sum(1 for p in points if p.min_height <= t) for t in t_values
    )
    return CountReport(
        curve_name=curve.name,
        region_index=region.index,
        delta=region.delta,
        t_values=t_values,
        counts=counts,
        points=tuple(points),
        truncated=truncated,
        vector_bound=vector_bound,
    )


def _angular_distance(theta, lo, hi):
    """Distance on the circle from angle theta to the arc [lo, hi]."""
    two_pi = 2 * math.pi
    theta %= two_pi
    if lo <= theta <= hi:
        return 0.0
    d1 = min(abs(theta - lo), two_pi - abs(theta - lo))
    d2 = min(abs(theta - hi), two_pi - abs(theta - hi))
    return min(d1, d2)


def _approx_in_region(region, coords, ang_slack=0.08, mod_slack=1.25):
    for i, x in enumerate(coords):
        r = abs(x)
        if not region.delta / mod_slack <= r <= mod_slack / region.delta:
            return False
        lo, hi = region.sector_angles(i)
        if _angular_distance(math.atan2(x.imag, x.real), lo, hi) > ang_slack:
            return False
    return True


def _candidate_boxes(curve, poly, region):
    """Small rectangles around floating root approximations whose curve
    image lands near the region; winding certification runs only there."""
    import mpmath as mp

    with mp.workprec(64):
        try:
            approx = mp.polyroots(
                [mp.mpf(c) for c in reversed(poly.coeffs)],
                maxsteps=120,
                extraprec=64,
            )
        except (mp.libmp.NoConvergence, ZeroDivisionError):
            return [None]  # fall back to a full-plane isolation
    boxes = []
    for z in approx:
        zc = complex(z)
        coords = []
        ok = True
        for num, den in curve.coords:
            try:
                d = den(zc)
                if d == 0:
                    ok = False
                    break
                coords.append(num(zc) / d)
            except (ZeroDivisionError, OverflowError):
                ok = False
                break
        if not ok or not _approx_in_region(region, coords):
            continue
        sep = min((abs(zc - complex(w)) for w in approx if w is not z), default=1.0)
        h = max(min(sep / 3, 1e-3), 1e-9)
        # slightly asymmetric frame keeps the root off the boundary
        boxes.append(
            (
                zc.real - h * 1.0071,
                zc.real + h * 0.9931,
                zc.imag - h * 1.0037,
                zc.imag + h * 0.9963,
            )
        )
    return boxes


def _eval_coords(curve: Curve, ball: ComplexBall):
    try:
        return curve.evaluate(ball)
    except Exception:
        return None, ()


def _cluster_add(clusters, ball, vector, b):
    for entry in clusters:
        if entry[0].overlaps(ball):
            if ball.rad < entry[0].rad:
                entry[0] = ball
            entry[1][tuple(vector)] = b
            return
    clusters.append([ball, {tuple(vector): b}])


def _best_witness(curve, ball, rels, precision):
    """Minimal-height rank-2 subspace among independent relation pairs."""
    vecs = sorted(rels)
    best = None
    coords, _ = _eval_coords(curve, ball)
    if coords is None:
        return None
    phi, _ = phi_coordinates(coords)
    for i in range(len(vecs)):
        for j in range(i + 1, len(vecs)):
            v, w = vecs[i], vecs[j]
            if not _independent(v, w):
                continue
            mat = subspace_matrix((v, w), (rels[v], rels[w]), curve.n)
            h = float(grassmann_height(mat).value)
            key = (h, mat.entries)
            if best is None or key < best[0]:
                res = float(subspace_residual(mat, phi))
                best = (key, mat, (rels[v], rels[w]), res)
    if best is None:
        return None
    _key, mat, bs, res = best
    return CountedPoint(
        parameter=(float(ball.mid.real), float(ball.mid.imag), float(ball.rad)),
        min_height=_key[0],
        witness=mat.entries,
        b_values=bs,
        residual=res,
    )


@dataclass(frozen=True)
class GrowthVerdict:
    slope: float
    verdict: str  # PASS | FAIL | INCONCLUSIVE

    def line(self) -> str:
        return f"slope={self.slope:.4f} verdict={self.verdict}"


def growth_report(cr: CountReport, threshold: float = 0.5) -> GrowthVerdict:
    """Least-squares slope of log(1+N) against log T, with verdict."""
    pairs = [(t, c) for t, c in zip(cr.t_values, cr.counts)]
    if len(pairs) < 3:
        return GrowthVerdict(slope=float("nan"), verdict="INCONCLUSIVE")
    xs = [math.log(t) for t, _ in pairs]
    ys = [math.log1p(c) for _, c in pairs]
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    sxx = sum((x - mx) ** 2 for x in xs)
    if sxx == 0:
        return GrowthVerdict(slope=float("nan"), verdict="INCONCLUSIVE")
    slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sxx
    return GrowthVerdict(slope=slope, verdict="PASS" if slope < threshold else "FAIL")
