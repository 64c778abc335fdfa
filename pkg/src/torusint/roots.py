"""Certified complex root isolation for integer polynomials.

Strategy: square-free factorization, floating root approximation through
the companion-matrix solver in mpmath, ball-certified Newton refinement,
then an a-posteriori inclusion certificate: for a degree-m squarefree
polynomial q and any point z, the disk of radius m*|q(z)/q'(z)| around z
contains at least one root (log-derivative pigeonhole).  If the m disks
are pairwise disjoint each contains exactly one root.  Precision doubles
until the disks are disjoint and below the requested radius.
"""

from __future__ import annotations

import mpmath as mp

from .balls import ComplexBall, eval_poly_ball
from .errors import InvalidInputError
from .polys import IntPolynomial, squarefree_decomposition
from .precision import DEFAULT_CAP, ladder


def _approx_roots(coeffs, prec):
    with mp.workprec(prec):
        return mp.polyroots(
            [mp.mpf(c) for c in reversed(coeffs)], maxsteps=200, extraprec=prec
        )


def _newton_refine(coeffs, dcoeffs, z, prec, steps=6):
    with mp.workprec(prec):
        for _ in range(steps):
            pz = mp.polyval([mp.mpf(c) for c in reversed(coeffs)], z)
            dz = mp.polyval([mp.mpf(c) for c in reversed(dcoeffs)], z)
            if dz == 0:
                break
            z = z - pz / dz
        return z


def _certified_disk(q: IntPolynomial, dq: IntPolynomial, z, prec):
    """Ball around z certified to contain >= 1 root of squarefree q."""
    with mp.workprec(prec + 32):
        zb = ComplexBall(mp.mpc(z), mp.mpf(0), prec)
        num = eval_poly_ball(q.coeffs, zb).abs_upper()
        den = eval_poly_ball(dq.coeffs, zb).abs_lower()
        if den <= 0:
            return None
        return ComplexBall(zb.mid, q.degree * num / den, prec)


def isolate_squarefree(q: IntPolynomial, precision: int, cap: int = DEFAULT_CAP):
    """Disjoint certified balls, one per root of squarefree q."""
    if q.degree < 1:
        return []
    dq = q.derivative()
    target = mp.ldexp(1, -precision)
    for prec in ladder(max(128, 2 * precision), cap):
        try:
            approx = _approx_roots(q.coeffs, prec)
        except (mp.libmp.NoConvergence, ZeroDivisionError):
            continue
        balls = []
        ok = True
        for z in approx:
            z = _newton_refine(q.coeffs, dq.coeffs, z, prec)
            ball = _certified_disk(q, dq, z, prec)
            if ball is None or not ball.rad < target:
                ok = False
                break
            balls.append(ball)
        if not ok:
            continue
        if all(
            balls[i].disjoint(balls[j])
            for i in range(len(balls))
            for j in range(i + 1, len(balls))
        ):
            return sorted(balls, key=lambda b: (b.mid.real, b.mid.imag))
    raise AssertionError("unreachable")  # ladder raises on exhaustion


def isolate_roots(p: IntPolynomial, precision: int = 64, cap: int = DEFAULT_CAP):
    """All roots of p as certified balls, repeated with multiplicity.

    Balls of distinct roots are pairwise disjoint; each ball contains
    exactly one distinct root and has radius below 2^-precision.
    """
    if p.is_zero:
        raise InvalidInputError("cannot isolate roots of the zero polynomial")
    if precision < 64:
        raise InvalidInputError("precision must be at least 64 bits")
    factors = squarefree_decomposition(p)
    prec = precision
    while True:
        distinct, out = [], []
        for factor, mult in factors:
            for ball in isolate_squarefree(factor, prec, cap):
                distinct.append(ball)
                out.extend([ball] * mult)
        if all(
            distinct[i].disjoint(distinct[j])
            for i in range(len(distinct))
            for j in range(i + 1, len(distinct))
        ):
            return sorted(out, key=lambda b: (b.mid.real, b.mid.imag))
        # roots of different squarefree factors too close: tighten and retry
        prec *= 2
        if prec > cap:
            from .errors import PrecisionExhaustedError

            raise PrecisionExhaustedError("cross-factor separation failed at cap")


def contains_root_of(ball: ComplexBall, p: IntPolynomial) -> bool:
    """Interval check: does evaluating p on the ball contain zero?"""
    return eval_poly_ball(p.coeffs, ball).contains_zero()


# ---------------------------------------------------------------------------
# argument-principle counting on rectangles
# ---------------------------------------------------------------------------
class BoundaryRootError(Exception):
    """A root sits on (or too close to) the rectangle boundary."""


def _edge_arg_variation(coeffs, rev_mpf, z0, z1, prec, depth=0, max_depth=48):
    """Certified change of arg q(z) along the segment z0 -> z1.

    The segment is enclosed in a ball; if q on that ball excludes zero
    with radius/|mid| <= sin(pi/4), the argument cannot vary by more than
    pi/2 on the segment, so the principal difference of the endpoint
    arguments is the true variation.  Otherwise bisect.
    """
    if depth > max_depth:
        raise BoundaryRootError("argument variation did not localize")
    mid = (z0 + z1) / 2
    seg = ComplexBall(mid, abs(z1 - z0) / 2, prec)
    v = eval_poly_ball(coeffs, seg)
    lo = v.abs_lower()
    if lo > 0 and v.rad / lo <= mp.mpf(1) / mp.sqrt(2):
        a0 = mp.arg(mp.polyval(rev_mpf, z0))
        a1 = mp.arg(mp.polyval(rev_mpf, z1))
        d = a1 - a0
        while d > mp.pi:
            d -= 2 * mp.pi
        while d <= -mp.pi:
            d += 2 * mp.pi
        return d
    return _edge_arg_variation(
        coeffs, rev_mpf, z0, mid, prec, depth + 1, max_depth
    ) + _edge_arg_variation(coeffs, rev_mpf, mid, z1, prec, depth + 1, max_depth)


def winding_number(p: IntPolynomial, rect, prec: int = 64) -> int:
    """Number of roots of p (with multiplicity) inside an open rectangle.

    rect = (x0, x1, y0, y1).  Certified by the argument principle: the
    boundary argument variation is accumulated over segments on which the
    variation is provably below pi/2.  Raises BoundaryRootError when a
    root prevents the boundary from being resolved.
    """
    x0, x1, y0, y1 = rect
    with mp.workprec(prec):
        rev_mpf = [mp.mpf(c) for c in reversed(p.coeffs)]
        c0 = mp.mpc(x0, y0)
        c1 = mp.mpc(x1, y0)
        c2 = mp.mpc(x1, y1)
        c3 = mp.mpc(x0, y1)
        total = mp.mpf(0)
        for a, b in ((c0, c1), (c1, c2), (c2, c3), (c3, c0)):
            total += _edge_arg_variation(p.coeffs, rev_mpf, a, b, prec)
        w = total / (2 * mp.pi)
        k = int(mp.nint(w))
        if abs(w - k) > 0.25:
            raise BoundaryRootError("non-integral winding number")
        return k


def cauchy_root_bound(p: IntPolynomial) -> float:
    """All complex roots of p lie in |z| < this bound."""
    lead = abs(p.leading)
    return 1.0 + max(abs(c) for c in p.coeffs) / lead


def isolate_roots_winding(
    p: IntPolynomial,
    rect=None,
    rects=None,
    precision: int = 64,
    cap: int = DEFAULT_CAP,
    max_splits: int = 20000,
):
    """Certified root balls of p (with multiplicities) inside one or more
    rectangles, found by winding-number rectangle subdivision.

    Subdivision is seeded at floating approximations of the roots, but
    every reported root is certified by an argument-principle count of 1
    on its own rectangle, cross-checked against the count on the
    enclosing rectangle.  Returns a list of (ComplexBall, multiplicity);
    a root covered by several overlapping rectangles is reported once.
    """
    if p.is_zero:
        raise InvalidInputError("cannot isolate roots of the zero polynomial")
    if p.degree < 1:
        return []
    if rects is None:
        rects = [rect]
    out = []
    for factor, mult in squarefree_decomposition(p):
        if factor.degree < 1:
            continue
        for ball in _winding_isolate_squarefree(
            factor, rects, precision, cap, max_splits
        ):
            out.append((ball, mult))
    return sorted(out, key=lambda bm: (bm[0].mid.real, bm[0].mid.imag))


def _winding_isolate_squarefree(q, rects, precision, cap, max_splits):
    bound = cauchy_root_bound(q)
    # irrational-flavoured margin so roots do not land on the boundary
    pad = 0.0137152698 * (1 + math_sqrt2)
    rects = [
        r if r is not None else (-bound - pad, bound + pad, -bound - pad, bound + pad)
        for r in rects
    ]
    target = mp.ldexp(1, -precision)
    dq = q.derivative()
    for prec in ladder(max(96, 2 * precision), cap):
        # counting tolerates far less precision than the inclusion disks
        wprec = max(64, prec - 96)
        try:
            approx = _approx_roots(q.coeffs, wprec)
        except (mp.libmp.NoConvergence, ZeroDivisionError):
            approx = []
        balls = []
        ok = True
        for rect in rects:
            try:
                boxes = _boxes_in_rect(q, rect, wprec, max_splits, approx, pad)
            except BoundaryRootError:
                rects = [_nudge(r, pad / 7) for r in rects]
                ok = False
                break
            except (mp.libmp.NoConvergence, ZeroDivisionError):
                ok = False
                break
            for box, w in boxes:
                if w != 1:  # squarefree: clusters must resolve to simple roots
                    ok = False
                    break
                z = mp.mpc((box[0] + box[1]) / 2, (box[2] + box[3]) / 2)
                z = _newton_refine(q.coeffs, dq.coeffs, z, prec, steps=10)
                ball = _certified_disk(q, dq, z, prec)
                if ball is None or not ball.rad < target:
                    ok = False
                    break
                if not any(ball.overlaps(b) for b in balls):
                    balls.append(ball)
            if not ok:
                break
        if not ok:
            continue
        if all(
            balls[i].disjoint(balls[j])
            for i in range(len(balls))
            for j in range(i + 1, len(balls))
        ):
            return sorted(balls, key=lambda b: (b.mid.real, b.mid.imag))
    raise AssertionError("unreachable")  # ladder raises on exhaustion


def _boxes_in_rect(q, rect, wprec, max_splits, approx, pad):
    """Certified (box, winding) list covering all roots of q in rect."""
    for _ in range(4):
        try:
            expected = winding_number(q, rect, wprec)
            break
        except BoundaryRootError:
            rect = _nudge(rect, pad / 11)
    else:
        raise BoundaryRootError("rectangle frame would not settle")
    if expected == 0:
        return []
    boxes = _subdivide(q, rect, wprec, max_splits, approx)
    if sum(w for _, w in boxes) != expected:
        raise BoundaryRootError("seeded boxes missed a root")
    return boxes


def _nudge(rect, eps):
    x0, x1, y0, y1 = rect
    return (x0 - eps, x1 + eps, y0 - eps, y1 + eps)


def _subdivide(q, rect, prec, max_splits, approx):
    """Seeded winding subdivision: tight rectangles around floating roots
    first, then quadtree refinement if any root remains unaccounted for."""
    x0, x1, y0, y1 = rect
    seeds = []
    inside = [
        z for z in approx if x0 < z.real < x1 and y0 < z.imag < y1
    ]
    for z in inside:
        sep = min(
            (abs(z - w) for w in approx if w is not z), default=mp.mpf(1)
        )
        h = float(max(min(sep / 4, mp.mpf("1e-4")), mp.mpf("1e-12")))
        seeds.append(
            (float(z.real) - h, float(z.real) + h, float(z.imag) - h, float(z.imag) + h)
        )
    boxes = []
    budget = [max_splits]
    claimed = 0
    for s in seeds:
        try:
            w = winding_number(q, s, prec)
        except BoundaryRootError:
            w = 0
        if w > 0:
            boxes.append((s, w))
            claimed += w
    total = winding_number(q, rect, prec)
    if claimed != total:
        # fall back to honest quadtree on the full rectangle
        boxes = []
        _quadtree(q, rect, prec, boxes, budget)
    return boxes


def _quadtree(q, rect, prec, out, budget, min_width=1e-10):
    if budget[0] <= 0:
        raise BoundaryRootError("subdivision budget exhausted")
    budget[0] -= 1
    w = winding_number(q, rect, prec)
    if w == 0:
        return
    x0, x1, y0, y1 = rect
    if (x1 - x0) < min_width and (y1 - y0) < min_width:
        out.append((rect, w))
        return
    # asymmetric split ratio keeps roots off the cut lines generically
    xm = x0 + (x1 - x0) * 0.5000419
    ym = y0 + (y1 - y0) * 0.5000419
    for sub in (
        (x0, xm, y0, ym),
        (xm, x1, y0, ym),
        (x0, xm, ym, y1),
        (xm, x1, ym, y1),
    ):
        # a root on a cut line propagates BoundaryRootError upward; the
        # caller reframes the outer rectangle, moving every cut line
        _quadtree(q, sub, prec, out, budget, min_width)


math_sqrt2 = 2**0.5
