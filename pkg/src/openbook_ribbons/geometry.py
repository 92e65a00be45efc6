"""Exact rational helpers for piecewise-linear geometry on the unit torus.

Points are pairs ``(theta, z)`` of :class:`fractions.Fraction` reduced to
``[0, 1)``.  A segment between two canonical points is always read as the
*shortest lift*: each coordinate difference is taken in ``(-1/2, 1/2]``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional, Tuple

Point = Tuple[Fraction, Fraction]

HALF = Fraction(1, 2)


def frac(value) -> Fraction:
    """Coerce ``value`` (int, str ``p/q``, Fraction) to a Fraction.

    Floats are rejected; every coordinate in this package is exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def wrap(x) -> Fraction:
    """Canonical representative of ``x`` modulo 1 in ``[0, 1)``."""
    x = frac(x)
    return x - math.floor(x)


def lift(d) -> Fraction:
    """Representative of ``d`` modulo 1 in ``(-1/2, 1/2]``."""
    d = wrap(d)
    return d - 1 if d > HALF else d


def point(theta, z) -> Point:
    return (wrap(theta), wrap(z))


def delta(p: Point, q: Point) -> Point:
    return (lift(q[0] - p[0]), lift(q[1] - p[1]))


def fmt(x: Fraction) -> str:
    return str(x)


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Rational with the smallest denominator strictly inside ``(lo, hi)``.

    Ties on the denominator go to the smallest numerator in absolute value.
    Walks the Stern-Brocot tree, so the result is deterministic.
    """
    lo, hi = frac(lo), frac(hi)
    if not lo < hi:
        raise ValueError("empty interval")
    fl = math.floor(lo)
    if fl + 1 < hi:
        # an integer fits; pick the one closest to zero
        candidates = range(fl + 1, math.ceil(hi))
        return Fraction(min(candidates, key=abs))
    # reduce to (lo - fl, hi - fl) inside (0, 1]
    a, b = lo - fl, hi - fl
    # a in [0,1), b in (a, 1]; search with mediants
    p0, q0, p1, q1 = 0, 1, 1, 1  # left = 0/1, right = 1/1
    while True:
        p, q = p0 + p1, q0 + q1
        m = Fraction(p, q)
        if m <= a:
            # move left bound right as far as possible in one jump
            k = _jump(p0, q0, p1, q1, a, left=True)
            p0, q0 = p0 + k * p1, q0 + k * q1
        elif m >= b:
            k = _jump(p0, q0, p1, q1, b, left=False)
            p1, q1 = p1 + k * p0, q1 + k * q0
        else:
            return fl + m


def _jump(p0, q0, p1, q1, bound, left):
    # largest k >= 1 with the mediant chain still on the same side of bound
    k = 1
    while True:
        nk = k * 2
        if left:
            m = Fraction(p0 + nk * p1, q0 + nk * q1)
            ok = m <= bound
        else:
            m = Fraction(p1 + nk * p0, q1 + nk * q0)
            ok = m >= bound
        if not ok:
            break
        k = nk
    lo_k, hi_k = k, 2 * k
    while hi_k - lo_k > 1:
        mid = (lo_k + hi_k) // 2
        if left:
            ok = Fraction(p0 + mid * p1, q0 + mid * q1) <= bound
        else:
            ok = Fraction(p1 + mid * p0, q1 + mid * q0) >= bound
        if ok:
            lo_k = mid
        else:
            hi_k = mid
    return lo_k


def cross(a: Point, b: Point) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def plane_segment_intersection(p: Point, r: Point, q: Point, w: Point):
    """Intersect ``p + s r`` and ``q + u w`` for ``s, u`` in ``[0, 1]``.

    Returns ``None`` for no contact, ``(s, u)`` for a single point and the
    string ``"overlap"`` for collinear segments sharing more than a point.
    """
    rxw = cross(r, w)
    qp = (q[0] - p[0], q[1] - p[1])
    if rxw != 0:
        s = cross(qp, w) / rxw
        u = cross(qp, r) / rxw
        if 0 <= s <= 1 and 0 <= u <= 1:
            return (s, u)
        return None
    if cross(qp, r) != 0:
        return None
    rr = r[0] * r[0] + r[1] * r[1]
    if rr == 0:
        return None
    t0 = (qp[0] * r[0] + qp[1] * r[1]) / rr
    t1 = t0 + (w[0] * r[0] + w[1] * r[1]) / rr
    lo, hi = min(t0, t1), max(t0, t1)
    lo, hi = max(lo, Fraction(0)), min(hi, Fraction(1))
    if lo > hi:
        return None
    if lo == hi:
        s = lo
        ww = w[0] * w[0] + w[1] * w[1]
        pt = (p[0] + s * r[0] - q[0], p[1] + s * r[1] - q[1])
        u = (pt[0] * w[0] + pt[1] * w[1]) / ww if ww else Fraction(0)
        return (s, u)
    return "overlap"


def torus_segment_intersections(p: Point, r: Point, q: Point, w: Point):
    """All contacts between two short segments on the unit torus.

    ``p``/``q`` are canonical start points, ``r``/``w`` the (lifted) deltas.
    Yields ``(s, u)`` parameter pairs or ``"overlap"``.
    """
    out = []
    for i in (-1, 0, 1):
        for j in (-1, 0, 1):
            hit = plane_segment_intersection(p, r, (q[0] + i, q[1] + j), w)
            if hit is not None:
                out.append(hit)
    return out


def along(p: Point, r: Point, s: Fraction) -> Point:
    return point(p[0] + s * r[0], p[1] + s * r[1])


def slope(d: Point) -> Optional[Fraction]:
    """dz/dtheta of a delta; ``None`` for vertical."""
    if d[0] == 0:
        return None
    return d[1] / d[0]


def sign(x) -> int:
    return (x > 0) - (x < 0)


def cyclic_gaps(values: Iterable[Fraction]):
    """Gaps between consecutive distinct values on the circle R/Z."""
    vals = sorted(set(wrap(v) for v in values))
    if not vals:
        return []
    if len(vals) == 1:
        return [Fraction(1)]
    gaps = [b - a for a, b in zip(vals, vals[1:])]
    gaps.append(vals[0] + 1 - vals[-1])
    return gaps


def generic_samples(critical: Iterable[Fraction]):
    """One generic theta per open interval cut out by ``critical``."""
    vals = sorted(set(wrap(v) for v in critical))
    if not vals:
        return [HALF]
    out = []
    for a, b in zip(vals, vals[1:] + [vals[0] + 1]):
        out.append(wrap((a + b) / 2))
    return sorted(out)
