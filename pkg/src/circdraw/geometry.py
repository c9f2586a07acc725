"""Exact rational plane geometry: orientation, segment intersection, polygons."""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key

Point = tuple[Fraction, Fraction]


def as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def point(x, y) -> Point:
    return (as_fraction(x), as_fraction(y))


def circle_point(t) -> Point:
    """Rational point on the unit circle for parameter ``t``."""
    t = as_fraction(t)
    d = 1 + t * t
    return ((1 - t * t) / d, 2 * t / d)


def sub(a: Point, b: Point) -> Point:
    return (a[0] - b[0], a[1] - b[1])


def cross(u, v) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def dot(u, v) -> Fraction:
    return u[0] * v[0] + u[1] * v[1]


def orient(o: Point, a: Point, b: Point) -> int:
    """Sign of the turn o -> a -> b (1 = counterclockwise)."""
    c = cross(sub(a, o), sub(b, o))
    return (c > 0) - (c < 0)


def on_open_segment(p: Point, a: Point, b: Point) -> bool:
    """``p`` lies strictly between ``a`` and ``b`` on the segment ab."""
    if orient(a, b, p) != 0:
        return False
    d = dot(sub(p, a), sub(b, a))
    return 0 < d < dot(sub(b, a), sub(b, a))


def segment_intersection(a: Point, b: Point, c: Point, d: Point) -> Point | None:
    """Point where the open segments ab and cd properly cross, else ``None``.

    Collinear overlaps are not crossings here; callers that must reject them
    check with :func:`collinear_overlap`.
    """
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 * o2 >= 0 or o3 * o4 >= 0:
        return None
    r = sub(b, a)
    s = sub(d, c)
    lam = cross(sub(c, a), s) / cross(r, s)
    return (a[0] + lam * r[0], a[1] + lam * r[1])


def collinear_overlap(a: Point, b: Point, c: Point, d: Point) -> bool:
    if orient(a, b, c) or orient(a, b, d):
        return False
    return (on_open_segment(c, a, b) or on_open_segment(d, a, b)
            or on_open_segment(a, c, d) or on_open_segment(b, c, d)
            or {a, b} == {c, d})


def param_along(p: Point, a: Point, b: Point) -> Fraction:
    """Affine parameter of ``p`` on the line from ``a`` (0) to ``b`` (1)."""
    r = sub(b, a)
    return dot(sub(p, a), r) / dot(r, r)


def _half(v) -> int:
    return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1


def angle_cmp(u, v) -> int:
    """Compare direction vectors by counterclockwise angle from the +x axis."""
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return hu - hv
    c = cross(u, v)
    return -1 if c > 0 else (1 if c < 0 else 0)


angle_key = cmp_to_key(angle_cmp)


def signed_area2(poly: list[Point]) -> Fraction:
    """Twice the signed area of a closed polygon (shoelace)."""
    total = Fraction(0)
    k = len(poly)
    for i in range(k):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % k]
        total += x1 * y2 - x2 * y1
    return total


def point_in_polygon(p: Point, poly: list[Point]) -> bool:
    """Strict interior test by crossing parity; boundary points count as outside."""
    inside = False
    k = len(poly)
    for i in range(k):
        a, b = poly[i], poly[(i + 1) % k]
        if a == p or on_open_segment(p, a, b):
            return False
        if (a[1] > p[1]) != (b[1] > p[1]):
            x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1])
            if x > p[0]:
                inside = not inside
    return inside


def centroid(points) -> Point:
    pts = list(points)
    n = len(pts)
    return (sum((q[0] for q in pts), Fraction(0)) / n,
            sum((q[1] for q in pts), Fraction(0)) / n)


def frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_frac(s) -> Fraction:
    return Fraction(s) if not isinstance(s, Fraction) else s
