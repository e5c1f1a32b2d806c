"""Convex plane regions and the angular-sector machinery.

Regions are convex polygons with counterclockwise vertex order (plus a
distinguished empty region).  This module measures their axis-aligned
diameters, cuts them with horizontal/vertical lines offset from the
midline between supporting lines, parameterizes their border by arc
length, and classifies nonzero complex values into the eight half-open
sectors of angle pi/4 used by the winding-number tests.
"""

from __future__ import annotations

import cmath
import math
from bisect import bisect_right
from dataclasses import dataclass

from .errors import SingularPointError

__all__ = [
    "SIN_PI_8",
    "ConvexRegion",
    "EMPTY",
    "BoundaryCurve",
    "diam_h",
    "diam_v",
    "diam_rect",
    "envelope",
    "contains",
    "cut",
    "boundary",
    "sector_of",
    "connected",
    "net_crossings",
]

# Sine of half the sector angle pi/4.  Two non-connected sectors are
# separated by more than pi/4, so a chord seen from the origin under that
# angle has length at least 2*sin(pi/8) times the nearer endpoint's
# modulus; every singularity guarantee downstream rests on this constant.
SIN_PI_8 = math.sin(math.pi / 8.0)

# Cross products at vertices inserted by cut() carry double-precision
# rounding noise; convexity validation tolerates this much, relative to
# the adjacent edge lengths.
_CONVEXITY_RTOL = 1e-9
# Cut parts thinner than this fraction of the parent's diam_rect (in the
# cut direction) collapse to the empty region, and vertices closer than
# this are merged.
_SLIVER_RTOL = 1e-14


@dataclass(frozen=True)
class ConvexRegion:
    """Convex polygon with vertices in counterclockwise order.

    The empty region is represented by an empty vertex tuple (see the
    module constant ``EMPTY``); all its diameters are zero.  Nonempty
    regions need at least three pairwise-distinct consecutive vertices,
    counterclockwise orientation, and convexity (collinear vertices are
    tolerated, reflex ones are not).
    """

    vertices: tuple[complex, ...]

    def __post_init__(self):
        vertices = tuple(complex(v) for v in self.vertices)
        for v in vertices:
            if not cmath.isfinite(v):
                raise ValueError(f"non-finite vertex {v!r}")
        object.__setattr__(self, "vertices", vertices)
        if not vertices:
            return
        n = len(vertices)
        if n < 3:
            raise ValueError("a nonempty region needs at least 3 vertices")
        for i in range(n):
            if vertices[i] == vertices[(i + 1) % n]:
                raise ValueError(f"repeated consecutive vertex {vertices[i]!r}")
        area2 = 0.0
        for i in range(n):
            a, b = vertices[i], vertices[(i + 1) % n]
            area2 += a.real * b.imag - b.real * a.imag
        if area2 <= 0.0:
            raise ValueError("vertices must wind counterclockwise")
        for i in range(n):
            e1 = vertices[(i + 1) % n] - vertices[i]
            e2 = vertices[(i + 2) % n] - vertices[(i + 1) % n]
            cross = e1.real * e2.imag - e1.imag * e2.real
            if cross < -_CONVEXITY_RTOL * abs(e1) * abs(e2):
                raise ValueError("polygon is not convex")

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @classmethod
    def from_json(cls, data: dict) -> "ConvexRegion":
        """Build from ``{"vertices": [[x, y], ...]}`` or ``{"rect": [x0, y0, x1, y1]}``."""
        try:
            if "rect" in data:
                x0, y0, x1, y1 = (float(c) for c in data["rect"])
                x0, x1 = min(x0, x1), max(x0, x1)
                y0, y1 = min(y0, y1), max(y0, y1)
                if x0 == x1 or y0 == y1:
                    raise ValueError("rectangle has zero width or height")
                return cls(
                    (
                        complex(x0, y0),
                        complex(x1, y0),
                        complex(x1, y1),
                        complex(x0, y1),
                    )
                )
            pairs = data["vertices"]
            return cls(tuple(complex(float(x), float(y)) for x, y in pairs))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed region JSON: {exc}") from exc


EMPTY = ConvexRegion(())


def diam_h(region: ConvexRegion) -> float:
    """Horizontal diameter: distance between the vertical supporting lines."""
    if region.is_empty:
        return 0.0
    xs = [v.real for v in region.vertices]
    return max(xs) - min(xs)


def diam_v(region: ConvexRegion) -> float:
    """Vertical diameter: distance between the horizontal supporting lines."""
    if region.is_empty:
        return 0.0
    ys = [v.imag for v in region.vertices]
    return max(ys) - min(ys)


def diam_rect(region: ConvexRegion) -> float:
    """Rectangular diameter sqrt(diam_h^2 + diam_v^2); bounds the classical one."""
    return math.hypot(diam_h(region), diam_v(region))


def envelope(region: ConvexRegion) -> tuple[float, float, float, float]:
    """Axis-aligned envelope (x0, y0, x1, y1) of a nonempty region."""
    if region.is_empty:
        raise ValueError("empty region has no envelope")
    xs = [v.real for v in region.vertices]
    ys = [v.imag for v in region.vertices]
    return min(xs), min(ys), max(xs), max(ys)


def contains(region: ConvexRegion, z: complex, tol: float = 0.0) -> bool:
    """True iff ``z`` is within signed distance ``-tol`` of every edge's inside."""
    if region.is_empty:
        return False
    vs = region.vertices
    n = len(vs)
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        e = b - a
        cross = e.real * (z.imag - a.imag) - e.imag * (z.real - a.real)
        if cross < -tol * abs(e):
            return False
    return True


def _finish_part(
    raw: list[complex], horizontal: bool, parent_dr: float
) -> ConvexRegion:
    """Merge near-coincident vertices and collapse slivers to EMPTY."""
    tol = _SLIVER_RTOL * parent_dr
    pts: list[complex] = []
    for p in raw:
        if pts and abs(p - pts[-1]) <= tol:
            continue
        pts.append(p)
    while len(pts) >= 2 and abs(pts[0] - pts[-1]) <= tol:
        pts.pop()
    if len(pts) < 3:
        return EMPTY
    coords = [p.imag if horizontal else p.real for p in pts]
    if max(coords) - min(coords) < tol:
        return EMPTY
    return ConvexRegion(tuple(pts))


def cut(
    region: ConvexRegion, axis: str, lam: float
) -> tuple[ConvexRegion, ConvexRegion]:
    """Split by the line at signed distance ``lam`` from the region's midline.

    ``axis="horizontal"`` cuts along y = midline + lam and returns
    (top, bottom); ``axis="vertical"`` cuts along x = midline + lam and
    returns (left, right).  The midline lies halfway between the two
    supporting lines perpendicular to the cut axis.  The parts partition
    the region up to the shared cut segment (shared vertices are
    bit-identical); a part that degenerates is the empty region.
    """
    if axis not in ("horizontal", "vertical"):
        raise ValueError(f"axis must be 'horizontal' or 'vertical', got {axis!r}")
    if region.is_empty:
        return EMPTY, EMPTY
    horizontal = axis == "horizontal"
    vs = region.vertices
    coords = [v.imag if horizontal else v.real for v in vs]
    level = (min(coords) + max(coords)) / 2.0 + lam
    parent_dr = diam_rect(region)

    upper: list[complex] = []  # y >= level side (top), or x >= level (right)
    lower: list[complex] = []  # y <= level side (bottom), or x <= level (left)
    n = len(vs)
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        da = (a.imag if horizontal else a.real) - level
        db = (b.imag if horizontal else b.real) - level
        if da >= 0.0:
            upper.append(a)
        if da <= 0.0:
            lower.append(a)
        if (da > 0.0 > db) or (da < 0.0 < db):
            t = da / (da - db)
            if horizontal:
                p = complex(a.real + t * (b.real - a.real), level)
            else:
                p = complex(level, a.imag + t * (b.imag - a.imag))
            upper.append(p)
            lower.append(p)

    up = _finish_part(upper, horizontal, parent_dr)
    lo = _finish_part(lower, horizontal, parent_dr)
    return (up, lo) if horizontal else (lo, up)


class BoundaryCurve:
    """Unit-speed counterclockwise traversal of a polygon border.

    The parameter runs over ``[0, perimeter]``, starting and ending —
    exactly — at the lexicographically smallest vertex.  Evaluation at a
    vertex parameter returns that vertex bit-exactly; between vertices it
    interpolates linearly, so ``|G(t2) - G(t1)| <= t2 - t1`` up to
    rounding.  ``vertex_params`` lists every vertex parameter including
    both endpoints 0 and ``perimeter``.
    """

    __slots__ = ("region", "perimeter", "_points", "_cum", "_lens")

    def __init__(self, region: ConvexRegion):
        if region.is_empty:
            raise ValueError("empty region has no boundary curve")
        vs = region.vertices
        start = min(range(len(vs)), key=lambda i: (vs[i].real, vs[i].imag))
        pts = vs[start:] + vs[:start] + (vs[start],)
        lens = tuple(abs(b - a) for a, b in zip(pts, pts[1:]))
        cum = [0.0]
        for length in lens:
            cum.append(cum[-1] + length)
        self.region = region
        self._points = pts
        self._lens = lens
        self._cum = tuple(cum)
        self.perimeter = cum[-1]

    @property
    def vertex_params(self) -> tuple[float, ...]:
        return self._cum

    @property
    def points(self) -> tuple[complex, ...]:
        """Vertices in traversal order, the closing duplicate included."""
        return self._points

    def __call__(self, t: float) -> complex:
        if not 0.0 <= t <= self.perimeter:
            raise ValueError(f"parameter {t!r} outside [0, {self.perimeter!r}]")
        if t == 0.0 or t == self.perimeter:
            return self._points[0]
        i = bisect_right(self._cum, t) - 1
        s = t - self._cum[i]
        if s == 0.0:
            return self._points[i]
        a, b = self._points[i], self._points[i + 1]
        return a + (s / self._lens[i]) * (b - a)

    def __repr__(self) -> str:
        return (
            f"BoundaryCurve(perimeter={self.perimeter!r}, "
            f"vertices={len(self.region.vertices)})"
        )


def boundary(region: ConvexRegion) -> BoundaryCurve:
    """Arc-length parameterization of a nonempty region's border."""
    return BoundaryCurve(region)


def sector_of(w: complex) -> int:
    """Index k in 0..7 with arg(w) in [k*pi/4, (k+1)*pi/4), arg taken in [0, 2*pi).

    Decided by sign tests and exact coordinate comparisons only, so
    boundary rays classify deterministically with no trigonometry.
    Raises SingularPointError for w = 0.
    """
    x, y = w.real, w.imag
    if x == 0.0 and y == 0.0:
        raise SingularPointError()
    if not cmath.isfinite(w):
        raise ValueError(f"cannot classify non-finite value {w!r}")
    if x > 0.0 and 0.0 <= y < x:
        return 0
    if x > 0.0 and y >= x:
        return 1
    if x <= 0.0 and y > -x:
        return 2
    if y > 0.0 and y <= -x:
        return 3
    if x < 0.0 and x < y <= 0.0:
        return 4
    if x < 0.0 and y <= x:
        return 5
    if y < 0.0 and 0.0 <= x < -y:
        return 6
    return 7  # remaining case: y < 0 and x >= -y


def connected(ka: int, kb: int) -> bool:
    """True iff sectors ka, kb are equal or adjacent modulo 8."""
    return (ka - kb) % 8 in (0, 1, 7)


def net_crossings(sectors) -> int:
    """Signed crossing count over consecutive pairs of a closed sector sequence.

    A step from sector 7 to sector 0 counts +1, from 0 to 7 counts -1;
    all other (connected) steps count 0.  The sequence must already close
    on itself (first element equals last).
    """
    total = 0
    for a, b in zip(sectors, sectors[1:]):
        if a == 7 and b == 0:
            total += 1
        elif a == 0 and b == 7:
            total -= 1
    return total
