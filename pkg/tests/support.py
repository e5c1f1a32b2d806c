"""Seeded generators and small checks shared across the test suite."""

from __future__ import annotations

import cmath
import math
import random

from windroot import ConvexRegion, Polynomial, boundary, contains
from windroot.oracle import RootList, dist_set_curve


def poly_from_roots(roots, lead: complex = 1 + 0j) -> Polynomial:
    """Expand lead * prod(z - r) into ascending coefficients."""
    cs = [complex(lead)]
    for r in roots:
        nxt = [0j] * (len(cs) + 1)
        for k, c in enumerate(cs):
            nxt[k + 1] += c
            nxt[k] -= r * c
        cs = nxt
    return Polynomial(tuple(cs))


def random_roots(
    rng: random.Random, n: int, *, box: float = 2.0, min_sep: float = 0.3
) -> list[complex]:
    """n points of [-box, box]^2, pairwise at least min_sep apart."""
    roots: list[complex] = []
    while len(roots) < n:
        z = complex(rng.uniform(-box, box), rng.uniform(-box, box))
        if all(abs(z - r) >= min_sep for r in roots):
            roots.append(z)
    return roots


def random_lead(rng: random.Random) -> complex:
    """Leading coefficient with modulus in [0.5, 2] and random phase."""
    return rng.uniform(0.5, 2.0) * cmath.exp(1j * rng.uniform(0.0, 2 * math.pi))


def rect(x0: float, y0: float, x1: float, y1: float) -> ConvexRegion:
    return ConvexRegion.from_json({"rect": [x0, y0, x1, y1]})


def random_rect_clear_of(
    rng: random.Random, roots, *, margin: float = 0.05, tries: int = 500
) -> ConvexRegion:
    """Axis-aligned rectangle whose boundary stays >= margin from every root."""
    zs = RootList(tuple(roots))
    for _ in range(tries):
        x0 = rng.uniform(-3.0, 2.0)
        y0 = rng.uniform(-3.0, 2.0)
        region = rect(x0, y0, x0 + rng.uniform(0.5, 3.5), y0 + rng.uniform(0.5, 3.5))
        if dist_set_curve(zs, boundary(region)) >= margin:
            return region
    raise AssertionError("could not place a rectangle clear of the roots")


def random_instance(rng: random.Random, *, margin: float = 0.05):
    """(f, roots, region): degree 2..10, roots in [-2,2]^2, clear rectangle."""
    roots = random_roots(rng, rng.randint(2, 10))
    f = poly_from_roots(roots, random_lead(rng))
    region = random_rect_clear_of(rng, roots, margin=margin)
    return f, roots, region


def random_convex_polygon(rng: random.Random, k: int | None = None) -> ConvexRegion:
    """Convex polygon with k vertices inscribed in a random ellipse."""
    if k is None:
        k = rng.randint(3, 9)
    while True:
        angles = sorted(rng.uniform(0.0, 2 * math.pi) for _ in range(k))
        gaps = [b - a for a, b in zip(angles, angles[1:])]
        gaps.append(2 * math.pi - (angles[-1] - angles[0]))
        if min(gaps) > 0.05:
            break
    a = rng.uniform(0.5, 3.0)
    b = rng.uniform(0.5, 3.0)
    cx = rng.uniform(-2.0, 2.0)
    cy = rng.uniform(-2.0, 2.0)
    return ConvexRegion(
        tuple(complex(cx + a * math.cos(t), cy + b * math.sin(t)) for t in angles)
    )


def inside_count(roots, region: ConvexRegion) -> int:
    """Roots strictly inside the region, counted with repetition."""
    return sum(1 for r in roots if contains(region, r, 0.0))


def le_rel(a: float, b: float, rtol: float = 1e-12) -> bool:
    """a <= b up to relative slack on the larger magnitude."""
    return a <= b + rtol * max(abs(a), abs(b))
