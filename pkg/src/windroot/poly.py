"""Complex polynomials with instrumented, memoized Horner evaluation.

The evaluation counter is the cost meter of the whole package: every
root-finding bound downstream is expressed in "polynomial evaluations",
so ``eval`` counts exactly one evaluation per distinct point and serves
repeats from its cache.
"""

from __future__ import annotations

import cmath
import math
import threading
from dataclasses import dataclass, field

__all__ = ["Polynomial", "EvalCounter", "eval", "derivative", "lipschitz_bound"]


@dataclass(frozen=True)
class Polynomial:
    """A polynomial a_0 + a_1 z + ... + a_n z^n over the complex numbers.

    ``coeffs`` is kept in ascending degree order with a nonzero leading
    coefficient.  Trailing zero coefficients are trimmed on construction;
    the zero polynomial and non-finite coefficients are rejected.
    """

    coeffs: tuple[complex, ...]

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coeffs)
        for c in coeffs:
            if not cmath.isfinite(c):
                raise ValueError(f"non-finite coefficient {c!r}")
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if not coeffs:
            raise ValueError("the zero polynomial is not representable")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_json(cls, data: dict) -> "Polynomial":
        """Build from ``{"coeffs": [[re, im], ...]}`` in ascending degree order."""
        try:
            pairs = data["coeffs"]
            coeffs = tuple(complex(float(re), float(im)) for re, im in pairs)
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed polynomial JSON: {exc}") from exc
        return cls(coeffs)


@dataclass
class EvalCounter:
    """Evaluation meter with a point -> value memo for a single polynomial.

    ``evaluations`` increments exactly once per cache miss and never on a
    hit.  A counter must not be shared between different polynomials (the
    cache is keyed by the point alone).  Concurrent use is safe: misses
    are settled under an internal lock, so racing lookups of the same
    point yield one evaluation and identical values.
    """

    evaluations: int = 0
    cache: dict[complex, complex] = field(default_factory=dict)

    def __post_init__(self):
        self._lock = threading.Lock()


def _horner(coeffs: tuple[complex, ...], z: complex) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def eval(f: Polynomial, z: complex, ctr: EvalCounter | None = None) -> complex:
    """Return f(z) by the Horner recurrence, memoized through ``ctr``.

    With ``ctr=None`` the evaluation is neither counted nor cached.
    Results are bit-identical for identical ``z`` across calls.
    """
    z = complex(z)
    if ctr is None:
        return _horner(f.coeffs, z)
    hit = ctr.cache.get(z)
    if hit is not None:
        return hit
    with ctr._lock:
        hit = ctr.cache.get(z)
        if hit is not None:
            return hit
        value = _horner(f.coeffs, z)
        ctr.cache[z] = value
        ctr.evaluations += 1
    return value


def derivative(f: Polynomial) -> Polynomial:
    """Return f' by the power rule; requires degree >= 1."""
    if f.degree < 1:
        raise ValueError("derivative requires a polynomial of degree >= 1")
    return Polynomial(tuple((k + 1) * c for k, c in enumerate(f.coeffs[1:])))


def lipschitz_bound(f: Polynomial, region) -> float:
    """A certified upper bound for sup |f'| over the boundary of ``region``.

    Computed as sum_k k*|a_k|*R^(k-1) where R is the largest corner
    modulus of the region's axis-aligned envelope: the triangle
    inequality makes this dominate |f'(z)| on the whole disk |z| <= R,
    which contains the region.  Any upper bound on the true supremum is
    acceptable wherever a Lipschitz constant is consumed.
    """
    vertices = region.vertices
    if not vertices:
        raise ValueError("Lipschitz bound needs a nonempty region")
    xs = [v.real for v in vertices]
    ys = [v.imag for v in vertices]
    corners = ((x, y) for x in (min(xs), max(xs)) for y in (min(ys), max(ys)))
    radius = max(math.hypot(x, y) for x, y in corners)
    return sum(
        k * abs(c) * radius ** (k - 1) for k, c in enumerate(f.coeffs) if k >= 1
    )
