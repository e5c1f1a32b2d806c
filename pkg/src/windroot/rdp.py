"""Recursive subdivision of a convex region into certified root boxes.

The driver counts the roots inside the region from its boundary winding
number, then recursively quarters the region — one horizontal cut, then
one vertical cut per half — until every piece that still holds roots is
smaller than the requested accuracy.  Cut lines are shifted away from
the midline in fixed trial steps whenever a root sits close enough to
make the boundary winding test fail, so every accepted piece has a
certified count.  All polynomial evaluations go through one shared memo
counter, which the closed-form evaluation budgets refer to.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .errors import InitialRegionSingularError, SubdivisionFailedError
from .geometry import (
    SIN_PI_8,
    ConvexRegion,
    boundary,
    cut,
    diam_rect,
    envelope,
)
from .poly import EvalCounter, Polynomial
from .winding import Normal, SingularError, initial_samples, ipsr

__all__ = [
    "RootBox",
    "RdpConfig",
    "RdpStats",
    "choose_q",
    "divide",
    "rdp",
    "pe_budget",
    "pe_budget_sharp",
]

_SQRT2 = math.sqrt(2.0)
_log = logging.getLogger("windroot.rdp")


@dataclass(frozen=True)
class RootBox:
    """A subregion certified to contain ``count`` roots, with multiplicity."""

    region: ConvexRegion
    count: int

    def __post_init__(self):
        if self.region.is_empty:
            raise ValueError("a root box cannot be empty")
        if self.count < 1:
            raise ValueError("a root box must hold at least one root")


@dataclass(frozen=True)
class RdpConfig:
    """Frozen parameters of one subdivision run.

    ``q`` is the guard width handed to every boundary winding test; it
    must not exceed choose_q(accuracy, n0, n), the largest width for
    which the shifted-cut search is guaranteed to succeed.  ``n0`` is
    the number of roots in the initial region, ``n`` the degree, and
    ``max_level`` the depth at which subdivision refuses to continue.
    """

    accuracy: float
    q: float
    n0: int
    n: int
    max_level: int

    def __post_init__(self):
        if self.accuracy <= 0:
            raise ValueError("accuracy must be positive")
        if self.n0 < 1 or self.n < 1:
            raise ValueError("root count and degree must be at least 1")
        if not 0 < self.q <= choose_q(self.accuracy, self.n0, self.n):
            raise ValueError(
                f"q={self.q!r} exceeds choose_q(accuracy, n0, n)="
                f"{choose_q(self.accuracy, self.n0, self.n)!r}"
            )
        if self.max_level < 0:
            raise ValueError("max_level must be nonnegative")


@dataclass
class RdpStats:
    """Instrumentation of one run.

    ``pe`` is the metered number of distinct polynomial evaluations,
    ``budget`` the closed-form bound it is certified to stay below.
    ``visited`` lists every (level, region) the recursion examined,
    ``ipsr_calls`` one (perimeter, q, insertions) triple per boundary
    winding test, and ``offsets`` every accepted cut-line offset.
    """

    pe: int = 0
    max_level: int = 0
    boxes: int = 0
    budget: float = 0.0
    visited: list[tuple[int, ConvexRegion]] = field(default_factory=list)
    ipsr_calls: list[tuple[float, float, int]] = field(default_factory=list)
    offsets: list[float] = field(default_factory=list)


def choose_q(accuracy: float, n0: int, n: int) -> float:
    """Largest guard width that keeps the shifted-cut search terminating.

    Equals accuracy * sin(pi/8) / (4*sqrt(2)*n0*n); linear in the
    accuracy, decreasing in the root count and the degree.
    """
    return accuracy * SIN_PI_8 / (4.0 * _SQRT2 * n0 * n)


def pe_budget(n0: int, n: int, accuracy: float, dr_p: float) -> float:
    """Simplified certified bound on metered evaluations for a whole run.

    30*n0*n/accuracy + 21*n0*n*(lg2(dr_p/accuracy) + 2), where dr_p is
    the rectangular diameter of the initial region.  Monotone decreasing
    in the accuracy.
    """
    return 30.0 * n0 * n / accuracy + 21.0 * n0 * n * (
        math.log2(dr_p / accuracy) + 2.0
    )


def pe_budget_sharp(n0: int, n: int, accuracy: float, dr_p: float) -> float:
    """Sharper form of the evaluation budget; always below the simplified one.

    8*sqrt(2)*n0*n/(accuracy*sin(pi/8)) +
    (4+sqrt(2))*sqrt(2)*n0*n/sin(pi/8) * (lg2(dr_p/accuracy) + 2).
    """
    levels = math.log2(dr_p / accuracy) + 2.0
    return (
        8.0 * _SQRT2 * n0 * n / (accuracy * SIN_PI_8)
        + (4.0 + _SQRT2) * _SQRT2 * n0 * n / SIN_PI_8 * levels
    )


def _count_part(
    part: ConvexRegion,
    f: Polynomial,
    q: float,
    ctr: EvalCounter,
    calls: list[tuple[float, float, int]],
) -> int | None:
    """Root count of a cut part, or None when its boundary test fails.

    Empty parts hold no roots and need no boundary test.
    """
    if part.is_empty:
        return 0
    curve = boundary(part)
    outcome = ipsr(curve, f, initial_samples(curve), q, ctr)
    calls.append((curve.perimeter, q, outcome.insertions))
    if isinstance(outcome, SingularError):
        return None
    return outcome.index


def _try_cut(
    region: ConvexRegion,
    axis: str,
    f: Polynomial,
    cfg: RdpConfig,
    ctr: EvalCounter,
    calls: list[tuple[float, float, int]],
    offsets: list[float],
) -> tuple[ConvexRegion, ConvexRegion, int, int]:
    """Cut ``region`` along ``axis`` at the first root-free trial line.

    Trial offsets from the midline are 0, +2EQ, -2EQ, +4EQ, -4EQ, ...
    with E = n/sin(pi/8); a line is accepted when the boundary winding
    test returns normally on both parts.  At most n0+2 offsets are
    tried; exhausting them raises SubdivisionFailedError.
    """
    step = 2.0 * cfg.n / SIN_PI_8 * cfg.q
    for k in range(cfg.n0 + 2):
        lam = 0.0 if k == 0 else math.ceil(k / 2) * step * (1 if k % 2 else -1)
        a, b = cut(region, axis, lam)
        ca = _count_part(a, f, cfg.q, ctr, calls)
        if ca is None:
            continue
        cb = _count_part(b, f, cfg.q, ctr, calls)
        if cb is None:
            continue
        offsets.append(lam)
        return a, b, ca, cb
    raise SubdivisionFailedError(
        f"no root-free {axis} cut line after {cfg.n0 + 2} trial offsets "
        f"(region envelope {envelope(region)})"
    )


def _divide(
    region: ConvexRegion,
    f: Polynomial,
    cfg: RdpConfig,
    ctr: EvalCounter,
) -> tuple[
    tuple[ConvexRegion, ConvexRegion, ConvexRegion, ConvexRegion],
    tuple[int, int, int, int],
    list[tuple[float, float, int]],
    list[float],
]:
    """Quarter a region; also return boundary-test traces and accepted offsets."""
    calls: list[tuple[float, float, int]] = []
    offsets: list[float] = []
    top, bottom, _, _ = _try_cut(region, "horizontal", f, cfg, ctr, calls, offsets)
    left_t, right_t, cl_t, cr_t = _try_cut(
        top, "vertical", f, cfg, ctr, calls, offsets
    )
    left_b, right_b, cl_b, cr_b = _try_cut(
        bottom, "vertical", f, cfg, ctr, calls, offsets
    )
    parts = (right_t, left_t, right_b, left_b)
    counts = (cr_t, cl_t, cr_b, cl_b)
    return parts, counts, calls, offsets


def divide(
    region: ConvexRegion,
    f: Polynomial,
    cfg: RdpConfig,
    ctr: EvalCounter,
) -> tuple[
    tuple[ConvexRegion, ConvexRegion, ConvexRegion, ConvexRegion],
    tuple[int, int, int, int],
]:
    """Split a region into four certified parts by one horizontal and two vertical cuts.

    Returns the parts in the order (top-right, top-left, bottom-right,
    bottom-left), some possibly empty with count 0, and their root
    counts.  The counts sum to the region's own root count.  Raises
    SubdivisionFailedError when no trial line clears the roots.
    """
    parts, counts, _, _ = _divide(region, f, cfg, ctr)
    return parts, counts


def rdp(
    region: ConvexRegion,
    f: Polynomial,
    accuracy: float,
    *,
    q: float | None = None,
    threads: int = 1,
) -> tuple[list[RootBox], RdpStats]:
    """Isolate every root of ``f`` inside ``region`` in boxes smaller than ``accuracy``.

    Runs the boundary winding test on the whole region first (raising
    InitialRegionSingularError when a root sits too close to the border
    to certify anything), then subdivides.  Returns the boxes sorted by
    envelope center together with run statistics.  ``q`` overrides the
    guard width (it must not exceed choose_q(accuracy, degree, degree));
    by default the width is chosen from the degree, then relaxed once
    the actual root count inside is known.  ``threads`` caps concurrent
    subdivision tasks; results are identical for any thread count.
    """
    if region.is_empty:
        raise ValueError("cannot subdivide the empty region")
    if accuracy <= 0:
        raise ValueError("accuracy must be positive")
    n = f.degree
    if n < 1:
        raise ValueError("a constant polynomial has no roots to isolate")
    if threads < 1:
        raise ValueError("threads must be at least 1")

    ctr = EvalCounter()
    stats = RdpStats()
    q_boot = choose_q(accuracy, n, n) if q is None else q
    curve = boundary(region)
    outcome = ipsr(curve, f, initial_samples(curve), q_boot, ctr)
    stats.ipsr_calls.append((curve.perimeter, q_boot, outcome.insertions))
    if isinstance(outcome, SingularError):
        raise InitialRegionSingularError(outcome.t, outcome.guarantee)
    n0 = outcome.index
    dr = diam_rect(region)
    stats.budget = pe_budget(max(n0, 1), n, accuracy, dr)
    stats.visited.append((0, region))
    _log.debug("initial region holds %d roots (degree %d)", n0, n)
    if n0 == 0:
        stats.pe = ctr.evaluations
        return [], stats

    run_q = q_boot
    if q is None and n0 < n:
        # Fewer roots than the degree allows a wider guard; correctness
        # is unaffected, every test just terminates sooner.
        run_q = choose_q(accuracy, n0, n)
    max_level = max(math.ceil(math.log2(dr / accuracy)), 0) + 2
    cfg = RdpConfig(accuracy, run_q, n0, n, max_level)

    def split(node: tuple[int, ConvexRegion, int]):
        _, reg, _ = node
        return _divide(reg, f, cfg, ctr)

    boxes: list[RootBox] = []
    frontier: list[tuple[int, ConvexRegion, int]] = [(0, region, n0)]
    while frontier:
        splitters: list[tuple[int, ConvexRegion, int]] = []
        for level, reg, cnt in frontier:
            if cnt == 0:
                continue
            if diam_rect(reg) < accuracy:
                # The count computed when this piece was created is
                # reused; recounting would repeat identical memoized
                # evaluations and return the same value.
                boxes.append(RootBox(reg, cnt))
                continue
            if level >= cfg.max_level:
                raise SubdivisionFailedError(
                    f"region still wider than the accuracy at level {level} "
                    f"(diam_rect {diam_rect(reg)!r} >= {accuracy!r})"
                )
            splitters.append((level, reg, cnt))
        if threads > 1 and len(splitters) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(split, splitters))
        else:
            results = [split(node) for node in splitters]
        next_frontier: list[tuple[int, ConvexRegion, int]] = []
        for (level, reg, cnt), (parts, counts, calls, offsets) in zip(
            splitters, results
        ):
            stats.ipsr_calls.extend(calls)
            stats.offsets.extend(offsets)
            if sum(counts) != cnt:
                raise SubdivisionFailedError(
                    f"cut parts account for {sum(counts)} roots "
                    f"but the region holds {cnt}"
                )
            for part, c in zip(parts, counts):
                if part.is_empty:
                    continue
                stats.visited.append((level + 1, part))
                stats.max_level = max(stats.max_level, level + 1)
                next_frontier.append((level + 1, part, c))
        _log.debug(
            "level %d: %d regions split, %d boxes so far",
            splitters[0][0] if splitters else -1,
            len(splitters),
            len(boxes),
        )
        frontier = next_frontier

    def _center(box: RootBox) -> tuple[float, float]:
        x0, y0, x1, y1 = envelope(box.region)
        return (x0 + x1) / 2.0, (y0 + y1) / 2.0

    boxes.sort(key=_center)
    stats.pe = ctr.evaluations
    stats.boxes = len(boxes)
    return boxes, stats
