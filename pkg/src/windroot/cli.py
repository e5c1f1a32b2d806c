"""Command-line front end: isolate polynomial roots in a plane region.

Parses a polynomial (JSON coefficients or ``z^3+1`` shorthand) and a
convex region (rectangle or polygon), runs the subdivision solver, and
prints the root boxes as JSON with 17-significant-digit floats.  An
optional SVG renders the subdivision tree and the boxes.  Exit codes:
0 success, 1 bad request, 2 root too close to the initial boundary,
3 subdivision failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys
import time
from dataclasses import dataclass
from xml.etree import ElementTree as ET

from .errors import InitialRegionSingularError, SubdivisionFailedError
from .geometry import ConvexRegion, contains, envelope
from .oracle import roots_reference
from .poly import Polynomial
from .rdp import RdpStats, RootBox, choose_q, rdp

__all__ = ["RunRequest", "run", "main"]

_log = logging.getLogger("windroot.cli")


class _ParseError(Exception):
    """Bad command line or malformed input; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); 2 means singular here
        raise _ParseError(message)


@dataclass(frozen=True)
class RunRequest:
    """One fully resolved solver invocation."""

    f: Polynomial
    region: ConvexRegion
    accuracy: float
    q: float | None
    svg: str | None
    verify: bool
    stats: bool
    threads: int


_TERM_RE = re.compile(
    r"^([+-])?"
    r"(?:(\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)\*?)?"
    r"(z(?:\^(\d+))?)?$"
)


def _split_terms(text: str) -> list[str]:
    terms: list[str] = []
    start = 0
    for idx in range(1, len(text)):
        if text[idx] in "+-" and text[idx - 1] not in "eE":
            terms.append(text[start:idx])
            start = idx
    terms.append(text[start:])
    return terms


def parse_poly_shorthand(text: str) -> Polynomial:
    """Parse expressions like ``z^3 - 2.5z + 1`` into a polynomial.

    Real integer/float coefficients, a single variable ``z``, and the
    operators ``+ - ^`` (with optional ``*`` between coefficient and z).
    """
    compact = text.replace(" ", "")
    if not compact:
        raise _ParseError("empty polynomial expression")
    degrees: dict[int, float] = {}
    for term in _split_terms(compact):
        m = _TERM_RE.match(term)
        if not m or (m.group(2) is None and m.group(3) is None):
            raise _ParseError(f"cannot parse polynomial term {term!r}")
        sign = -1.0 if m.group(1) == "-" else 1.0
        coeff = float(m.group(2)) if m.group(2) is not None else 1.0
        if m.group(3) is None:
            k = 0
        else:
            k = int(m.group(4)) if m.group(4) is not None else 1
        degrees[k] = degrees.get(k, 0.0) + sign * coeff
    top = max(degrees)
    coeffs = tuple(complex(degrees.get(k, 0.0)) for k in range(top + 1))
    try:
        return Polynomial(coeffs)
    except ValueError as exc:
        raise _ParseError(str(exc)) from exc


def _parse_polynomial(text: str) -> Polynomial:
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        return parse_poly_shorthand(text)
    if not isinstance(data, dict):
        return parse_poly_shorthand(text)
    try:
        return Polynomial.from_json(data)
    except ValueError as exc:
        raise _ParseError(str(exc)) from exc


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="windroot",
        description="Isolate all roots of a complex polynomial inside a "
        "convex plane region, with certified per-box root counts.",
    )
    poly = parser.add_mutually_exclusive_group(required=True)
    poly.add_argument(
        "--poly",
        help='polynomial: JSON {"coeffs": [[re, im], ...]} or shorthand like "z^3+1"',
    )
    poly.add_argument("--poly-file", help="file containing the polynomial")
    region = parser.add_mutually_exclusive_group(required=True)
    region.add_argument(
        "--rect",
        nargs=4,
        type=float,
        metavar=("X0", "Y0", "X1", "Y1"),
        help="axis-aligned rectangular region",
    )
    region.add_argument(
        "--region-file",
        help='file with JSON {"vertices": [[x, y], ...]} or {"rect": [x0, y0, x1, y1]}',
    )
    parser.add_argument(
        "--accuracy",
        type=float,
        required=True,
        help="maximum rectangular diameter of an emitted root box",
    )
    parser.add_argument(
        "--q",
        type=float,
        default=None,
        help="override the sampling guard width (must not exceed the "
        "degree-derived default)",
    )
    parser.add_argument("--svg", help="write an SVG of the subdivision to this path")
    parser.add_argument(
        "--verify",
        action="store_true",
        help="cross-check box counts against independently computed roots",
    )
    parser.add_argument(
        "--stats", action="store_true", help="include run statistics in the JSON"
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=1,
        help="maximum concurrent subdivision tasks",
    )
    return parser


def _read_file(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise _ParseError(f"cannot read {path}: {exc}") from exc


def _build_request(ns: argparse.Namespace) -> RunRequest:
    poly_text = ns.poly if ns.poly is not None else _read_file(ns.poly_file)
    f = _parse_polynomial(poly_text)
    if ns.rect is not None:
        region_data = {"rect": list(ns.rect)}
    else:
        try:
            region_data = json.loads(_read_file(ns.region_file))
        except json.JSONDecodeError as exc:
            raise _ParseError(f"malformed region JSON: {exc}") from exc
    try:
        region = ConvexRegion.from_json(region_data)
    except ValueError as exc:
        raise _ParseError(str(exc)) from exc
    if ns.accuracy <= 0:
        raise _ParseError("accuracy must be positive")
    if ns.threads < 1:
        raise _ParseError("threads must be at least 1")
    if ns.q is not None:
        if f.degree < 1:
            raise _ParseError("constant polynomial has no roots to isolate")
        limit = choose_q(ns.accuracy, f.degree, f.degree)
        if not 0 < ns.q <= limit:
            raise _ParseError(
                f"q must lie in (0, {limit!r}] for accuracy {ns.accuracy!r} "
                f"and degree {f.degree}"
            )
    return RunRequest(
        f=f,
        region=region,
        accuracy=ns.accuracy,
        q=ns.q,
        svg=ns.svg,
        verify=ns.verify,
        stats=ns.stats,
        threads=ns.threads,
    )


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _box_json(box: RootBox) -> str:
    vs = ", ".join(f"[{_fmt(v.real)}, {_fmt(v.imag)}]" for v in box.region.vertices)
    x0, y0, x1, y1 = envelope(box.region)
    env = ", ".join(_fmt(c) for c in (x0, y0, x1, y1))
    return f'{{"vertices": [{vs}], "envelope": [{env}], "count": {box.count}}}'


def _result_json(
    boxes: list[RootBox], stats: RdpStats | None, seconds: float | None
) -> str:
    lines = ["{", '  "boxes": [']
    for i, box in enumerate(boxes):
        comma = "," if i + 1 < len(boxes) else ""
        lines.append(f"    {_box_json(box)}{comma}")
    closing = "  ]" + ("," if stats is not None else "")
    lines.append(closing)
    if stats is not None:
        lines.append(
            f'  "stats": {{"pe": {stats.pe}, "max_level": {stats.max_level}, '
            f'"boxes": {stats.boxes}, "budget": {_fmt(stats.budget)}, '
            f'"seconds": {_fmt(seconds if seconds is not None else 0.0)}}}'
        )
    lines.append("}")
    return "\n".join(lines)


def _svg_point(v: complex, world, scale: float) -> str:
    wx0, _, _, wy1 = world
    return f"{(v.real - wx0) * scale:.2f},{(wy1 - v.imag) * scale:.2f}"


def _svg_path(vertices, world, scale) -> str:
    steps = [f"M {_svg_point(vertices[0], world, scale)}"]
    steps.extend(f"L {_svg_point(v, world, scale)}" for v in vertices[1:])
    steps.append("Z")
    return " ".join(steps)


def _write_svg(
    path: str, region: ConvexRegion, boxes: list[RootBox], stats: RdpStats
) -> None:
    x0, y0, x1, y1 = envelope(region)
    margin = 0.05 * max(x1 - x0, y1 - y0)
    world = (x0 - margin, y0 - margin, x1 + margin, y1 + margin)
    span = max(world[2] - world[0], world[3] - world[1])
    scale = 800.0 / span
    width = (world[2] - world[0]) * scale
    height = (world[3] - world[1]) * scale
    svg = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "width": f"{width:.0f}",
            "height": f"{height:.0f}",
            "viewBox": f"0 0 {width:.2f} {height:.2f}",
        },
    )
    ET.SubElement(
        svg,
        "path",
        {
            "d": _svg_path(region.vertices, world, scale),
            "fill": "none",
            "stroke": "#13334c",
            "stroke-width": "2.5",
        },
    )
    for level, sub in stats.visited:
        if level == 0:
            continue
        ET.SubElement(
            svg,
            "path",
            {
                "d": _svg_path(sub.vertices, world, scale),
                "fill": "none",
                "stroke": "#8fa6b8",
                "stroke-width": f"{max(0.2, 1.8 / (level + 1)):.2f}",
            },
        )
    for box in boxes:
        ET.SubElement(
            svg,
            "polygon",
            {
                "points": " ".join(
                    _svg_point(v, world, scale) for v in box.region.vertices
                ),
                "fill": "#e4572e",
                "fill-opacity": "0.9",
                "stroke": "#7a1f0e",
                "stroke-width": "0.6",
            },
        )
    document = ET.tostring(svg, encoding="unicode")
    with open(path, "w", encoding="utf-8") as handle:
        handle.write('<?xml version="1.0" encoding="UTF-8"?>\n')
        handle.write(document)
        handle.write("\n")


def _verify_boxes(
    f: Polynomial, region: ConvexRegion, boxes: list[RootBox]
) -> bool:
    roots = roots_reference(f)
    inside = sum(1 for z in roots if contains(region, z))
    ok = True
    total = 0
    for i, box in enumerate(boxes):
        found = sum(1 for z in roots if contains(box.region, z, tol=1e-12))
        total += box.count
        if found != box.count:
            print(
                f"verify: box {i} claims {box.count} roots but holds {found}",
                file=sys.stderr,
            )
            ok = False
    if total != inside:
        print(
            f"verify: boxes claim {total} roots but the region holds {inside}",
            file=sys.stderr,
        )
        ok = False
    if ok:
        print(
            f"verify: ok — {len(boxes)} boxes account for all {total} roots",
            file=sys.stderr,
        )
    return ok


def run(request: RunRequest) -> int:
    """Execute one request; print JSON to stdout; return the exit code."""
    started = time.perf_counter()
    try:
        boxes, stats = rdp(
            request.region,
            request.f,
            request.accuracy,
            q=request.q,
            threads=request.threads,
        )
    except InitialRegionSingularError as exc:
        print(f"windroot: {exc}", file=sys.stderr)
        return 2
    except SubdivisionFailedError as exc:
        print(f"windroot: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"windroot: {exc}", file=sys.stderr)
        return 1
    seconds = time.perf_counter() - started
    _log.debug("%d boxes in %.3fs, %d evaluations", len(boxes), seconds, stats.pe)
    sys.stdout.write(
        _result_json(boxes, stats if request.stats else None, seconds) + "\n"
    )
    if request.svg is not None:
        _write_svg(request.svg, request.region, boxes, stats)
    if request.verify and not _verify_boxes(request.f, request.region, boxes):
        return 1
    return 0


def _configure_logging() -> None:
    level_name = os.environ.get("WINDROOT_LOG")
    if not level_name:
        return
    level = getattr(logging, level_name.upper(), None)
    if isinstance(level, int):
        logging.basicConfig(
            level=level, stream=sys.stderr, format="%(name)s: %(message)s"
        )


def main(argv=None) -> int:
    _configure_logging()
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
        request = _build_request(ns)
    except _ParseError as exc:
        print(f"windroot: error: {exc}", file=sys.stderr)
        return 1
    return run(request)


if __name__ == "__main__":
    sys.exit(main())
