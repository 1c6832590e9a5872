"""Deterministic SVG figures of spherical bodies.

Projections: orthographic (view along a pole, far hemisphere dropped) or
stereographic (from the antipode of the pole). All coordinates are
formatted with fixed precision so identical inputs produce byte-identical
files. Layers are grouped and labeled: sphere outline, boundary arcs,
generators, inscribed circle, cap domains, lune poles.
"""

from __future__ import annotations

import math

import numpy as np

from .sphere import GeneratorSet, Lune, tangent_basis, unit_vector
from .diskpoly import ArcBoundary, circle_basis, circle_point
from .proofreplay import CapDomain

__all__ = ["render_svg"]

_SIZE = 480
_MARGIN = 20
_ARC_SAMPLES = 96


def _project(points: np.ndarray, pole: np.ndarray, frame: np.ndarray,
             projection: str) -> tuple[np.ndarray, np.ndarray]:
    """Project (n, 3) points to the plane; returns (xy, visible mask)."""
    x = points @ frame[0]
    y = points @ frame[1]
    z = points @ pole
    if projection == "orthographic":
        return np.stack([x, y], axis=1), z >= -1e-9
    if projection == "stereographic":
        denom = 1.0 + z
        ok = denom > 1e-6
        denom = np.where(ok, denom, 1.0)
        return np.stack([x / denom, y / denom], axis=1), ok
    raise ValueError(f"unknown projection {projection!r}")


def _scale_fn(projection: str):
    half = _SIZE / 2
    extent = 1.0 if projection == "orthographic" else 1.6
    s = (half - _MARGIN) / extent

    def to_px(xy: np.ndarray) -> np.ndarray:
        return np.stack([half + s * xy[:, 0], half - s * xy[:, 1]], axis=1)

    return to_px


def _polyline(px: np.ndarray, mask: np.ndarray, close: bool = False) -> str:
    runs: list[list[str]] = []
    cur: list[str] = []
    pts = list(zip(px, mask))
    if close and len(pts):
        pts.append(pts[0])
    for (p, ok) in pts:
        if ok:
            cur.append(f"{p[0]:.4f},{p[1]:.4f}")
        elif cur:
            runs.append(cur)
            cur = []
    if cur:
        runs.append(cur)
    return " ".join("M " + " L ".join(run) for run in runs if len(run) >= 2)


def _circle_path(center: np.ndarray, radius: float, pole: np.ndarray,
                 frame: np.ndarray, projection: str, to_px) -> str:
    ts = np.linspace(0.0, 2 * math.pi, _ARC_SAMPLES * 2, endpoint=True)
    cframe = circle_basis(center)
    pts = np.stack([circle_point(center, radius, t, cframe) for t in ts])
    xy, ok = _project(pts, pole, frame, projection)
    return _polyline(to_px(xy), ok)


def _arc_path(center: np.ndarray, radius: float, start: np.ndarray, span: float,
              pole: np.ndarray, frame: np.ndarray, projection: str, to_px) -> str:
    cframe = circle_basis(center)
    t0 = math.atan2(float(start @ cframe[1]), float(start @ cframe[0]))
    ts = t0 + np.linspace(0.0, span, _ARC_SAMPLES)
    pts = np.stack([circle_point(center, radius, t, cframe) for t in ts])
    xy, ok = _project(pts, pole, frame, projection)
    return _polyline(to_px(xy), ok)


def _dots(points: np.ndarray, pole: np.ndarray, frame: np.ndarray,
          projection: str, to_px, radius: float, fill: str) -> str:
    xy, ok = _project(points, pole, frame, projection)
    px = to_px(xy)
    return "".join(
        f'<circle cx="{p[0]:.4f}" cy="{p[1]:.4f}" r="{radius}" fill="{fill}"/>'
        for p, good in zip(px, ok) if good)


def render_svg(obj, generators: GeneratorSet | None = None,
               lune: Lune | None = None, projection: str = "orthographic",
               path=None) -> str:
    """Render a boundary, cap domain, or bare generator set to SVG markup.

    ``obj`` may be an ArcBoundary, a CapDomain, or a GeneratorSet. The view
    pole is chosen deterministically from the object itself. When ``path``
    is given the markup is also written there.
    """
    boundary: ArcBoundary | None = None
    cap_dom: CapDomain | None = None
    if isinstance(obj, ArcBoundary):
        boundary = obj
    elif isinstance(obj, CapDomain):
        cap_dom = obj
    elif isinstance(obj, GeneratorSet):
        generators = obj
    else:
        raise TypeError(f"cannot render object of type {type(obj).__name__}")

    if cap_dom is not None:
        pole = cap_dom.center
    elif boundary is not None and boundary.full_ball is not None:
        pole = boundary.full_ball.center
    elif boundary is not None and len(boundary.arcs):
        pole = unit_vector(np.sum(boundary.vertices(), axis=0)
                           + np.sum([a.center for a in boundary.arcs], axis=0))
    elif generators is not None:
        pole = unit_vector(np.sum(generators.points, axis=0))
    else:
        raise ValueError("nothing to render")
    frame = tangent_basis(pole)
    to_px = _scale_fn(projection)

    parts: list[str] = []
    parts.append(f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SIZE}" '
                 f'height="{_SIZE}" viewBox="0 0 {_SIZE} {_SIZE}">')
    parts.append(f'<rect width="{_SIZE}" height="{_SIZE}" fill="white"/>')

    if projection == "orthographic":
        half = _SIZE / 2
        parts.append(f'<g id="sphere"><circle cx="{half}" cy="{half}" '
                     f'r="{half - _MARGIN}" fill="none" stroke="#ccc"/></g>')

    if boundary is not None:
        paths = []
        if boundary.full_ball is not None:
            d = _circle_path(boundary.full_ball.center, boundary.full_ball.radius,
                             pole, frame, projection, to_px)
            paths.append(f'<path d="{d}" fill="none" stroke="#1f4e9c" stroke-width="1.6"/>')
        for arc in boundary.arcs:
            d = _arc_path(arc.center, boundary.radius, arc.start, arc.span,
                          pole, frame, projection, to_px)
            paths.append(f'<path d="{d}" fill="none" stroke="#1f4e9c" stroke-width="1.6"/>')
        parts.append('<g id="boundary">' + "".join(paths) + "</g>")
        if len(boundary.arcs):
            parts.append('<g id="vertices">'
                         + _dots(boundary.vertices(), pole, frame, projection, to_px,
                                 2.5, "#1f4e9c") + "</g>")

    if cap_dom is not None:
        paths = [f'<path d="{_circle_path(cap_dom.center, cap_dom.inradius, pole, frame, projection, to_px)}" '
                 f'fill="none" stroke="#2e8b57" stroke-width="1.4"/>']
        for cap in cap_dom.caps:
            for piece in cap.pieces:
                d = _arc_path(piece.center, piece.radius, piece.start, piece.span,
                              pole, frame, projection, to_px)
                paths.append(f'<path d="{d}" fill="none" stroke="#b22222" stroke-width="1.2"/>')
        parts.append('<g id="caps">' + "".join(paths) + "</g>")
        apexes = np.stack([cap.apex for cap in cap_dom.caps])
        parts.append('<g id="apexes">'
                     + _dots(apexes, pole, frame, projection, to_px, 2.5, "#b22222")
                     + "</g>")

    if generators is not None:
        parts.append('<g id="generators">'
                     + _dots(generators.points, pole, frame, projection, to_px,
                             3.0, "#222") + "</g>")

    if lune is not None:
        poles = np.stack([lune.u, lune.v])
        parts.append('<g id="lune-poles">'
                     + _dots(poles, pole, frame, projection, to_px, 3.0, "#8a2be2")
                     + "</g>")

    parts.append("</svg>")
    markup = "\n".join(parts) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(markup)
    return markup
