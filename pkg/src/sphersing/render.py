"""Static SVG pictures of rank-2 colored fans.

Conventions: each fan ray is drawn as an arrow to its primitive point; the
marker there is filled for colorless rays. Images sigma(D) of colors used by
the fan get a white disc with a grey ring. The lattice [-3, 3]^2 is drawn as
dots and the viewBox never depends on the input.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .coloredfan import ColoredFan
from .errors import RenderRankUnsupported

SCALE = 60
BOX = 3
SHADES = ("#dbe7f3", "#f3e3d3", "#dcefdc", "#efdcef", "#f0f0d0", "#d9eeee")


def _fmt(v) -> str:
    s = f"{float(v):.2f}"
    return "0.00" if s == "-0.00" else s


def _pt(x, y) -> tuple[str, str]:
    return _fmt(Fraction(x) * SCALE), _fmt(-Fraction(y) * SCALE)


def _fit(v) -> tuple[Fraction, Fraction]:
    """Scale v down so that it lies in the drawing box."""
    m = max(abs(Fraction(c)) for c in v)
    k = min(Fraction(1), Fraction(BOX) / m) if m else Fraction(1)
    return Fraction(v[0]) * k, Fraction(v[1]) * k


def _to_edge(v) -> tuple[Fraction, Fraction]:
    m = max(abs(Fraction(c)) for c in v)
    return Fraction(v[0]) * BOX / m, Fraction(v[1]) * BOX / m


def render_svg(fan: ColoredFan, title: str = "") -> str:
    if fan.rank != 2:
        raise RenderRankUnsupported(f"rendering needs rank 2, got rank {fan.rank}")
    space = fan.space
    half = BOX * SCALE
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{2 * half}" height="{2 * half}" '
        f'viewBox="{-half} {-half} {2 * half} {2 * half}">',
    ]
    if title:
        out.append(f"<title>{_escape(title)}</title>")
    out.append('<rect x="%d" y="%d" width="%d" height="%d" fill="white"/>' % (-half, -half, 2 * half, 2 * half))

    out.append('<g id="cones">')
    for k, cc in enumerate(fan.cones):
        if cc.cone.dim < 2:
            continue
        rays = sorted(cc.cone.rays, key=_angle)
        if len(rays) == 2 and _cross(rays[0], rays[1]) < 0:
            rays = rays[::-1]
        a0 = _angle(rays[0])
        corners = [c for c in ((BOX, BOX), (-BOX, BOX), (-BOX, -BOX), (BOX, -BOX)) if cc.cone.contains(c)]
        corners.sort(key=lambda c: (_angle(c) - a0) % (2 * math.pi))
        pts = [("0.00", "0.00"), _pt(*_to_edge(rays[0]))] + [_pt(*c) for c in corners] + [_pt(*_to_edge(rays[1]))]
        poly = " ".join(f"{x},{y}" for x, y in pts)
        out.append(f'<polygon points="{poly}" fill="{SHADES[k % len(SHADES)]}" stroke="none"/>')
    out.append("</g>")

    out.append('<g id="axes" stroke="#999999" stroke-width="1">')
    out.append(f'<line x1="{-half}" y1="0" x2="{half}" y2="0"/>')
    out.append(f'<line x1="0" y1="{-half}" x2="0" y2="{half}"/>')
    out.append("</g>")
    out.append('<g id="lattice" fill="#bbbbbb">')
    for i in range(-BOX, BOX + 1):
        for j in range(-BOX, BOX + 1):
            x, y = _pt(i, j)
            out.append(f'<circle cx="{x}" cy="{y}" r="1.5"/>')
    out.append("</g>")

    if not space.is_horospherical:
        out.append('<g id="valuation-cone" stroke="#555555" stroke-dasharray="4 3" fill="none">')
        for r in list(space.valuation_cone.rays) + list(space.valuation_cone.lineality) + \
                [tuple(-c for c in l) for l in space.valuation_cone.lineality]:
            x, y = _pt(*_to_edge(r))
            out.append(f'<line x1="0" y1="0" x2="{x}" y2="{y}"/>')
        out.append("</g>")

    rays = sorted({r for cc in fan.cones for r in cc.cone.rays})
    colorless = set(fan.colorless_rays)
    out.append('<defs><marker id="head" markerWidth="8" markerHeight="8" refX="7" refY="4" orient="auto">'
               '<path d="M0,0 L8,4 L0,8 z" fill="black"/></marker></defs>')
    out.append('<g id="rays" stroke="black" stroke-width="2">')
    for r in rays:
        x, y = _pt(*_fit(r))
        out.append(f'<line x1="0" y1="0" x2="{x}" y2="{y}" marker-end="url(#head)"/>')
    out.append("</g>")

    out.append('<g id="colorless-markers" fill="black">')
    for r in rays:
        if r in colorless:
            x, y = _pt(*_fit(r))
            out.append(f'<circle cx="{x}" cy="{y}" r="5"/>')
    out.append("</g>")
    out.append('<g id="color-markers" fill="white" stroke="#888888" stroke-width="3">')
    for pos in sorted({space.sigma(c) for c in fan.colors}):
        x, y = _pt(*_fit(pos))
        out.append(f'<circle cx="{x}" cy="{y}" r="7"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _angle(v):
    return math.atan2(v[1], v[0])


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
