"""Stereographic projection of designs and SVG stereograms.

Northern points (``z >= 0``; the equator counts as north) are projected from
the south pole, ``(u, v) = (x, y) / (1 + z)``, and drawn as solid markers.
Southern points are projected from the north pole, ``(x, y) / (1 - z)``, and
drawn as open markers. Both hemispheres land in the closed unit disk.
Meridians become straight lines through the origin and parallels become
circles centred on it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .sphere import Design, SpherePoint

__all__ = ["ProjectedMarker", "StereogramStyle", "project", "project_design", "render"]

_EQUATOR_TOL = 1e-12
_COINCIDENT_TOL = 1e-9
_EXTENT = 1.05


class ProjectedMarker(NamedTuple):
    u: float
    v: float
    hemisphere: str  # "north" or "south"


@dataclass(frozen=True)
class StereogramStyle:
    size: int = 600
    marker_radius: float = 6.0
    meridians: int = 12
    parallels: int = 5
    grid: bool = False
    boundary: bool = True
    # open markers that share a position with a solid one are drawn this much larger
    ring_scale: float = 1.8

    def __post_init__(self):
        if self.size <= 0 or self.marker_radius <= 0 or self.ring_scale <= 0:
            raise DomainError("stereogram dimensions must be positive")
        if self.meridians < 0 or self.parallels < 0:
            raise DomainError("grid counts must be nonnegative")


def _project_xyz(x, y, z):
    north = z >= -_EQUATOR_TOL
    denom = np.where(north, 1.0 + z, 1.0 - z)
    return x / denom, y / denom, north


def project(p: SpherePoint) -> ProjectedMarker:
    u, v, north = _project_xyz(p.x, p.y, p.z)
    return ProjectedMarker(float(u), float(v), "north" if north else "south")


def project_design(design: Design) -> list[ProjectedMarker]:
    x, y, z = design.xyz.T
    u, v, north = _project_xyz(x, y, z)
    return [
        ProjectedMarker(float(a), float(b), "north" if h else "south")
        for a, b, h in zip(u, v, north)
    ]


def _fmt(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


def render(design: Design, style: StereogramStyle | None = None) -> str:
    """Standalone SVG 1.1 document of the design's stereogram.

    Open (southern) markers are drawn before solid ones so that an antipodal
    pair shows as a solid dot inside an open ring. Output is a pure function
    of the inputs.
    """
    style = style or StereogramStyle()
    size = style.size
    scale = size / (2.0 * _EXTENT)

    def cx(u):
        return (u + _EXTENT) * scale

    def cy(v):
        return (_EXTENT - v) * scale

    c = size / 2.0
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
    ]
    if design.label:
        label = design.label.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
        lines.append(f"<title>{label}</title>")
    lines.append(f'<rect width="{size}" height="{size}" fill="white"/>')
    if style.grid:
        lines.append('<g class="grid" stroke="#999999" stroke-width="0.5" fill="none">')
        for k in range(style.meridians):
            ang = math.pi * k / style.meridians
            du, dv = math.cos(ang), math.sin(ang)
            lines.append(
                f'<line class="meridian" x1="{_fmt(cx(-du))}" y1="{_fmt(cy(-dv))}" '
                f'x2="{_fmt(cx(du))}" y2="{_fmt(cy(dv))}"/>'
            )
        for k in range(1, style.parallels + 1):
            colat = 0.5 * math.pi * k / (style.parallels + 1)
            r = math.tan(0.5 * colat) * scale
            lines.append(f'<circle class="parallel" cx="{_fmt(c)}" cy="{_fmt(c)}" r="{_fmt(r)}"/>')
        lines.append("</g>")
    if style.boundary:
        lines.append(
            f'<circle class="boundary" cx="{_fmt(c)}" cy="{_fmt(c)}" r="{_fmt(scale)}" '
            f'fill="none" stroke="black" stroke-width="1"/>'
        )

    markers = project_design(design)
    solid = [(m.u, m.v) for m in markers if m.hemisphere == "north"]
    solid_arr = np.array(solid) if solid else np.empty((0, 2))
    r0 = style.marker_radius
    for m in markers:
        if m.hemisphere != "south":
            continue
        hit = solid_arr.size and np.any(
            np.hypot(solid_arr[:, 0] - m.u, solid_arr[:, 1] - m.v) <= _COINCIDENT_TOL
        )
        r = r0 * style.ring_scale if hit else r0
        lines.append(
            f'<circle class="marker south" cx="{_fmt(cx(m.u))}" cy="{_fmt(cy(m.v))}" '
            f'r="{_fmt(r)}" fill="white" stroke="black" stroke-width="1.5"/>'
        )
    for u, v in solid:
        lines.append(
            f'<circle class="marker north" cx="{_fmt(cx(u))}" cy="{_fmt(cy(v))}" '
            f'r="{_fmt(r0)}" fill="black"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
