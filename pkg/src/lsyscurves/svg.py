"""Deterministic SVG 1.1 output for polylines and point sets.

Coordinates are mapped from model space into a fixed 512x512 viewport with a
5% margin and a flipped y axis (model y grows upward, SVG y grows downward).
All numbers are formatted with 12 significant digits so that identical input
produces byte-identical documents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from .errors import DimensionError
from .geometry import Point

# Role-based palette.  Roles, not hues, are the contract: the control polygon
# is distinct from derived polygons and from the result, and the subdivision
# renderer distinguishes vertex states and edge types.
PALETTE = {
    "control": "#1f77b4",
    "intermediate": "#b0b0b0",
    "result": "#d62728",
    "locus": "#d62728",
    "state0": "#1f77b4",
    "state1": "#2ca02c",
    "state2": "#d62728",
    "edge_E": "#444444",
    "edge_I": "#c8a02c",
}

DEFAULT_SIZE = 512
DEFAULT_MARGIN = 0.05


def fmt(x: float) -> str:
    """Format a coordinate with 12 significant digits, stable across runs."""
    if not math.isfinite(x):
        raise DimensionError(f"non-finite SVG coordinate {x!r}")
    text = f"{x:.12g}"
    return "0" if text == "-0" else text


@dataclass
class Layer:
    kind: str  # "polyline" | "points"
    points: List[Point]
    role: str
    closed: bool = False
    radius: float = 3.0
    width: float = 1.5


@dataclass
class SvgDocument:
    """Accumulates layers in model coordinates and renders them to SVG text."""

    width: int = DEFAULT_SIZE
    height: int = DEFAULT_SIZE
    margin: float = DEFAULT_MARGIN
    layers: List[Layer] = field(default_factory=list)

    def add_polyline(self, points: Sequence[Point], role: str,
                     closed: bool = False, width: float = 1.5):
        pts = list(points)
        if pts:
            self.layers.append(Layer("polyline", pts, role, closed, width=width))

    def add_points(self, points: Sequence[Point], role: str, radius: float = 3.0):
        pts = list(points)
        if pts:
            self.layers.append(Layer("points", pts, role, radius=radius))

    def _transform(self):
        xs = [p[0] for layer in self.layers for p in layer.points]
        ys = [p[1] for layer in self.layers for p in layer.points]
        if not xs:
            return lambda p: (0.0, 0.0)
        lo_x, hi_x = min(xs), max(xs)
        lo_y, hi_y = min(ys), max(ys)
        span = max(hi_x - lo_x, hi_y - lo_y)
        inner = min(self.width, self.height) * (1.0 - 2.0 * self.margin)
        scale = inner / span if span > 0 else 1.0
        # Center the drawing within the viewport.
        cx = (lo_x + hi_x) / 2
        cy = (lo_y + hi_y) / 2

        def to_svg(p):
            return (
                self.width / 2 + (p[0] - cx) * scale,
                self.height / 2 - (p[1] - cy) * scale,
            )

        return to_svg

    def render(self) -> str:
        to_svg = self._transform()
        lines = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{self.width}" height="{self.height}" '
            f'viewBox="0 0 {self.width} {self.height}">',
            f'<rect width="{self.width}" height="{self.height}" fill="white"/>',
        ]
        for layer in self.layers:
            color = PALETTE.get(layer.role, "#000000")
            if layer.kind == "polyline":
                coords = " ".join(
                    f"{fmt(x)},{fmt(y)}" for x, y in map(to_svg, layer.points)
                )
                tag = "polygon" if layer.closed else "polyline"
                lines.append(
                    f'<{tag} points="{coords}" fill="none" stroke="{color}" '
                    f'stroke-width="{fmt(layer.width)}"/>'
                )
            else:
                for p in layer.points:
                    x, y = to_svg(p)
                    lines.append(
                        f'<circle cx="{fmt(x)}" cy="{fmt(y)}" '
                        f'r="{fmt(layer.radius)}" fill="{color}"/>'
                    )
        lines.append("</svg>")
        return "\n".join(lines) + "\n"


def render_document(layers: Sequence[Layer],
                    width: int = DEFAULT_SIZE,
                    height: int = DEFAULT_SIZE,
                    margin: float = DEFAULT_MARGIN) -> str:
    doc = SvgDocument(width, height, margin, list(layers))
    return doc.render()
