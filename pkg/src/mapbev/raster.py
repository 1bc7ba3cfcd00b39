"""Ego-centric windowing and rasterization of road skeletons.

The SD-map input raster equals the BEV output extent (400 m x 96 m at
1 ppm by default) so map features are spatially registered with the
visual BEV features cell-for-cell. Rasterization is binary: a cell is on
when its center lies within half the stroke width of a segment.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image

from . import kernels
from .errors import ConfigError
from .geo import EgoPose, world_to_ego
from .grid import BEVGrid
from .roadgraph import RoadGraph

# Cohen-Sutherland outcodes.
_INSIDE, _LEFT, _RIGHT, _BOTTOM, _TOP = 0, 1, 2, 4, 8


@dataclass
class SDRaster:
    """Binary ego-centric raster of the road skeleton."""

    grid: np.ndarray  # (H, W) uint8 in {0, 1}
    extent: tuple[float, float]
    ppm: float

    @property
    def shape(self) -> tuple[int, int]:
        return self.grid.shape

    def save_png(self, path: str | Path, pose: EgoPose | None = None) -> None:
        """Persist as 8-bit grayscale PNG (0/255) plus a sidecar JSON."""
        path = Path(path)
        Image.fromarray((self.grid * 255).astype(np.uint8), mode="L").save(path)
        sidecar = {
            "ppm": self.ppm,
            "extent_m": [self.extent[0], self.extent[1]],
            "pose": None if pose is None else {"x": pose.x, "y": pose.y, "heading": pose.heading},
        }
        path.with_suffix(".json").write_text(json.dumps(sidecar, indent=1))

    @classmethod
    def load_png(cls, path: str | Path) -> "SDRaster":
        path = Path(path)
        grid = (np.asarray(Image.open(path), dtype=np.uint8) > 127).astype(np.uint8)
        meta = json.loads(path.with_suffix(".json").read_text())
        return cls(grid=grid, extent=tuple(meta["extent_m"]), ppm=meta["ppm"])


def _outcode(x: float, y: float, xmin: float, xmax: float, ymin: float, ymax: float) -> int:
    code = _INSIDE
    if x < xmin:
        code |= _LEFT
    elif x > xmax:
        code |= _RIGHT
    if y < ymin:
        code |= _BOTTOM
    elif y > ymax:
        code |= _TOP
    return code


def clip_segment(p0, p1, xmin, xmax, ymin, ymax):
    """Cohen-Sutherland segment clip; returns clipped endpoints or None."""
    x0, y0 = float(p0[0]), float(p0[1])
    x1, y1 = float(p1[0]), float(p1[1])
    code0 = _outcode(x0, y0, xmin, xmax, ymin, ymax)
    code1 = _outcode(x1, y1, xmin, xmax, ymin, ymax)
    while True:
        if not (code0 | code1):
            return (x0, y0), (x1, y1)
        if code0 & code1:
            return None
        out = code0 or code1
        if out & _TOP:
            x = x0 + (x1 - x0) * (ymax - y0) / (y1 - y0)
            y = ymax
        elif out & _BOTTOM:
            x = x0 + (x1 - x0) * (ymin - y0) / (y1 - y0)
            y = ymin
        elif out & _RIGHT:
            y = y0 + (y1 - y0) * (xmax - x0) / (x1 - x0)
            x = xmax
        else:
            y = y0 + (y1 - y0) * (xmin - x0) / (x1 - x0)
            x = xmin
        if out == code0:
            x0, y0 = x, y
            code0 = _outcode(x0, y0, xmin, xmax, ymin, ymax)
        else:
            x1, y1 = x, y
            code1 = _outcode(x1, y1, xmin, xmax, ymin, ymax)


def clip_polyline(points: np.ndarray, xmin, xmax, ymin, ymax) -> list[np.ndarray]:
    """Clip a polyline to a box, splitting it where it leaves the box."""
    pieces: list[list[tuple[float, float]]] = []
    current: list[tuple[float, float]] = []
    for i in range(len(points) - 1):
        clipped = clip_segment(points[i], points[i + 1], xmin, xmax, ymin, ymax)
        if clipped is None:
            if len(current) >= 2:
                pieces.append(current)
            current = []
            continue
        (x0, y0), (x1, y1) = clipped
        if not current:
            current = [(x0, y0), (x1, y1)]
        elif current[-1] == (x0, y0):
            current.append((x1, y1))
        else:
            if len(current) >= 2:
                pieces.append(current)
            current = [(x0, y0), (x1, y1)]
    if len(current) >= 2:
        pieces.append(current)
    return [np.asarray(p, dtype=np.float64) for p in pieces]


def ego_window(graph: RoadGraph, pose: EgoPose, extent: tuple[float, float],
               margin_m: float = 0.0) -> list[np.ndarray]:
    """Ego-frame polylines of all ways clipped to the ego window box.

    The box is [-length/2, length/2] x [-width/2, width/2] inflated by
    ``margin_m`` on all sides. Ways fully outside are dropped.
    """
    if extent[0] <= 0 or extent[1] <= 0:
        raise ConfigError(f"extent must be positive, got {extent}")
    if graph.frame != "local":
        raise ConfigError("ego_window requires a local-frame graph; call to_local() first")
    half_l = extent[0] / 2.0 + margin_m
    half_w = extent[1] / 2.0 + margin_m
    out: list[np.ndarray] = []
    for way in graph.ways:
        pts = world_to_ego(graph.way_points(way), pose)
        out.extend(clip_polyline(pts, -half_l, half_l, -half_w, half_w))
    return out


def polylines_to_segments(polylines: list[np.ndarray]) -> np.ndarray:
    """Flatten polylines into an (N, 4) segment array (x0, y0, x1, y1)."""
    segs = []
    for pts in polylines:
        pts = np.asarray(pts, dtype=np.float64)
        if len(pts) == 1:
            segs.append([pts[0, 0], pts[0, 1], pts[0, 0], pts[0, 1]])
        for i in range(len(pts) - 1):
            segs.append([pts[i, 0], pts[i, 1], pts[i + 1, 0], pts[i + 1, 1]])
    if not segs:
        return np.zeros((0, 4), dtype=np.float64)
    return np.asarray(segs, dtype=np.float64)


def stroke_mask(polylines: list[np.ndarray], grid: BEVGrid, width_px: float,
                widths_px: np.ndarray | None = None) -> np.ndarray:
    """Paint ego-frame polylines as strokes on the BEV grid; returns uint8 mask.

    ``width_px`` applies to all segments unless per-segment ``widths_px``
    are given. Width is the full stroke width in pixels; cells whose
    center lies within width/2 of a segment are set.
    """
    canvas = np.zeros(grid.shape, dtype=np.uint8)
    segs_m = polylines_to_segments(polylines)
    if segs_m.shape[0] == 0:
        return canvas
    segs_px = np.concatenate(
        [grid.to_pixel(segs_m[:, :2]), grid.to_pixel(segs_m[:, 2:])], axis=1
    )
    if widths_px is None:
        radii = np.full(segs_px.shape[0], width_px / 2.0, dtype=np.float64)
    else:
        radii = np.asarray(widths_px, dtype=np.float64) / 2.0
    kernels.paint_strokes(canvas, segs_px, radii, 1)
    return canvas


def rasterize(polylines: list[np.ndarray], extent: tuple[float, float], ppm: float,
              line_width_px: int = 3) -> SDRaster:
    """Rasterize ego-frame polylines into a binary SD raster.

    Deterministic for fixed inputs; raises :class:`ConfigError` when the
    extent does not map to an integer pixel count or the width is < 1.
    """
    if int(line_width_px) != line_width_px or line_width_px < 1:
        raise ConfigError(f"line_width_px must be an integer >= 1, got {line_width_px}")
    grid = BEVGrid(length_m=extent[0], width_m=extent[1], ppm=ppm)
    mask = stroke_mask(polylines, grid, float(line_width_px))
    return SDRaster(grid=mask, extent=(extent[0], extent[1]), ppm=ppm)
