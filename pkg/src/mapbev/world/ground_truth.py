"""Ego-centric ground-truth stacks for the four segmentation classes.

Channel semantics (fixed order): lane = union of per-lane strips; road =
lane union plus junction discs, so lane is a geometric subset of road by
construction; lane divider = boundaries between adjacent lanes of a way;
road divider = outer road edges. Dividers are erased inside junction
discs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..geo import EgoPose, world_to_ego
from ..grid import BEVGrid
from ..raster import clip_polyline, stroke_mask
from .scene import Scene

GT_CHANNELS = ("lane", "road", "lane_divider", "road_divider")


@dataclass
class GroundTruthStack:
    """Binary (H, W, 4) stack in the GT_CHANNELS order, ego-centric."""

    grid: np.ndarray
    extent: tuple[float, float]
    ppm: float

    @property
    def channels(self) -> tuple[str, ...]:
        return GT_CHANNELS

    def channel(self, name: str) -> np.ndarray:
        return self.grid[:, :, GT_CHANNELS.index(name)]


def _ego_clipped(polylines, pose: EgoPose, grid: BEVGrid, margin_m: float):
    half_l = grid.length_m / 2.0 + margin_m
    half_w = grid.width_m / 2.0 + margin_m
    out = []
    for pts in polylines:
        ego = world_to_ego(pts, pose)
        out.extend(clip_polyline(ego, -half_l, half_l, -half_w, half_w))
    return out


def _disc_mask(scene: Scene, pose: EgoPose, grid: BEVGrid, radius_scale: float) -> np.ndarray:
    if not scene.junctions:
        return np.zeros(grid.shape, dtype=np.uint8)
    centers = world_to_ego(np.array([(x, y) for x, y, _ in scene.junctions]), pose)
    polylines = [np.array([c, c]) for c in centers]
    widths = np.array([2.0 * r * radius_scale * grid.ppm for _, _, r in scene.junctions])
    return stroke_mask(polylines, grid, 0.0, widths_px=widths)


def render_ground_truth(scene: Scene, pose: EgoPose, grid: BEVGrid,
                        divider_width_px: float = 1.0) -> GroundTruthStack:
    """Rasterize scene geometry into the 4-channel binary GT stack."""
    margin = max((g.width_m for g in scene.geometry), default=0.0) / 2.0 + 2.0

    lane = np.zeros(grid.shape, dtype=np.uint8)
    lane_div = np.zeros(grid.shape, dtype=np.uint8)
    road_div = np.zeros(grid.shape, dtype=np.uint8)
    for geom in scene.geometry:
        width_px = geom.lane_width_m * grid.ppm
        lanes = _ego_clipped(geom.lane_centers, pose, grid, margin)
        lane |= stroke_mask(lanes, grid, width_px)
        lane_div |= stroke_mask(_ego_clipped(geom.lane_dividers, pose, grid, margin),
                                grid, divider_width_px)
        road_div |= stroke_mask(_ego_clipped(geom.edges, pose, grid, margin),
                                grid, divider_width_px)

    discs = _disc_mask(scene, pose, grid, radius_scale=1.0)
    erase = _disc_mask(scene, pose, grid, radius_scale=0.9)
    road = lane | discs
    lane_div &= 1 - erase
    road_div &= 1 - erase

    stack = np.stack([lane, road, lane_div, road_div], axis=-1)
    return GroundTruthStack(grid=stack, extent=grid.extent, ppm=grid.ppm)
