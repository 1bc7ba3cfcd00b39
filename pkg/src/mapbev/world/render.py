"""Projective ground-plane rendering of surround-view camera images.

Each image pixel is ray-cast through its pinhole model onto the z=0
plane and shaded by a world-frame semantic texture rasterized from the
scene geometry (road gray, lane markings white, background green, plus
seeded per-pixel noise). Rays that miss the plane within ``max_range``
render as sky. Flat world by default; optional axis-aligned occluder
boxes demonstrate camera occlusion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .. import kernels
from ..geo import EgoPose, ego_to_world
from ..raster import polylines_to_segments
from .cameras import CameraModel, SurroundFrameSet
from .scene import Scene

# Class ids in the world semantic texture.
TEX_BACKGROUND, TEX_ROAD, TEX_MARKING = 0, 1, 2

PALETTE = np.array([
    [0.16, 0.34, 0.14],  # background: grass green
    [0.32, 0.32, 0.35],  # road: asphalt gray
    [0.93, 0.93, 0.90],  # marking: painted white
    [0.45, 0.38, 0.33],  # reserved: dirt
], dtype=np.float64)
SKY_HORIZON = np.array([0.74, 0.82, 0.90])
SKY_ZENITH = np.array([0.28, 0.50, 0.85])
BOX_COLOR = np.array([0.42, 0.40, 0.44])

MARKING_WIDTH_M = 0.5
DEFAULT_TEX_PPM = 2.0
DEFAULT_MAX_RANGE_M = 300.0
DEFAULT_NOISE_AMP = 0.02


@dataclass
class WorldTexture:
    tex: np.ndarray  # (Ht, Wt) uint8 class grid
    origin: tuple[float, float]  # world coords of texel (0, 0) center
    ppm: float

    def class_at(self, x: float, y: float) -> int:
        ti = int(math.floor((x - self.origin[0]) * self.ppm + 0.5))
        tj = int(math.floor((y - self.origin[1]) * self.ppm + 0.5))
        if 0 <= ti < self.tex.shape[0] and 0 <= tj < self.tex.shape[1]:
            return int(self.tex[ti, tj])
        return TEX_BACKGROUND


def _paint_polylines(canvas, origin, ppm, polylines, width_m, value):
    segs_m = polylines_to_segments(polylines)
    if segs_m.shape[0] == 0:
        return
    segs_px = np.empty_like(segs_m)
    segs_px[:, 0] = (segs_m[:, 0] - origin[0]) * ppm
    segs_px[:, 1] = (segs_m[:, 1] - origin[1]) * ppm
    segs_px[:, 2] = (segs_m[:, 2] - origin[0]) * ppm
    segs_px[:, 3] = (segs_m[:, 3] - origin[1]) * ppm
    radii = np.full(segs_px.shape[0], width_m * ppm / 2.0)
    kernels.paint_strokes(canvas, segs_px, radii, value)


def build_world_texture(scene: Scene, ppm: float = DEFAULT_TEX_PPM,
                        margin_m: float = 30.0) -> WorldTexture:
    """Rasterize the scene into a world-frame semantic class grid."""
    xmin, ymin, xmax, ymax = scene.bounds()
    max_w = max((g.width_m for g in scene.geometry), default=4.0)
    xmin -= margin_m + max_w
    ymin -= margin_m + max_w
    xmax += margin_m + max_w
    ymax += margin_m + max_w
    ht = int(math.ceil((xmax - xmin) * ppm)) + 1
    wt = int(math.ceil((ymax - ymin) * ppm)) + 1
    tex = np.zeros((ht, wt), dtype=np.uint8)
    origin = (xmin, ymin)

    for geom in scene.geometry:
        _paint_polylines(tex, origin, ppm, geom.lane_centers, geom.lane_width_m, TEX_ROAD)
    for geom in scene.geometry:
        _paint_polylines(tex, origin, ppm, geom.lane_dividers, MARKING_WIDTH_M, TEX_MARKING)
        _paint_polylines(tex, origin, ppm, geom.edges, MARKING_WIDTH_M, TEX_MARKING)
    if scene.junctions:
        # Junction interiors are unmarked road surface.
        discs = [np.array([(x, y), (x, y)]) for x, y, _ in scene.junctions]
        for (x, y, r), disc in zip(scene.junctions, discs):
            _paint_polylines(tex, origin, ppm, [disc], 2.0 * r, TEX_ROAD)
    return WorldTexture(tex=tex, origin=origin, ppm=ppm)


def camera_world_transform(cam: CameraModel, pose: EgoPose) -> tuple[np.ndarray, np.ndarray]:
    """(camera position, camera->world rotation) for an ego pose."""
    c, s = math.cos(pose.heading), math.sin(pose.heading)
    rot_we = np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    pos_xy = ego_to_world(cam.translation[None, :2], pose)[0]
    cam_pos = np.array([pos_xy[0], pos_xy[1], cam.translation[2]])
    return cam_pos, rot_we @ cam.rotation


def render_camera(texture: WorldTexture, cam: CameraModel, pose: EgoPose,
                  seed: int, noise_amp: float = DEFAULT_NOISE_AMP,
                  max_range: float = DEFAULT_MAX_RANGE_M,
                  boxes: np.ndarray | None = None) -> np.ndarray:
    cam_pos, rot_wc = camera_world_transform(cam, pose)
    width, height = cam.image_size
    return kernels.render_ground_plane(
        texture.tex, texture.origin[0], texture.origin[1], texture.ppm,
        cam_pos, rot_wc, cam.fx, cam.fy, cam.cx, cam.cy,
        height, width, max_range,
        PALETTE, SKY_HORIZON, SKY_ZENITH, noise_amp, seed,
        boxes=boxes, box_color=BOX_COLOR,
    )


def render_surround(scene: Scene, pose: EgoPose, rig: list[CameraModel],
                    seed: int = 0, noise_amp: float = DEFAULT_NOISE_AMP,
                    max_range: float = DEFAULT_MAX_RANGE_M,
                    texture: WorldTexture | None = None,
                    boxes: np.ndarray | None = None) -> SurroundFrameSet:
    """Render the six surround-view images for a pose. Deterministic."""
    if len(rig) != 6:
        raise ValueError(f"rig must have 6 cameras, got {len(rig)}")
    if texture is None:
        texture = build_world_texture(scene)
    frames = []
    for idx, cam in enumerate(rig):
        img = render_camera(texture, cam, pose, seed * 8 + idx,
                            noise_amp=noise_amp, max_range=max_range, boxes=boxes)
        frames.append((img, cam))
    return SurroundFrameSet(frames=frames)
