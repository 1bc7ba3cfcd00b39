"""Pure-numpy reference implementations of the hot raster/render kernels.

These are the fallback path selected by ``MAPBEV_NO_NUMBA=1`` (or when
numba is unavailable). The arithmetic is kept expression-for-expression
identical to the numba implementations so both backends produce
bitwise-equal outputs.
"""

from __future__ import annotations

import numpy as np

_U64 = np.uint64
_GOLDEN = _U64(0x9E3779B97F4A7C15)
_MIX1 = _U64(0xBF58476D1CE4E5B9)
_MIX2 = _U64(0x94D049BB133111EB)
_KEYMUL = _U64(1000003)
_INV_2_53 = 1.0 / 9007199254740992.0


def _splitmix64(z):
    z = (z + _GOLDEN).astype(np.uint64) if isinstance(z, np.ndarray) else _U64(z + _GOLDEN)
    z = (z ^ (z >> _U64(30))) * _MIX1
    z = (z ^ (z >> _U64(27))) * _MIX2
    return z ^ (z >> _U64(31))


def hash_noise(seed: int, rows: np.ndarray, cols: np.ndarray, channel: int) -> np.ndarray:
    """Deterministic per-pixel noise in [-1, 1) from integer coordinates."""
    key = (_U64(seed) * _KEYMUL + rows.astype(np.uint64)) * _KEYMUL
    key = (key + cols.astype(np.uint64)) * _U64(4) + _U64(channel)
    h = _splitmix64(key)
    return (h >> _U64(11)).astype(np.float64) * _INV_2_53 * 2.0 - 1.0


def paint_strokes(canvas: np.ndarray, segs: np.ndarray, radii: np.ndarray, value: int) -> None:
    """Draw round-capped stroked segments into ``canvas`` in place.

    ``segs`` is (N, 4) float64 of (r0, c0, r1, c1) in pixel coordinates
    (cell centers on the integer lattice); ``radii`` is the per-segment
    stroke half-width in pixels. A cell is painted when its center lies
    within ``radius`` of the segment (inclusive). Zero-length segments
    paint discs.
    """
    h, w = canvas.shape
    for i in range(segs.shape[0]):
        x0, y0, x1, y1 = segs[i]
        rad = radii[i]
        r_lo = max(0, int(np.floor(min(x0, x1) - rad)))
        r_hi = min(h - 1, int(np.ceil(max(x0, x1) + rad)))
        c_lo = max(0, int(np.floor(min(y0, y1) - rad)))
        c_hi = min(w - 1, int(np.ceil(max(y0, y1) + rad)))
        if r_lo > r_hi or c_lo > c_hi:
            continue
        rr = np.arange(r_lo, r_hi + 1, dtype=np.float64)[:, None]
        cc = np.arange(c_lo, c_hi + 1, dtype=np.float64)[None, :]
        dx = x1 - x0
        dy = y1 - y0
        seg_len2 = dx * dx + dy * dy
        if seg_len2 > 0.0:
            t = ((rr - x0) * dx + (cc - y0) * dy) / seg_len2
            t = np.minimum(np.maximum(t, 0.0), 1.0)
        else:
            t = np.zeros((rr.shape[0], cc.shape[1]), dtype=np.float64)
        ex = x0 + t * dx - rr
        ey = y0 + t * dy - cc
        inside = ex * ex + ey * ey <= rad * rad
        region = canvas[r_lo : r_hi + 1, c_lo : c_hi + 1]
        region[inside] = value


def _box_hit_t(ox, oy, oz, dwx, dwy, dwz, box):
    """Entry parameter of a ray into an axis-aligned box (inf when missed)."""
    tnear = np.full(dwx.shape, -np.inf)
    tfar = np.full(dwx.shape, np.inf)
    for axis, (o, d) in enumerate(((ox, dwx), (oy, dwy), (oz, dwz))):
        lo, hi = box[2 * axis], box[2 * axis + 1]
        inv = np.where(d != 0.0, 1.0 / np.where(d != 0.0, d, 1.0), 1e300)
        t1 = (lo - o) * inv
        t2 = (hi - o) * inv
        tnear = np.maximum(tnear, np.minimum(t1, t2))
        tfar = np.minimum(tfar, np.maximum(t1, t2))
    hit = (tnear <= tfar) & (tnear > 1e-9)
    return np.where(hit, tnear, np.inf)


def render_ground_plane(
    tex: np.ndarray,
    origin_x: float,
    origin_y: float,
    tex_ppm: float,
    cam_pos: np.ndarray,
    rot_cam_to_world: np.ndarray,
    fx: float,
    fy: float,
    cx: float,
    cy: float,
    height: int,
    width: int,
    max_range: float,
    palette: np.ndarray,
    sky_horizon: np.ndarray,
    sky_zenith: np.ndarray,
    noise_amp: float,
    seed: int,
    boxes: np.ndarray | None = None,
    box_color: np.ndarray | None = None,
) -> np.ndarray:
    """Ray-cast every pixel onto the z=0 plane shaded by a semantic texture.

    ``tex`` is a (Ht, Wt) uint8 class grid whose texel (0, 0) center sits at
    world (origin_x, origin_y); ``palette`` maps class id to RGB in [0, 1].
    Rays that miss the plane within ``max_range`` render as a sky gradient.
    Optional ``boxes`` are (M, 6) axis-aligned occluders
    (xmin, xmax, ymin, ymax, zmin, zmax) shaded flat with ``box_color``.
    Returns a (height, width, 3) float32 image.
    """
    if box_color is None:
        box_color = np.zeros(3, dtype=np.float64)
    vv = np.arange(height, dtype=np.float64)[:, None]
    uu = np.arange(width, dtype=np.float64)[None, :]
    rx = (uu - cx) / fx * np.ones_like(vv)
    ry = (vv - cy) / fy * np.ones_like(uu)
    r = rot_cam_to_world
    dwx = r[0, 0] * rx + r[0, 1] * ry + r[0, 2]
    dwy = r[1, 0] * rx + r[1, 1] * ry + r[1, 2]
    dwz = r[2, 0] * rx + r[2, 1] * ry + r[2, 2]
    norm = np.sqrt(dwx * dwx + dwy * dwy + dwz * dwz)

    hits_plane = dwz < -1e-12
    t = np.where(hits_plane, -cam_pos[2] / np.where(hits_plane, dwz, -1.0), 0.0)
    dist = t * norm
    ground = hits_plane & (dist <= max_range)

    t_box = np.full(dwx.shape, np.inf)
    if boxes is not None:
        for box in boxes:
            t_box = np.minimum(
                t_box,
                _box_hit_t(cam_pos[0], cam_pos[1], cam_pos[2], dwx, dwy, dwz, box),
            )
    occluded = (t_box * norm <= max_range) & (~ground | (t_box < t))
    ground = ground & ~occluded

    hx = cam_pos[0] + t * dwx
    hy = cam_pos[1] + t * dwy
    ti = np.floor((hx - origin_x) * tex_ppm + 0.5).astype(np.int64)
    tj = np.floor((hy - origin_y) * tex_ppm + 0.5).astype(np.int64)
    in_tex = (ti >= 0) & (ti < tex.shape[0]) & (tj >= 0) & (tj < tex.shape[1])
    cls = np.zeros(ti.shape, dtype=np.int64)
    sel = ground & in_tex
    cls[sel] = tex[ti[sel], tj[sel]]

    elev = np.minimum(np.maximum(dwz / norm, 0.0), 1.0)
    img = np.empty((height, width, 3), dtype=np.float64)
    rows = np.broadcast_to(np.arange(height, dtype=np.int64)[:, None], (height, width))
    cols = np.broadcast_to(np.arange(width, dtype=np.int64)[None, :], (height, width))
    for ch in range(3):
        sky = sky_horizon[ch] * (1.0 - elev) + sky_zenith[ch] * elev
        base = np.where(ground, palette[cls, ch], sky)
        base = np.where(occluded, box_color[ch], base)
        noise = hash_noise(seed, rows, cols, ch) * noise_amp
        img[:, :, ch] = np.minimum(np.maximum(base + noise, 0.0), 1.0)
    return img.astype(np.float32)
