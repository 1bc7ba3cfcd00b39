"""Numba-jitted implementations of the hot raster/render kernels.

Arithmetic mirrors ``_numpy_impl`` expression for expression (no
fastmath) so the two backends stay bitwise-equal.
"""

from __future__ import annotations

import numba
import numpy as np
from numba import njit, prange

_JIT = {"cache": True, "fastmath": False}


@njit(**_JIT)
def _splitmix64(z):
    z = z + np.uint64(0x9E3779B97F4A7C15)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


@njit(**_JIT)
def _noise_at(seed, row, col, channel):
    key = (np.uint64(seed) * np.uint64(1000003) + np.uint64(row)) * np.uint64(1000003)
    key = (key + np.uint64(col)) * np.uint64(4) + np.uint64(channel)
    h = _splitmix64(key)
    return np.float64(h >> np.uint64(11)) * (1.0 / 9007199254740992.0) * 2.0 - 1.0


def hash_noise(seed: int, rows: np.ndarray, cols: np.ndarray, channel: int) -> np.ndarray:
    out = np.empty(rows.shape, dtype=np.float64)
    _hash_noise_fill(out, seed, rows.astype(np.int64), cols.astype(np.int64), channel)
    return out


@njit(**_JIT)
def _hash_noise_fill(out, seed, rows, cols, channel):
    flat_out = out.ravel()
    flat_r = rows.ravel()
    flat_c = cols.ravel()
    for i in range(flat_out.shape[0]):
        flat_out[i] = _noise_at(seed, flat_r[i], flat_c[i], channel)


def paint_strokes(canvas: np.ndarray, segs: np.ndarray, radii: np.ndarray, value: int) -> None:
    _paint_strokes(canvas, np.ascontiguousarray(segs, dtype=np.float64),
                   np.ascontiguousarray(radii, dtype=np.float64), value)


@njit(**_JIT)
def _paint_strokes(canvas, segs, radii, value):
    h, w = canvas.shape
    for i in range(segs.shape[0]):
        x0 = segs[i, 0]
        y0 = segs[i, 1]
        x1 = segs[i, 2]
        y1 = segs[i, 3]
        rad = radii[i]
        r_lo = max(0, int(np.floor(min(x0, x1) - rad)))
        r_hi = min(h - 1, int(np.ceil(max(x0, x1) + rad)))
        c_lo = max(0, int(np.floor(min(y0, y1) - rad)))
        c_hi = min(w - 1, int(np.ceil(max(y0, y1) + rad)))
        if r_lo > r_hi or c_lo > c_hi:
            continue
        dx = x1 - x0
        dy = y1 - y0
        seg_len2 = dx * dx + dy * dy
        rad2 = rad * rad
        for r in range(r_lo, r_hi + 1):
            rr = np.float64(r)
            for c in range(c_lo, c_hi + 1):
                cc = np.float64(c)
                if seg_len2 > 0.0:
                    t = ((rr - x0) * dx + (cc - y0) * dy) / seg_len2
                    t = min(max(t, 0.0), 1.0)
                else:
                    t = 0.0
                ex = x0 + t * dx - rr
                ey = y0 + t * dy - cc
                if ex * ex + ey * ey <= rad2:
                    canvas[r, c] = value


@njit(**_JIT)
def _box_hit_t(ox, oy, oz, dwx, dwy, dwz, boxes):
    best = np.inf
    for b in range(boxes.shape[0]):
        tnear = -np.inf
        tfar = np.inf
        for axis in range(3):
            if axis == 0:
                o, d = ox, dwx
            elif axis == 1:
                o, d = oy, dwy
            else:
                o, d = oz, dwz
            lo = boxes[b, 2 * axis]
            hi = boxes[b, 2 * axis + 1]
            if d != 0.0:
                inv = 1.0 / d
            else:
                inv = 1e300
            t1 = (lo - o) * inv
            t2 = (hi - o) * inv
            tnear = max(tnear, min(t1, t2))
            tfar = min(tfar, max(t1, t2))
        if tnear <= tfar and tnear > 1e-9 and tnear < best:
            best = tnear
    return best


def render_ground_plane(
    tex, origin_x, origin_y, tex_ppm, cam_pos, rot_cam_to_world,
    fx, fy, cx, cy, height, width, max_range,
    palette, sky_horizon, sky_zenith, noise_amp, seed,
    boxes=None, box_color=None,
):
    img = np.empty((height, width, 3), dtype=np.float32)
    if boxes is None or len(boxes) == 0:
        boxes = np.zeros((0, 6), dtype=np.float64)
    if box_color is None:
        box_color = np.zeros(3, dtype=np.float64)
    _render_ground_plane(
        img, tex, origin_x, origin_y, tex_ppm,
        np.ascontiguousarray(cam_pos, dtype=np.float64),
        np.ascontiguousarray(rot_cam_to_world, dtype=np.float64),
        fx, fy, cx, cy, max_range,
        np.ascontiguousarray(palette, dtype=np.float64),
        np.ascontiguousarray(sky_horizon, dtype=np.float64),
        np.ascontiguousarray(sky_zenith, dtype=np.float64),
        noise_amp, seed,
        np.ascontiguousarray(boxes, dtype=np.float64),
        np.ascontiguousarray(box_color, dtype=np.float64),
    )
    return img


@njit(parallel=True, **_JIT)
def _render_ground_plane(img, tex, origin_x, origin_y, tex_ppm, cam_pos, rot,
                         fx, fy, cx, cy, max_range, palette,
                         sky_horizon, sky_zenith, noise_amp, seed,
                         boxes, box_color):
    height, width, _ = img.shape
    for v in prange(height):
        ry = (np.float64(v) - cy) / fy
        for u in range(width):
            rx = (np.float64(u) - cx) / fx
            dwx = rot[0, 0] * rx + rot[0, 1] * ry + rot[0, 2]
            dwy = rot[1, 0] * rx + rot[1, 1] * ry + rot[1, 2]
            dwz = rot[2, 0] * rx + rot[2, 1] * ry + rot[2, 2]
            norm = np.sqrt(dwx * dwx + dwy * dwy + dwz * dwz)
            ground = False
            cls = 0
            t = 0.0
            if dwz < -1e-12:
                t = -cam_pos[2] / dwz
                dist = t * norm
                if dist <= max_range:
                    ground = True
            t_box = np.inf
            if boxes.shape[0] > 0:
                t_box = _box_hit_t(cam_pos[0], cam_pos[1], cam_pos[2],
                                   dwx, dwy, dwz, boxes)
            occluded = (t_box * norm <= max_range) and ((not ground) or t_box < t)
            ground = ground and not occluded
            if ground:
                hx = cam_pos[0] + t * dwx
                hy = cam_pos[1] + t * dwy
                ti = int(np.floor((hx - origin_x) * tex_ppm + 0.5))
                tj = int(np.floor((hy - origin_y) * tex_ppm + 0.5))
                if 0 <= ti < tex.shape[0] and 0 <= tj < tex.shape[1]:
                    cls = int(tex[ti, tj])
            elev = min(max(dwz / norm, 0.0), 1.0)
            for ch in range(3):
                if ground:
                    base = palette[cls, ch]
                elif occluded:
                    base = box_color[ch]
                else:
                    base = sky_horizon[ch] * (1.0 - elev) + sky_zenith[ch] * elev
                val = base + _noise_at(seed, v, u, ch) * noise_amp
                img[v, u, ch] = np.float32(min(max(val, 0.0), 1.0))
