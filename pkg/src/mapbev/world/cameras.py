"""Pinhole camera models and the surround-view rig.

Camera frame follows the usual computer-vision convention: +z along the
optical axis, +x right (image u), +y down (image v). Extrinsics map
camera coordinates into the ego frame (+x forward, +y left, +z up).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import ValidationError

CAMERA_ORDER = ("front", "front_left", "front_right", "rear", "rear_left", "rear_right")


@dataclass
class CameraModel:
    intrinsics: np.ndarray  # 3x3 pinhole matrix
    rotation: np.ndarray  # 3x3, camera -> ego
    translation: np.ndarray  # (3,), camera position in ego frame, meters
    image_size: tuple[int, int] = (352, 128)  # (width, height)
    name: str = ""

    def __post_init__(self):
        self.intrinsics = np.asarray(self.intrinsics, dtype=np.float64)
        self.rotation = np.asarray(self.rotation, dtype=np.float64)
        self.translation = np.asarray(self.translation, dtype=np.float64)
        if self.intrinsics[0, 0] <= 0 or self.intrinsics[1, 1] <= 0:
            raise ValidationError("camera focal lengths must be positive")
        err = np.abs(self.rotation @ self.rotation.T - np.eye(3)).max()
        if err > 1e-9:
            raise ValidationError(f"camera rotation not orthonormal (max error {err:.3e})")

    @property
    def fx(self) -> float:
        return float(self.intrinsics[0, 0])

    @property
    def fy(self) -> float:
        return float(self.intrinsics[1, 1])

    @property
    def cx(self) -> float:
        return float(self.intrinsics[0, 2])

    @property
    def cy(self) -> float:
        return float(self.intrinsics[1, 2])

    def project_ego_points(self, pts_ego: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Project ego-frame 3-D points; returns (uv (N, 2), z_cam (N,))."""
        pts = np.asarray(pts_ego, dtype=np.float64).reshape(-1, 3)
        cam = (pts - self.translation) @ self.rotation
        z = cam[:, 2]
        with np.errstate(divide="ignore", invalid="ignore"):
            u = self.fx * cam[:, 0] / z + self.cx
            v = self.fy * cam[:, 1] / z + self.cy
        return np.stack([u, v], axis=1), z


def rotation_from_yaw(yaw_rad: float) -> np.ndarray:
    """Camera->ego rotation for an optical axis at ego-frame azimuth yaw."""
    c, s = math.cos(yaw_rad), math.sin(yaw_rad)
    # Columns: camera x (image right), y (image down), z (optical axis) in ego.
    return np.array([
        [s, 0.0, c],
        [-c, 0.0, s],
        [0.0, -1.0, 0.0],
    ])


def make_camera(yaw_deg: float, position: tuple[float, float, float],
                fov_deg: float, image_size: tuple[int, int] = (352, 128),
                name: str = "") -> CameraModel:
    width, height = image_size
    fx = width / (2.0 * math.tan(math.radians(fov_deg) / 2.0))
    intrinsics = np.array([
        [fx, 0.0, width / 2.0],
        [0.0, fx, height / 2.0],
        [0.0, 0.0, 1.0],
    ])
    return CameraModel(
        intrinsics=intrinsics,
        rotation=rotation_from_yaw(math.radians(yaw_deg)),
        translation=np.array(position, dtype=np.float64),
        image_size=image_size,
        name=name,
    )


# Qualitative mimic of a production surround rig: yaw angles and FOVs are
# configurable, these are only sensible defaults.
DEFAULT_RIG_LAYOUT = (
    ("front", 0.0, (1.5, 0.0, 1.6), 70.0),
    ("front_left", 55.0, (1.2, 0.8, 1.6), 70.0),
    ("front_right", -55.0, (1.2, -0.8, 1.6), 70.0),
    ("rear", 180.0, (-1.5, 0.0, 1.6), 110.0),
    ("rear_left", 110.0, (-1.0, 0.8, 1.6), 70.0),
    ("rear_right", -110.0, (-1.0, -0.8, 1.6), 70.0),
)


def default_rig(image_size: tuple[int, int] = (352, 128),
                layout=DEFAULT_RIG_LAYOUT) -> list[CameraModel]:
    return [make_camera(yaw, pos, fov, image_size, name=name)
            for name, yaw, pos, fov in layout]


def rig_to_json(rig: list[CameraModel]) -> list[dict]:
    return [{
        "name": cam.name,
        "intrinsics": cam.intrinsics.tolist(),
        "rotation": cam.rotation.tolist(),
        "translation": cam.translation.tolist(),
        "image_size": list(cam.image_size),
    } for cam in rig]


def rig_from_json(entries: list[dict]) -> list[CameraModel]:
    return [CameraModel(
        intrinsics=np.array(e["intrinsics"]),
        rotation=np.array(e["rotation"]),
        translation=np.array(e["translation"]),
        image_size=tuple(e["image_size"]),
        name=e.get("name", ""),
    ) for e in entries]


@dataclass
class SurroundFrameSet:
    """Exactly six posed camera images in fixed rig order."""

    frames: list[tuple[np.ndarray, CameraModel]] = field(default_factory=list)

    def __post_init__(self):
        if len(self.frames) != 6:
            raise ValidationError(f"surround set needs exactly 6 frames, got {len(self.frames)}")

    @property
    def images(self) -> np.ndarray:
        return np.stack([img for img, _ in self.frames])

    @property
    def cameras(self) -> list[CameraModel]:
        return [cam for _, cam in self.frames]
