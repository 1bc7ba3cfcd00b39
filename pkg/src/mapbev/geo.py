"""Spherical web-mercator projection math and ego-frame transforms.

Conventions used throughout the package:

- Geographic coordinates are WGS84 (EPSG:4326) degrees; projected
  coordinates are spherical web-mercator (EPSG:3857) meters with
  R = 6378137 m.
- The ego frame has +x pointing forward and +y pointing left; headings
  are radians counter-clockwise from east, normalized to [-pi, pi).
  Every other module converts to this convention at its own boundary.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import GeoDomainError

EARTH_RADIUS_M = 6378137.0
# Latitude where |mercator y| == pi * R; the projection diverges beyond it.
MERCATOR_MAX_LAT_DEG = 85.051129
MERCATOR_BOUND_M = math.pi * EARTH_RADIUS_M


@dataclass(frozen=True)
class GeoPoint:
    """WGS84 longitude/latitude in degrees."""

    lon: float
    lat: float

    def __post_init__(self):
        if not -180.0 <= self.lon <= 180.0:
            raise GeoDomainError(f"longitude {self.lon} outside [-180, 180]")
        if not -MERCATOR_MAX_LAT_DEG < self.lat < MERCATOR_MAX_LAT_DEG:
            raise GeoDomainError(
                f"latitude {self.lat} outside the mercator band "
                f"(+/-{MERCATOR_MAX_LAT_DEG})"
            )


@dataclass(frozen=True)
class MercatorPoint:
    """Spherical web-mercator easting/northing in meters."""

    x: float
    y: float

    def __post_init__(self):
        if abs(self.x) > MERCATOR_BOUND_M or abs(self.y) > MERCATOR_BOUND_M:
            raise GeoDomainError(
                f"mercator point ({self.x}, {self.y}) outside +/-pi*R band"
            )


@dataclass(frozen=True)
class RegionCorrection:
    """Origin offset (meters, applied in mercator space) and origin scale."""

    offset_m: tuple[float, float] = (0.0, 0.0)
    origin_scale: float = 1.0

    def __post_init__(self):
        if self.origin_scale <= 0:
            raise GeoDomainError(f"origin_scale must be > 0, got {self.origin_scale}")


def normalize_heading(heading: float) -> float:
    """Wrap a heading to [-pi, pi)."""
    return (heading + math.pi) % (2.0 * math.pi) - math.pi


@dataclass(frozen=True)
class EgoPose:
    """Local-frame ego pose: position in meters, heading CCW-from-east radians."""

    x: float
    y: float
    heading: float

    def __post_init__(self):
        object.__setattr__(self, "heading", normalize_heading(self.heading))

    @property
    def position(self) -> tuple[float, float]:
        return (self.x, self.y)


def wgs84_to_mercator(p: GeoPoint) -> MercatorPoint:
    """Project EPSG:4326 lon/lat onto the EPSG:3857 plane."""
    x = EARTH_RADIUS_M * math.radians(p.lon)
    y = EARTH_RADIUS_M * math.log(math.tan(math.pi / 4.0 + math.radians(p.lat) / 2.0))
    return MercatorPoint(x, y)


def mercator_to_wgs84(m: MercatorPoint) -> GeoPoint:
    """Inverse of :func:`wgs84_to_mercator` up to floating round-off."""
    lon = math.degrees(m.x / EARTH_RADIUS_M)
    lat = math.degrees(2.0 * math.atan(math.exp(m.y / EARTH_RADIUS_M)) - math.pi / 2.0)
    # Round-off at the +/-180 deg edge may land a hair outside the band.
    lon = min(max(lon, -180.0), 180.0)
    return GeoPoint(lon, lat)


def apply_region_correction(p: GeoPoint, corr: RegionCorrection) -> GeoPoint:
    """Register a map coordinate with dataset coordinates.

    Forward-projects to mercator, scales the origin coordinates by
    ``corr.origin_scale``, adds ``corr.offset_m`` and projects back.
    A neutral correction (offset (0, 0), scale 1.0) is the identity.
    """
    m = wgs84_to_mercator(p)
    x = m.x * corr.origin_scale + corr.offset_m[0]
    y = m.y * corr.origin_scale + corr.offset_m[1]
    return mercator_to_wgs84(MercatorPoint(x, y))


def world_to_ego(points: np.ndarray, pose: EgoPose) -> np.ndarray:
    """Transform world-frame (x, y) points into the ego frame of ``pose``.

    ``points`` is an (N, 2) array; returns an (N, 2) float64 array with
    +x forward and +y left of the ego vehicle.
    """
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    if pts.size == 0:
        return pts.copy()
    c, s = math.cos(pose.heading), math.sin(pose.heading)
    dx = pts[:, 0] - pose.x
    dy = pts[:, 1] - pose.y
    out = np.empty_like(pts)
    out[:, 0] = c * dx + s * dy
    out[:, 1] = -s * dx + c * dy
    return out


def ego_to_world(points: np.ndarray, pose: EgoPose) -> np.ndarray:
    """Inverse of :func:`world_to_ego`."""
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    if pts.size == 0:
        return pts.copy()
    c, s = math.cos(pose.heading), math.sin(pose.heading)
    out = np.empty_like(pts)
    out[:, 0] = c * pts[:, 0] - s * pts[:, 1] + pose.x
    out[:, 1] = s * pts[:, 0] + c * pts[:, 1] + pose.y
    return out


def load_region_corrections(path: str | Path | None = None) -> dict[str, RegionCorrection]:
    """Load a region-correction table.

    The file is a JSON array of ``{"region": str, "offset_m": [x, y],
    "scale": number}``. With no path, the bundled table is used. Bundled
    offsets are placeholder zeros; they must be calibrated against real
    map/dataset pairs before use outside the synthetic pipeline.
    """
    if path is None:
        text = resources.files("mapbev.data").joinpath("region_corrections.json").read_text()
    else:
        text = Path(path).read_text()
    table = {}
    for entry in json.loads(text):
        table[entry["region"]] = RegionCorrection(
            offset_m=(float(entry["offset_m"][0]), float(entry["offset_m"][1])),
            origin_scale=float(entry["scale"]),
        )
    return table
