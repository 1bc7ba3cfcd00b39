"""Ego-centric BEV grid geometry shared by rasters, ground truth and metrics.

Grid convention: row axis runs along the vehicle's forward (+x) axis,
column axis along the leftward (+y) axis. Pixel (r, c) samples the
continuous point at pixel coordinates exactly (r, c), i.e. cell centers
sit on the integer lattice, and the ego vehicle sits at the center cell
(H // 2, W // 2) whose center is ego (0, 0).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError


@dataclass(frozen=True)
class BEVGrid:
    """Metric extent and resolution of the ego-centric BEV raster."""

    length_m: float = 400.0
    width_m: float = 96.0
    ppm: float = 1.0

    def __post_init__(self):
        for name, value in (("length_m", self.length_m), ("width_m", self.width_m), ("ppm", self.ppm)):
            if value <= 0:
                raise ConfigError(f"{name} must be positive, got {value}")
        if abs(self.length_m * self.ppm - round(self.length_m * self.ppm)) > 1e-9:
            raise ConfigError(f"extent {self.length_m} m at {self.ppm} ppm is not an integer pixel count")
        if abs(self.width_m * self.ppm - round(self.width_m * self.ppm)) > 1e-9:
            raise ConfigError(f"extent {self.width_m} m at {self.ppm} ppm is not an integer pixel count")

    @property
    def height(self) -> int:
        return int(round(self.length_m * self.ppm))

    @property
    def width(self) -> int:
        return int(round(self.width_m * self.ppm))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.height, self.width)

    @property
    def extent(self) -> tuple[float, float]:
        return (self.length_m, self.width_m)

    def to_pixel(self, points_xy: np.ndarray) -> np.ndarray:
        """Map ego-frame (x, y) meters to continuous (row, col) pixel coords."""
        pts = np.asarray(points_xy, dtype=np.float64).reshape(-1, 2)
        out = np.empty_like(pts)
        out[:, 0] = (pts[:, 0] + self.length_m / 2.0) * self.ppm
        out[:, 1] = (pts[:, 1] + self.width_m / 2.0) * self.ppm
        return out

    def cell_of(self, points_xy: np.ndarray) -> np.ndarray:
        """Nearest cell (row, col) per point; may fall outside the grid."""
        px = self.to_pixel(points_xy)
        return np.floor(px + 0.5).astype(np.int64)

    def cell_centers_xy(self) -> tuple[np.ndarray, np.ndarray]:
        """Ego-frame x and y coordinates of all cell centers.

        Returns (x, y) arrays of shapes (H, 1) and (1, W) that broadcast
        to the grid shape.
        """
        rows = np.arange(self.height, dtype=np.float64)[:, None]
        cols = np.arange(self.width, dtype=np.float64)[None, :]
        x = rows / self.ppm - self.length_m / 2.0
        y = cols / self.ppm - self.width_m / 2.0
        return x, y

    def distance_from_ego(self) -> np.ndarray:
        """Euclidean distance (m) from ego (0, 0) to every cell center."""
        x, y = self.cell_centers_xy()
        return np.hypot(x, y)
