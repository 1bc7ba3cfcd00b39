"""Long-range BEV road segmentation fusing surround cameras with SD maps."""

__version__ = "0.1.0"

from .geo import (
    EgoPose,
    GeoPoint,
    MercatorPoint,
    RegionCorrection,
    apply_region_correction,
    mercator_to_wgs84,
    wgs84_to_mercator,
    world_to_ego,
)
from .grid import BEVGrid
from .raster import SDRaster, ego_window, rasterize
from .roadgraph import RoadGraph, parse_road_graph

__all__ = [
    "EgoPose", "GeoPoint", "MercatorPoint", "RegionCorrection",
    "apply_region_correction", "mercator_to_wgs84", "wgs84_to_mercator",
    "world_to_ego", "BEVGrid", "SDRaster", "ego_window", "rasterize",
    "RoadGraph", "parse_road_graph", "__version__",
]
