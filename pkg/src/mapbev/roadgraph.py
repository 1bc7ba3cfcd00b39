"""Road-graph parsing: OSM-style node/way documents to drivable centerlines.

Document format (JSON)::

    {
      "nodes": [{"id": 1, "x": 12.0, "y": -3.5} | {"id": 1, "lon": ..., "lat": ...}, ...],
      "ways":  [{"id": 10, "nodes": [1, 2, 3], "class": "primary"}, ...]
    }

Only drivable-road classes are kept; everything else (buildings, footways,
signs, ...) is dropped while its nodes are retained.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ParseError
from .geo import GeoPoint, RegionCorrection, apply_region_correction, wgs84_to_mercator

DRIVABLE_CLASSES = frozenset(
    {"motorway", "primary", "secondary", "residential", "service", "other"}
)


@dataclass
class Way:
    way_id: int
    nodes: list[int]
    road_class: str
    # Synthetic-world lane metadata; OSM-style documents leave these unset.
    lanes: int = 2
    lane_width_m: float = 3.5

    @property
    def width_m(self) -> float:
        return self.lanes * self.lane_width_m


@dataclass
class RoadGraph:
    """Geo- or local-frame node/way graph of road centerlines."""

    nodes: dict[int, tuple[float, float]]
    ways: list[Way]
    frame: str = "local"  # "local" (meters) or "geo" (lon/lat degrees)

    def way_points(self, way: Way) -> np.ndarray:
        return np.array([self.nodes[n] for n in way.nodes], dtype=np.float64)

    def polylines(self) -> list[np.ndarray]:
        return [self.way_points(w) for w in self.ways]

    def validate(self) -> None:
        for way in self.ways:
            if len(way.nodes) < 2:
                raise ParseError(f"way {way.way_id} has fewer than 2 nodes")
            for node_id in way.nodes:
                if node_id not in self.nodes:
                    raise ParseError(
                        f"way {way.way_id} references unknown node id {node_id}"
                    )

    def to_local(self, anchor: GeoPoint, correction: RegionCorrection | None = None) -> "RoadGraph":
        """Project a geo-frame graph into local meters centered on ``anchor``.

        Applies the region correction to every node first, then recenters
        mercator coordinates on the anchor. Mercator meters carry the usual
        cos(lat) scale distortion; adequate for city-scale windows.
        """
        if self.frame == "local":
            return self
        anchor_m = wgs84_to_mercator(anchor)
        corr = correction or RegionCorrection()
        nodes = {}
        for node_id, (lon, lat) in self.nodes.items():
            p = apply_region_correction(GeoPoint(lon, lat), corr)
            m = wgs84_to_mercator(p)
            nodes[node_id] = (m.x - anchor_m.x, m.y - anchor_m.y)
        return RoadGraph(nodes=nodes, ways=list(self.ways), frame="local")


def parse_road_graph(document: str | Path) -> RoadGraph:
    """Parse a road-graph JSON document into a :class:`RoadGraph`.

    ``document`` is JSON text, or a path to a JSON file. Ways whose class
    is not drivable are dropped (their nodes are retained). Raises
    :class:`ParseError` with position info on malformed input and with the
    offending way id on dangling node references.
    """
    if isinstance(document, Path):
        document = document.read_text()
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed road-graph JSON: {exc.msg}",
                         line=exc.lineno, column=exc.colno) from exc

    if not isinstance(doc, dict) or "nodes" not in doc or "ways" not in doc:
        raise ParseError("road-graph document must contain 'nodes' and 'ways' sections")

    nodes: dict[int, tuple[float, float]] = {}
    frame = "local"
    for i, node in enumerate(doc["nodes"]):
        try:
            node_id = int(node["id"])
            if "x" in node:
                nodes[node_id] = (float(node["x"]), float(node["y"]))
            else:
                nodes[node_id] = (float(node["lon"]), float(node["lat"]))
                frame = "geo"
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"invalid node entry at index {i}: {node!r}") from exc

    ways: list[Way] = []
    for i, way in enumerate(doc["ways"]):
        try:
            way_id = int(way["id"])
            node_ids = [int(n) for n in way["nodes"]]
            road_class = str(way["class"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"invalid way entry at index {i}: {way!r}") from exc
        if road_class not in DRIVABLE_CLASSES:
            continue
        for node_id in node_ids:
            if node_id not in nodes:
                raise ParseError(f"way {way_id} references unknown node id {node_id}")
        if len(node_ids) < 2:
            raise ParseError(f"way {way_id} has fewer than 2 nodes")
        ways.append(Way(
            way_id=way_id,
            nodes=node_ids,
            road_class=road_class,
            lanes=int(way.get("lanes", 2)),
            lane_width_m=float(way.get("lane_width_m", 3.5)),
        ))

    return RoadGraph(nodes=nodes, ways=ways, frame=frame)
