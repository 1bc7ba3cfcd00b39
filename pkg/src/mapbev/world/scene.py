"""Procedural road-network scenes: constant-curvature roads with lane geometry.

A scene is fully determined by its :class:`SceneSpec` (same spec, same
scene). Roads are constant-curvature arcs sampled every few meters;
junctions arise when a road branches off an existing road's node, in
which case the two ways share that node id.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, asdict

import numpy as np

from ..geo import EgoPose, normalize_heading
from ..roadgraph import RoadGraph, Way

_ARC_STEP_M = 5.0
_ROAD_CLASSES = ("primary", "secondary", "residential")


@dataclass(frozen=True)
class SceneSpec:
    seed: int = 0
    n_roads: int = 12
    curvature_range: float = 0.006  # |kappa| upper bound, 1/m
    lane_width_m: float = 3.5
    lanes_per_road: int = 2
    junction_probability: float = 0.35

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, d: dict) -> "SceneSpec":
        return cls(**d)


@dataclass
class WayGeometry:
    """Lane-level geometry derived from a way's centerline."""

    way_id: int
    centerline: np.ndarray  # (N, 2) world meters
    lanes: int
    lane_width_m: float
    lane_centers: list[np.ndarray] = field(default_factory=list)
    lane_dividers: list[np.ndarray] = field(default_factory=list)
    edges: list[np.ndarray] = field(default_factory=list)

    @property
    def width_m(self) -> float:
        return self.lanes * self.lane_width_m


@dataclass
class Scene:
    spec: SceneSpec
    graph: RoadGraph
    geometry: list[WayGeometry]
    junctions: list[tuple[float, float, float]]  # (x, y, radius_m)

    def bounds(self) -> tuple[float, float, float, float]:
        """(xmin, ymin, xmax, ymax) over all centerline points."""
        if not self.geometry:
            return (0.0, 0.0, 0.0, 0.0)
        pts = np.concatenate([g.centerline for g in self.geometry])
        return (pts[:, 0].min(), pts[:, 1].min(), pts[:, 0].max(), pts[:, 1].max())


def _polyline_normals(points: np.ndarray) -> np.ndarray:
    """Unit left normals from central-difference tangents."""
    tangents = np.empty_like(points)
    tangents[1:-1] = points[2:] - points[:-2]
    tangents[0] = points[1] - points[0]
    tangents[-1] = points[-1] - points[-2]
    norm = np.hypot(tangents[:, 0], tangents[:, 1])
    norm[norm == 0] = 1.0
    tangents /= norm[:, None]
    return np.stack([-tangents[:, 1], tangents[:, 0]], axis=1)


def offset_polyline(points: np.ndarray, offset_m: float) -> np.ndarray:
    """Laterally offset a polyline along its left normals."""
    return points + offset_m * _polyline_normals(points)


def derive_way_geometry(way_id: int, centerline: np.ndarray, lanes: int,
                        lane_width_m: float) -> WayGeometry:
    geom = WayGeometry(way_id=way_id, centerline=centerline, lanes=lanes,
                       lane_width_m=lane_width_m)
    w = lane_width_m
    for k in range(lanes):
        geom.lane_centers.append(offset_polyline(centerline, (k - (lanes - 1) / 2.0) * w))
    for m in range(1, lanes):
        geom.lane_dividers.append(offset_polyline(centerline, (m - lanes / 2.0) * w))
    half = lanes * w / 2.0
    geom.edges.append(offset_polyline(centerline, -half))
    geom.edges.append(offset_polyline(centerline, half))
    return geom


def _arc(start: np.ndarray, heading: float, curvature: float, length: float) -> np.ndarray:
    n = max(2, int(round(length / _ARC_STEP_M)) + 1)
    s = np.linspace(0.0, length, n)
    theta = heading + curvature * s
    # Integrate the constant-curvature heading analytically.
    if abs(curvature) > 1e-12:
        x = start[0] + (np.sin(theta) - math.sin(heading)) / curvature
        y = start[1] - (np.cos(theta) - math.cos(heading)) / curvature
    else:
        x = start[0] + s * math.cos(heading)
        y = start[1] + s * math.sin(heading)
    return np.stack([x, y], axis=1)


def generate_scene(spec: SceneSpec) -> Scene:
    """Generate a deterministic road network covering the ego neighborhood.

    With ``junction_probability`` zero no two ways share a node; branches
    otherwise start exactly at an existing node and reuse its id. An empty
    spec (``n_roads == 0``) produces an empty scene, not an error.
    """
    rng = np.random.default_rng(spec.seed)
    nodes: dict[int, tuple[float, float]] = {}
    ways: list[Way] = []
    geometry: list[WayGeometry] = []
    way_nodes: list[list[int]] = []
    next_node = 0

    for road_idx in range(spec.n_roads):
        branch = (
            road_idx > 0
            and rng.random() < spec.junction_probability
            and len(way_nodes) > 0
        )
        if branch:
            parent_idx = int(rng.integers(0, len(way_nodes)))
            parent_ids = way_nodes[parent_idx]
            parent_pts = geometry[parent_idx].centerline
            at = int(rng.integers(1, len(parent_ids) - 1))
            start = parent_pts[at].copy()
            tangent = parent_pts[at + 1] - parent_pts[at - 1]
            parent_heading = math.atan2(tangent[1], tangent[0])
            side = 1.0 if rng.random() < 0.5 else -1.0
            heading = normalize_heading(
                parent_heading + side * rng.uniform(math.radians(60), math.radians(120))
            )
            shared_id = parent_ids[at]
        else:
            start = rng.uniform(-280.0, 280.0, size=2)
            heading = rng.uniform(-math.pi, math.pi)
            shared_id = None

        curvature = rng.uniform(-spec.curvature_range, spec.curvature_range)
        length = rng.uniform(450.0, 750.0)
        centerline = _arc(start, heading, curvature, length)

        ids = []
        for j in range(len(centerline)):
            if j == 0 and shared_id is not None:
                ids.append(shared_id)
                continue
            nodes[next_node] = (float(centerline[j, 0]), float(centerline[j, 1]))
            ids.append(next_node)
            next_node += 1
        if shared_id is not None:
            # Keep the branch's first vertex exactly on the shared node.
            centerline[0] = nodes[shared_id]

        road_class = _ROAD_CLASSES[int(rng.integers(0, len(_ROAD_CLASSES)))]
        ways.append(Way(way_id=road_idx, nodes=ids, road_class=road_class,
                        lanes=spec.lanes_per_road, lane_width_m=spec.lane_width_m))
        way_nodes.append(ids)
        geometry.append(derive_way_geometry(road_idx, centerline,
                                            spec.lanes_per_road, spec.lane_width_m))

    # Junction discs wherever a node is shared by more than one way.
    usage: dict[int, int] = {}
    for ids in way_nodes:
        for node_id in set(ids):
            usage[node_id] = usage.get(node_id, 0) + 1
    junctions = []
    max_width = spec.lanes_per_road * spec.lane_width_m
    for node_id, count in usage.items():
        if count >= 2:
            x, y = nodes[node_id]
            junctions.append((x, y, 0.75 * max_width))

    graph = RoadGraph(nodes=nodes, ways=ways, frame="local")
    graph.validate()
    return Scene(spec=spec, graph=graph, geometry=geometry, junctions=junctions)


def sample_ego_pose(scene: Scene, rng: np.random.Generator,
                    min_lookahead_m: float = 220.0) -> EgoPose:
    """Place the ego on a lane with road continuing ahead of it."""
    if not scene.geometry:
        return EgoPose(0.0, 0.0, 0.0)
    geom = scene.geometry[int(rng.integers(0, len(scene.geometry)))]
    pts = geom.centerline
    if len(pts) < 3:
        tangent = pts[1] - pts[0]
        heading = math.atan2(tangent[1], tangent[0])
        return EgoPose(float(pts[0, 0]), float(pts[0, 1]), heading)
    lookahead_pts = int(min_lookahead_m / _ARC_STEP_M)
    hi = max(2, len(pts) - 1 - lookahead_pts)
    at = int(rng.integers(1, hi))
    tangent = pts[at + 1] - pts[at - 1]
    heading = math.atan2(tangent[1], tangent[0]) + rng.uniform(-0.08, 0.08)
    normal = np.array([-math.sin(heading), math.cos(heading)])
    lateral = rng.uniform(-geom.width_m / 2.0 + geom.lane_width_m / 2.0,
                          geom.width_m / 2.0 - geom.lane_width_m / 2.0)
    pos = pts[at] + lateral * normal
    return EgoPose(float(pos[0]), float(pos[1]), float(heading))
