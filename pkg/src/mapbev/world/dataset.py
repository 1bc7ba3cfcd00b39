"""Synthetic dataset generation and loading.

Layout: one directory per sample holding ``cam_0..5.png``, ``sd.png``
(+ sidecar json), ``gt_<class>.png`` and ``meta.json`` (pose, rig, seeds,
world-frame way centerlines for SD re-rasterization under pose noise).
A ``manifest.json`` at the root lists samples per split. Scene seeds are
split by parity: train scenes use even seeds, validation odd ones.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image

from ..geo import EgoPose
from ..grid import BEVGrid
from ..raster import SDRaster, clip_polyline, rasterize
from .cameras import CameraModel, default_rig, rig_from_json, rig_to_json
from .ground_truth import GT_CHANNELS, render_ground_truth
from .render import build_world_texture, render_surround
from .scene import Scene, SceneSpec, generate_scene, sample_ego_pose

MANIFEST_VERSION = 1


@dataclass
class Sample:
    images: np.ndarray  # (6, H_img, W_img, 3) uint8
    sd: np.ndarray  # (H, W) uint8 binary
    gt: np.ndarray  # (H, W, 4) uint8 binary
    pose: EgoPose
    centerlines: list[np.ndarray]  # world-frame way centerlines
    scene_seed: int
    path: Path | None = None


def sd_polylines_for_pose(centerlines: list[np.ndarray], pose: EgoPose,
                          grid: BEVGrid, line_width_px: int) -> list[np.ndarray]:
    """Ego-window the skeleton with margin matched to the stroke width."""
    from ..geo import world_to_ego

    margin = line_width_px / grid.ppm / 2.0 + 1.0
    half_l = grid.length_m / 2.0 + margin
    half_w = grid.width_m / 2.0 + margin
    out = []
    for pts in centerlines:
        ego = world_to_ego(pts, pose)
        out.extend(clip_polyline(ego, -half_l, half_l, -half_w, half_w))
    return out


def make_sd_raster(centerlines: list[np.ndarray], pose: EgoPose, grid: BEVGrid,
                   line_width_px: int) -> SDRaster:
    polylines = sd_polylines_for_pose(centerlines, pose, grid, line_width_px)
    return rasterize(polylines, grid.extent, grid.ppm, line_width_px)


def _scene_spec_for(seed: int, gen_cfg: dict) -> SceneSpec:
    """Sample per-scene lane layout so the skeleton alone cannot pin lanes."""
    rng = np.random.default_rng((seed, 9173))
    lanes = int(rng.integers(gen_cfg["lanes_min"], gen_cfg["lanes_max"] + 1))
    width = float(rng.uniform(gen_cfg["lane_width_min_m"], gen_cfg["lane_width_max_m"]))
    return SceneSpec(
        seed=seed,
        n_roads=gen_cfg["n_roads"],
        curvature_range=gen_cfg["curvature_range"],
        lane_width_m=width,
        lanes_per_road=lanes,
        junction_probability=gen_cfg["junction_probability"],
    )


def build_sample(scene_seed: int, gen_cfg: dict, grid: BEVGrid,
                 rig: list[CameraModel], line_width_px: int) -> tuple[Sample, Scene]:
    spec = _scene_spec_for(scene_seed, gen_cfg)
    scene = generate_scene(spec)
    pose_rng = np.random.default_rng((scene_seed, 551))
    pose = sample_ego_pose(scene, pose_rng)

    texture = build_world_texture(scene)
    frames = render_surround(scene, pose, rig, seed=scene_seed, texture=texture)
    gt = render_ground_truth(scene, pose, grid)
    centerlines = [g.centerline for g in scene.geometry]
    sd = make_sd_raster(centerlines, pose, grid, line_width_px)
    images = np.stack([
        np.clip(np.round(img * 255.0), 0, 255).astype(np.uint8) for img, _ in frames.frames
    ])
    return Sample(images=images, sd=sd.grid, gt=gt.grid, pose=pose,
                  centerlines=centerlines, scene_seed=scene_seed), scene


def _save_binary_png(path: Path, mask: np.ndarray) -> None:
    Image.fromarray((mask.astype(np.uint8) * 255), mode="L").save(path)


def _load_binary_png(path: Path) -> np.ndarray:
    return (np.asarray(Image.open(path), dtype=np.uint8) > 127).astype(np.uint8)


def save_sample(sample: Sample, directory: Path, grid: BEVGrid,
                rig: list[CameraModel], line_width_px: int) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    for i in range(6):
        Image.fromarray(sample.images[i], mode="RGB").save(directory / f"cam_{i}.png")
    SDRaster(grid=sample.sd, extent=grid.extent, ppm=grid.ppm).save_png(
        directory / "sd.png", pose=sample.pose)
    for ch, name in enumerate(GT_CHANNELS):
        _save_binary_png(directory / f"gt_{_gt_file_stem(name)}.png", sample.gt[:, :, ch])
    meta = {
        "scene_seed": sample.scene_seed,
        "pose": {"x": sample.pose.x, "y": sample.pose.y, "heading": sample.pose.heading},
        "rig": rig_to_json(rig),
        "sd_line_width_px": line_width_px,
        "grid": {"length_m": grid.length_m, "width_m": grid.width_m, "ppm": grid.ppm},
        "centerlines": [c.tolist() for c in sample.centerlines],
    }
    (directory / "meta.json").write_text(json.dumps(meta))


def _gt_file_stem(name: str) -> str:
    return {"lane": "lane", "road": "road",
            "lane_divider": "lane_div", "road_divider": "road_div"}[name]


def load_sample(directory: Path) -> Sample:
    meta = json.loads((directory / "meta.json").read_text())
    images = np.stack([
        np.asarray(Image.open(directory / f"cam_{i}.png"), dtype=np.uint8) for i in range(6)
    ])
    sd = _load_binary_png(directory / "sd.png")
    gt = np.stack([_load_binary_png(directory / f"gt_{_gt_file_stem(n)}.png")
                   for n in GT_CHANNELS], axis=-1)
    pose = EgoPose(**meta["pose"])
    centerlines = [np.asarray(c, dtype=np.float64) for c in meta["centerlines"]]
    return Sample(images=images, sd=sd, gt=gt, pose=pose,
                  centerlines=centerlines, scene_seed=meta["scene_seed"], path=directory)


def generate_dataset(root: Path, grid: BEVGrid, gen_cfg: dict,
                     n_train: int, n_val: int, base_seed: int = 0,
                     line_width_px: int = 3, dataset_hash: str = "",
                     progress: bool = False) -> dict:
    """Generate and persist the synthetic dataset; returns the manifest."""
    root = Path(root)
    rig = default_rig()
    manifest = {"version": MANIFEST_VERSION, "dataset_hash": dataset_hash,
                "grid": {"length_m": grid.length_m, "width_m": grid.width_m, "ppm": grid.ppm},
                "train": [], "val": []}
    jobs = [("train", i, 2 * (base_seed * 1_000_000 + i)) for i in range(n_train)]
    jobs += [("val", i, 2 * (base_seed * 1_000_000 + i) + 1) for i in range(n_val)]
    for split, idx, scene_seed in jobs:
        rel = f"samples/{split}_{idx:06d}"
        sample, _ = build_sample(scene_seed, gen_cfg, grid, rig, line_width_px)
        save_sample(sample, root / rel, grid, rig, line_width_px)
        manifest[split].append(rel)
        if progress and (idx + 1) % 50 == 0:
            print(f"  {split}: {idx + 1} samples")
    (root / "manifest.json").write_text(json.dumps(manifest, indent=1))
    return manifest


def load_manifest(root: Path) -> dict:
    return json.loads((Path(root) / "manifest.json").read_text())


class SampleStore:
    """RAM-resident view of one split for training/evaluation."""

    def __init__(self, root: Path, split: str):
        self.root = Path(root)
        manifest = load_manifest(self.root)
        self.dataset_hash = manifest.get("dataset_hash", "")
        self.dirs = [self.root / rel for rel in manifest[split]]
        if not self.dirs:
            raise ValueError(f"dataset at {root} has no '{split}' samples")
        self.samples = [load_sample(d) for d in self.dirs]
        meta = json.loads((self.dirs[0] / "meta.json").read_text())
        self.rig = rig_from_json(meta["rig"])
        self.line_width_px = int(meta["sd_line_width_px"])
        g = meta["grid"]
        self.grid = BEVGrid(length_m=g["length_m"], width_m=g["width_m"], ppm=g["ppm"])

    def __len__(self) -> int:
        return len(self.samples)

    def sd_for_pose(self, idx: int, pose: EgoPose) -> np.ndarray:
        sample = self.samples[idx]
        return make_sd_raster(sample.centerlines, pose, self.grid, self.line_width_px).grid
