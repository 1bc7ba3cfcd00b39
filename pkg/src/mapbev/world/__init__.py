from .cameras import CAMERA_ORDER, CameraModel, SurroundFrameSet, default_rig, make_camera
from .dataset import Sample, SampleStore, generate_dataset, load_manifest, load_sample, make_sd_raster
from .ground_truth import GT_CHANNELS, GroundTruthStack, render_ground_truth
from .render import build_world_texture, render_surround
from .scene import Scene, SceneSpec, generate_scene, sample_ego_pose

__all__ = [
    "CAMERA_ORDER", "CameraModel", "SurroundFrameSet", "default_rig", "make_camera",
    "Sample", "SampleStore", "generate_dataset", "load_manifest", "load_sample",
    "make_sd_raster", "GT_CHANNELS", "GroundTruthStack", "render_ground_truth",
    "build_world_texture", "render_surround",
    "Scene", "SceneSpec", "generate_scene", "sample_ego_pose",
]
