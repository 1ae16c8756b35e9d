# Copyright (C) 2022 Intel Corporation
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing,
# software distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions
# and limitations under the License.

import logging
import math
from typing import List, Tuple

import torch
from tqdm.auto import tqdm
from tqdm.contrib.logging import logging_redirect_tqdm

from aquasplat.data_models import (
    DTYPE,
    CameraView,
    DatasetView,
    FixtureSpec,
    GaussianCloud,
    MediumPreset,
    SyntheticFixture,
    TrainingDataset,
)
from aquasplat.rendering import render
from aquasplat.scene import normalize_quaternions, opacity_to_logit

from .degradation import degrade, normalize_depth

ARC_HALF_ANGLE = 30.0
ELEVATION_ANGLE = 8.0
BACKDROP_DISTANCE = 1.5
MIN_COVERAGE = 0.5


def look_at(
    center: torch.Tensor, target: torch.Tensor
) -> Tuple[torch.Tensor, torch.Tensor]:
    """
    Return the world-to-camera rotation and translation of a camera at `center`
    looking at `target`, with the world y axis pointing up in the image.

    :param center: Camera center in world coordinates, shape (3,)
    :param target: Point the optical axis passes through, shape (3,)
    :return: Tuple of rotation (3, 3) and translation (3,)
    """
    forward = target - center
    forward = forward / torch.linalg.norm(forward)
    up = torch.tensor([0.0, 1.0, 0.0], dtype=DTYPE)
    right = torch.linalg.cross(forward, up)
    right = right / torch.linalg.norm(right)
    down = torch.linalg.cross(forward, right)
    rotation = torch.stack([right, down, forward])
    return rotation, -rotation @ center


def camera_arc(spec: FixtureSpec) -> List[CameraView]:
    """
    Place the cameras of a fixture on an arc in front of the scene.

    Azimuths are spread evenly over +-30 degrees around the z axis and elevations
    alternate between +-8 degrees, so consecutive views differ both horizontally and
    vertically. All cameras look at the origin.

    :param spec: FixtureSpec giving the number of views, resolution and distance
    :return: List of CameraView, in arc order
    """
    num_views = spec.num_train_views + spec.num_test_views
    focal_length = (spec.width / 2.0) / math.tan(math.radians(spec.field_of_view) / 2)
    azimuths = torch.linspace(-ARC_HALF_ANGLE, ARC_HALF_ANGLE, num_views, dtype=DTYPE)
    if num_views == 1:
        azimuths = torch.zeros(1, dtype=DTYPE)
    origin = torch.zeros(3, dtype=DTYPE)
    cameras = []
    for index, azimuth in enumerate(azimuths.tolist()):
        elevation = ELEVATION_ANGLE if index % 2 == 0 else -ELEVATION_ANGLE
        azimuth_rad, elevation_rad = math.radians(azimuth), math.radians(elevation)
        center = spec.camera_distance * torch.tensor(
            [
                math.cos(elevation_rad) * math.sin(azimuth_rad),
                math.sin(elevation_rad),
                math.cos(elevation_rad) * math.cos(azimuth_rad),
            ],
            dtype=DTYPE,
        )
        rotation, translation = look_at(center, origin)
        cameras.append(
            CameraView.centered(
                focal_length,
                spec.width,
                spec.height,
                rotation=rotation,
                translation=translation,
                name=f"view_{index:03d}",
            )
        )
    return cameras


def split_views(spec: FixtureSpec) -> Tuple[List[int], List[int]]:
    """
    Split the arc positions into training and held-out indices.

    Held-out views are interleaved with the training views so that every held-out
    view lies between two training views.

    :param spec: FixtureSpec giving the number of views
    :return: Tuple of training indices and held-out indices
    """
    num_views = spec.num_train_views + spec.num_test_views
    if spec.num_test_views == 0:
        return list(range(num_views)), []
    stride = num_views / spec.num_test_views
    test = sorted({int(stride * (k + 0.5)) for k in range(spec.num_test_views)})
    train = [index for index in range(num_views) if index not in test]
    return train, test


def _uniform(
    shape: Tuple[int, ...], low: float, high: float, generator: torch.Generator
) -> torch.Tensor:
    """
    Draw values uniformly from [low, high).
    """
    return low + (high - low) * torch.rand(shape, generator=generator, dtype=DTYPE)


def _object_gaussians(
    count: int, radius: float, generator: torch.Generator
) -> List[torch.Tensor]:
    """
    Return means, log scales, rotations, opacities and colors of `count` randomly
    oriented anisotropic Gaussians spread uniformly in a ball of `radius`.
    """
    directions = torch.randn((count, 3), generator=generator, dtype=DTYPE)
    directions = directions / torch.linalg.norm(directions, dim=1, keepdim=True)
    radii = radius * _uniform((count,), 0.0, 1.0, generator) ** (1.0 / 3.0)
    scales = radius * _uniform((count, 3), 0.08, 0.2, generator)
    quaternions = torch.randn((count, 4), generator=generator, dtype=DTYPE)
    return [
        directions * radii[:, None],
        torch.log(scales),
        normalize_quaternions(quaternions),
        _uniform((count,), 0.6, 0.95, generator),
        _uniform((count, 3), 0.1, 0.9, generator),
    ]


def _backdrop_gaussians(
    count: int, spec: FixtureSpec, generator: torch.Generator
) -> List[torch.Tensor]:
    """
    Return the parameters of `count` flat, nearly opaque Gaussians on a square grid
    in the plane z = -1.5 * scene_radius, large enough to fill every view.
    """
    plane_depth = BACKDROP_DISTANCE * spec.scene_radius
    half_fov = math.radians(spec.field_of_view) / 2.0
    half_size = 1.6 * (spec.camera_distance + plane_depth) * math.tan(half_fov)
    columns = math.ceil(math.sqrt(count))
    spacing = 2.0 * half_size / columns
    indices = torch.arange(count)
    rows = torch.div(indices, columns, rounding_mode="floor")
    cols = torch.remainder(indices, columns)
    means = torch.stack(
        [
            -half_size + spacing * (cols.to(DTYPE) + 0.5),
            -half_size + spacing * (rows.to(DTYPE) + 0.5),
            torch.full((count,), -plane_depth, dtype=DTYPE),
        ],
        dim=1,
    )
    log_scale = torch.log(
        torch.tensor([0.7 * spacing, 0.7 * spacing, 0.05 * spacing], dtype=DTYPE)
    )
    rotations = torch.zeros((count, 4), dtype=DTYPE)
    rotations[:, 0] = 1.0
    return [
        means,
        log_scale.repeat(count, 1),
        rotations,
        torch.full((count,), 0.95, dtype=DTYPE),
        _uniform((count, 3), 0.3, 0.7, generator),
    ]


def scene_cloud(spec: FixtureSpec, generator: torch.Generator) -> GaussianCloud:
    """
    Generate the ground-truth cloud of a fixture.

    Fixtures with at least eight Gaussians spend a quarter of them on a backdrop: a
    grid of large, nearly opaque Gaussians on a plane behind the scene that fills
    the background of every view. The remaining Gaussians are spread uniformly in a
    ball around the origin. A single-Gaussian fixture holds one isotropic Gaussian at
    the origin.

    :param spec: FixtureSpec describing the scene
    :param generator: Seeded random generator
    :return: GaussianCloud of `spec.num_gaussians` Gaussians
    """
    if spec.num_gaussians == 1:
        return GaussianCloud(
            means=torch.zeros((1, 3), dtype=DTYPE),
            log_scales=torch.full(
                (1, 3), math.log(0.3 * spec.scene_radius), dtype=DTYPE
            ),
            rotations=torch.tensor([[1.0, 0.0, 0.0, 0.0]], dtype=DTYPE),
            opacity_logits=torch.tensor([opacity_to_logit(0.9)], dtype=DTYPE),
            colors=torch.tensor([[0.8, 0.5, 0.3]], dtype=DTYPE),
        )

    num_backdrop = spec.num_gaussians // 4 if spec.num_gaussians >= 8 else 0
    parts = [
        _object_gaussians(
            spec.num_gaussians - num_backdrop, spec.scene_radius, generator
        )
    ]
    if num_backdrop > 0:
        parts.append(_backdrop_gaussians(num_backdrop, spec, generator))
    means, log_scales, rotations, opacities, colors = (
        torch.cat(tensors) for tensors in zip(*parts)
    )
    return GaussianCloud(
        means=means,
        log_scales=log_scales,
        rotations=rotations,
        opacity_logits=torch.log(opacities / (1.0 - opacities)),
        colors=colors,
    )


def render_view(
    cloud: GaussianCloud, camera: CameraView, preset: MediumPreset
) -> Tuple[torch.Tensor, torch.Tensor, torch.Tensor]:
    """
    Render the clean image and depth of a view and degrade it.

    Pixels covered by less than half an opaque Gaussian take the largest depth of
    the covered pixels.

    :param cloud: Ground-truth cloud
    :param camera: Camera of the view
    :param preset: MediumPreset used for the degradation
    :return: Tuple of clean image, depth map and degraded image
    """
    with torch.no_grad():
        bundle = render(cloud, camera, medium=None)
        clean = torch.clamp(bundle.composite, 0.0, 1.0)
        depth = bundle.depth.clone()
        covered = bundle.accumulated_alpha >= MIN_COVERAGE
        if bool(covered.any()) and not bool(covered.all()):
            depth[~covered] = depth[covered].max()
        degraded = degrade(clean, normalize_depth(depth), preset)
    return clean, depth, degraded


def make_fixture(spec: FixtureSpec) -> SyntheticFixture:
    """
    Generate a synthetic scene with known geometry, clean and degraded images.

    The result only depends on `spec`: generating the same spec twice gives
    identical fixtures.

    :param spec: FixtureSpec describing the scene, cameras and medium
    :return: SyntheticFixture holding the cloud and the rendered dataset
    """
    generator = torch.Generator().manual_seed(spec.seed)
    cloud = scene_cloud(spec, generator)
    preset = MediumPreset.from_name(spec.preset)
    cameras = camera_arc(spec)
    train_indices, test_indices = split_views(spec)

    views: List[DatasetView] = []
    with logging_redirect_tqdm(tqdm_class=tqdm):
        for camera in tqdm(cameras, desc="Rendering fixture views"):
            clean, depth, degraded = render_view(cloud, camera, preset)
            views.append(
                DatasetView(
                    name=camera.name,
                    camera=camera,
                    image=degraded,
                    clean_image=clean,
                    depth=depth,
                )
            )
    dataset = TrainingDataset(
        train_views=[views[index] for index in train_indices],
        test_views=[views[index] for index in test_indices],
        preset=preset,
    )
    logging.info(
        f"Generated a fixture of {len(cloud)} Gaussians with "
        f"{len(train_indices)} training and {len(test_indices)} held-out views."
    )
    return SyntheticFixture(spec=spec, cloud=cloud, dataset=dataset)
