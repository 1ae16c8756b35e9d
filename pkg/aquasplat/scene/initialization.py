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
from typing import Sequence, Tuple

import torch

from aquasplat.data_models import DTYPE, CameraView, CloudInitSpec, GaussianCloud

FALLBACK_SCALE = 0.1
MINIMUM_SCALE = 1e-7


def opacity_to_logit(opacity: float) -> float:
    """
    Return the logit of an opacity in (0, 1).
    """
    return math.log(opacity / (1.0 - opacity))


def nearest_neighbour_scales(
    points: torch.Tensor, num_neighbours: int = 3
) -> torch.Tensor:
    """
    Return the root mean squared distance of every point to its nearest neighbours.

    :param points: Tensor of shape (N, 3)
    :param num_neighbours: Number of neighbours to average over
    :return: Tensor of shape (N,). Points without neighbours get FALLBACK_SCALE
    """
    num_points = points.shape[0]
    if num_points < 2:
        return torch.full((num_points,), FALLBACK_SCALE, dtype=DTYPE)
    squared_distances = torch.cdist(points, points) ** 2
    squared_distances.fill_diagonal_(math.inf)
    k = min(num_neighbours, num_points - 1)
    nearest, _ = torch.topk(squared_distances, k=k, dim=1, largest=False)
    return torch.sqrt(torch.clamp(nearest.mean(dim=1), min=MINIMUM_SCALE**2))


def init_cloud(spec: CloudInitSpec, seed: int = 0) -> GaussianCloud:
    """
    Create the initial Gaussian cloud for an optimization.

    Rotations start at identity and all Gaussians are isotropic. The result only
    depends on `spec` and `seed`.

    :param spec: CloudInitSpec describing positions, colors and opacity
    :param seed: Seed for the random positions and colors
    :return: GaussianCloud with `spec.opacity` as the opacity of every Gaussian
    """
    generator = torch.Generator().manual_seed(seed)
    if spec.points is not None:
        means = spec.points.clone()
        colors = spec.colors
        if colors is None:
            colors = torch.full_like(means, 0.5)
    else:
        unit = torch.rand((spec.count, 3), generator=generator, dtype=DTYPE)
        means = spec.lower + unit * (spec.upper - spec.lower)
        colors = torch.rand((spec.count, 3), generator=generator, dtype=DTYPE)
    num_gaussians = means.shape[0]

    if spec.scale is not None:
        scales = torch.full((num_gaussians,), float(spec.scale), dtype=DTYPE)
    else:
        scales = nearest_neighbour_scales(means)
    log_scales = torch.log(scales)[:, None].repeat(1, 3)

    rotations = torch.zeros((num_gaussians, 4), dtype=DTYPE)
    rotations[:, 0] = 1.0
    opacity_logits = torch.full(
        (num_gaussians,), opacity_to_logit(spec.opacity), dtype=DTYPE
    )
    logging.debug(f"Initialized a cloud of {num_gaussians} Gaussians.")
    return GaussianCloud(
        means=means,
        log_scales=log_scales,
        rotations=rotations,
        opacity_logits=opacity_logits,
        colors=torch.clamp(colors, 0.0, 1.0),
    )


def bounds_from_cameras(
    cameras: Sequence[CameraView],
) -> Tuple[torch.Tensor, torch.Tensor]:
    """
    Return a box around the region that a set of cameras looks at.

    The box is centered at the point closest to all optical axes in the least squares
    sense. Its half size is the mean distance of the cameras to that point times the
    tangent of the largest half field of view. When the optical axes are (nearly)
    parallel, the center is placed one mean camera spread in front of the mean camera
    center instead.

    :param cameras: Cameras of the training views
    :return: Tuple of lower and upper corner, each of shape (3,)
    """
    centers = torch.stack([camera.center for camera in cameras])
    axes = torch.stack([camera.rotation[2] for camera in cameras])
    projectors = torch.eye(3, dtype=DTYPE) - axes[:, :, None] * axes[:, None, :]
    system = projectors.sum(dim=0)
    rhs = (projectors @ centers[:, :, None]).sum(dim=0)[:, 0]
    if float(torch.linalg.cond(system)) < 1e6:
        target = torch.linalg.solve(system, rhs)
    else:
        spread = float(torch.linalg.norm(centers - centers.mean(dim=0), dim=1).max())
        target = centers.mean(dim=0) + max(spread, 1.0) * axes.mean(dim=0)
    distance = float(torch.linalg.norm(centers - target, dim=1).mean())
    half_fov = max(
        max(camera.width / (2.0 * camera.fx), camera.height / (2.0 * camera.fy))
        for camera in cameras
    )
    half_size = max(distance * half_fov, FALLBACK_SCALE)
    return target - half_size, target + half_size
