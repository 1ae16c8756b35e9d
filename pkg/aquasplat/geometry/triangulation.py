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
from typing import Optional, Sequence, Tuple

import torch

from aquasplat.data_models import CameraView, GaussianCloud
from aquasplat.data_models.utils import to_tensor

from .projection import DEPTH_EPSILON, project_points, world_to_camera

MAX_CONDITION_NUMBER = 1e10
# Upper bound on cond(A'^T A') for an accepted triangulation


def inside_image(camera: CameraView, pixels: torch.Tensor) -> torch.Tensor:
    """
    Return True for pixel coordinates inside [0, W - 1] x [0, H - 1].

    :param camera: CameraView defining the image rectangle
    :param pixels: Pixel coordinates, shape (..., 2)
    :return: Boolean tensor of shape (...)
    """
    x, y = pixels[..., 0], pixels[..., 1]
    return (x >= 0) & (x <= camera.width - 1) & (y >= 0) & (y <= camera.height - 1)


def select_candidates(
    cloud: GaussianCloud,
    cameras: Sequence[CameraView],
    opacity_threshold: float,
    depth_epsilon: float = DEPTH_EPSILON,
) -> torch.Tensor:
    """
    Select the Gaussians that are usable for triangulation.

    A Gaussian is selected when its center projects inside the image rectangle of
    every camera with a positive depth, and its opacity exceeds `opacity_threshold`.

    :param cloud: GaussianCloud to select from
    :param cameras: Cameras whose frusta must all contain the centers
    :param opacity_threshold: Minimum opacity tau_alpha, in (0, 1)
    :param depth_epsilon: Minimum camera depth
    :return: Sorted tensor of indices into the cloud, possibly empty
    """
    if not 0.0 < opacity_threshold < 1.0:
        raise ValueError(
            f"Opacity threshold must be in (0, 1), got {opacity_threshold}"
        )
    with torch.no_grad():
        selected = cloud.opacities > opacity_threshold
        for camera in cameras:
            pixels, _, in_front = project_points(
                camera, cloud.means, depth_epsilon=depth_epsilon
            )
            selected = selected & in_front & inside_image(camera, pixels)
    return torch.nonzero(selected, as_tuple=False).reshape(-1)


def _dlt_rows(pixels: torch.Tensor, projection: torch.Tensor) -> torch.Tensor:
    """
    Return the two DLT rows x m3^T - m1^T and y m3^T - m2^T per pixel.

    :param pixels: Pixel coordinates, shape (N, 2)
    :param projection: 3x4 projection matrix
    :return: Tensor of shape (N, 2, 4)
    """
    m1, m2, m3 = projection[0], projection[1], projection[2]
    row_x = pixels[:, 0:1] * m3 - m1
    row_y = pixels[:, 1:2] * m3 - m2
    return torch.stack([row_x, row_y], dim=1)


def triangulate_points(
    pixels_h: torch.Tensor,
    pixels_v: torch.Tensor,
    projection_h: torch.Tensor,
    projection_v: torch.Tensor,
) -> Tuple[torch.Tensor, torch.Tensor]:
    """
    Triangulate world points from their projections in two views.

    The 4x4 DLT system is split into A' (first three columns) and b (last column)
    and min ||A' X + b|| is solved by orthogonal factorization. Each row is scaled
    to unit norm first. Systems with cond(A'^T A') above MAX_CONDITION_NUMBER are
    rejected.

    :param pixels_h: Pixel coordinates in the first view, shape (N, 2)
    :param pixels_v: Pixel coordinates in the second view, shape (N, 2)
    :param projection_h: 3x4 projection matrix of the first view
    :param projection_v: 3x4 projection matrix of the second view
    :return: Tuple of world points (N, 3) and a boolean acceptance flag (N,)
    """
    with torch.no_grad():
        pixels_h = to_tensor(pixels_h).reshape(-1, 2)
        pixels_v = to_tensor(pixels_v).reshape(-1, 2)
        system = torch.cat(
            [
                _dlt_rows(pixels_h, to_tensor(projection_h)),
                _dlt_rows(pixels_v, to_tensor(projection_v)),
            ],
            dim=1,
        )
        row_norms = torch.linalg.norm(system, dim=2, keepdim=True)
        system = system / torch.clamp(row_norms, min=1e-300)
        matrix = system[:, :, :3]
        offset = system[:, :, 3]
        if matrix.shape[0] == 0:
            return matrix.new_zeros((0, 3)), torch.zeros(0, dtype=torch.bool)

        singular_values = torch.linalg.svdvals(matrix)
        largest = singular_values[:, 0]
        smallest = singular_values[:, -1]
        accepted = (smallest > 0) & (
            (largest / torch.clamp(smallest, min=1e-300)) ** 2 <= MAX_CONDITION_NUMBER
        )
        solution = torch.linalg.lstsq(matrix, -offset[..., None]).solution[..., 0]
        accepted = accepted & torch.all(torch.isfinite(solution), dim=1)
        points = torch.where(accepted[:, None], solution, torch.zeros_like(solution))
    return points, accepted


def triangulate_depths(
    pixels_h: torch.Tensor,
    pixels_v: torch.Tensor,
    projection_h: torch.Tensor,
    projection_v: torch.Tensor,
    central: CameraView,
) -> Tuple[torch.Tensor, torch.Tensor]:
    """
    Triangulate points from two views and return their depth in the central view.

    The result carries no gradient: it is used as a fixed prior.

    :param pixels_h: Pixel coordinates in the horizontal view, shape (N, 2)
    :param pixels_v: Pixel coordinates in the vertical view, shape (N, 2)
    :param projection_h: 3x4 projection matrix of the horizontal view
    :param projection_v: 3x4 projection matrix of the vertical view
    :param central: Central camera in which the depth is measured
    :return: Tuple of depths (N,) and acceptance flags (N,). Rejected candidates
        have depth 0
    """
    points, accepted = triangulate_points(
        pixels_h, pixels_v, projection_h, projection_v
    )
    with torch.no_grad():
        depths = world_to_camera(central, points)[:, 2]
        depths = torch.where(accepted, depths, torch.zeros_like(depths))
    num_rejected = int((~accepted).sum())
    if num_rejected > 0:
        logging.debug(f"Discarded {num_rejected} ill-conditioned triangulations.")
    return depths, accepted


def triangulate_depth(
    pixel_h: torch.Tensor,
    pixel_v: torch.Tensor,
    projection_h: torch.Tensor,
    projection_v: torch.Tensor,
    central: CameraView,
) -> Optional[float]:
    """
    Triangulate a single point and return its depth in the central view.

    :param pixel_h: Pixel coordinates in the horizontal view, shape (2,)
    :param pixel_v: Pixel coordinates in the vertical view, shape (2,)
    :param projection_h: 3x4 projection matrix of the horizontal view
    :param projection_v: 3x4 projection matrix of the vertical view
    :param central: Central camera in which the depth is measured
    :return: Depth D_epi, or None when the system is ill-conditioned
    """
    depths, accepted = triangulate_depths(
        to_tensor(pixel_h)[None],
        to_tensor(pixel_v)[None],
        projection_h,
        projection_v,
        central,
    )
    if not bool(accepted[0]):
        return None
    return float(depths[0])
