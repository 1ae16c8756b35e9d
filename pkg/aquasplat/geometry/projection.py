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

from typing import Tuple

import torch

from aquasplat.data_models import DTYPE, CameraView, GaussianPrimitive
from aquasplat.data_models.utils import to_tensor
from aquasplat.scene import covariance_of

DEPTH_EPSILON = 1e-6
# Points at or below this camera depth count as behind the camera

SCREEN_LOW_PASS = 0.3
# Isotropic variance in px^2 added to every projected covariance


def world_to_camera(camera: CameraView, points: torch.Tensor) -> torch.Tensor:
    """
    Transform world points to camera coordinates, R @ X + t.

    :param camera: CameraView defining the transform
    :param points: World points, shape (..., 3)
    :return: Camera-space points, shape (..., 3)
    """
    return points @ camera.rotation.T + camera.translation


def project_points(
    camera: CameraView, points: torch.Tensor, depth_epsilon: float = DEPTH_EPSILON
) -> Tuple[torch.Tensor, torch.Tensor, torch.Tensor]:
    """
    Project world points to pixel coordinates.

    Points at a depth of at most `depth_epsilon` are flagged as behind the camera;
    their pixel coordinates are computed with unit depth so that they stay finite.

    :param camera: CameraView to project into
    :param points: World points, shape (..., 3)
    :param depth_epsilon: Minimum camera depth for a point to count as in front
    :return: Tuple of pixel coordinates (..., 2), camera depths (...) and a boolean
        in-front flag (...)
    """
    camera_points = world_to_camera(camera, to_tensor(points))
    depths = camera_points[..., 2]
    in_front = depths > depth_epsilon
    safe_depths = torch.where(in_front, depths, torch.ones_like(depths))
    normalized = camera_points[..., :2] / safe_depths[..., None]
    pixels = normalized @ camera.intrinsics[:2, :2].T + camera.intrinsics[:2, 2]
    return pixels, depths, in_front


def project_point(
    camera: CameraView, point: torch.Tensor
) -> Tuple[torch.Tensor, torch.Tensor, bool]:
    """
    Project a single world point to pixel coordinates.

    :param camera: CameraView to project into
    :param point: World point, shape (3,)
    :return: Tuple of pixel coordinates (2,), camera depth and whether the point is
        in front of the camera
    """
    pixel, depth, in_front = project_points(camera, to_tensor(point)[None, :])
    return pixel[0], depth[0], bool(in_front[0])


def unproject_pixels(
    camera: CameraView, pixels: torch.Tensor, depths: torch.Tensor
) -> torch.Tensor:
    """
    Return the world points that project to `pixels` at camera depth `depths`.

    :param camera: CameraView to unproject from
    :param pixels: Pixel coordinates, shape (..., 2)
    :param depths: Camera depths, shape (...)
    :return: World points, shape (..., 3)
    """
    pixels = to_tensor(pixels)
    depths = to_tensor(depths)
    normalized = (pixels - camera.intrinsics[:2, 2]) / torch.stack(
        [camera.intrinsics[0, 0], camera.intrinsics[1, 1]]
    )
    camera_points = torch.cat(
        [normalized * depths[..., None], depths[..., None]], dim=-1
    )
    return (camera_points - camera.translation) @ camera.rotation


def pixel_grid(camera: CameraView) -> torch.Tensor:
    """
    Return the coordinates of all pixel centers in row-major order.

    :param camera: CameraView defining the image size
    :return: Tensor of shape (H * W, 2) holding (x, y) per pixel
    """
    ys, xs = torch.meshgrid(
        torch.arange(camera.height, dtype=DTYPE),
        torch.arange(camera.width, dtype=DTYPE),
        indexing="ij",
    )
    return torch.stack([xs.reshape(-1), ys.reshape(-1)], dim=-1)


def ray_directions(camera: CameraView) -> torch.Tensor:
    """
    Return the unit world-space viewing direction through every pixel center.

    :param camera: CameraView to cast rays from
    :return: Tensor of shape (H * W, 3), row-major pixel order
    """
    pixels = pixel_grid(camera)
    ones = torch.ones(pixels.shape[0], dtype=DTYPE)
    homogeneous = torch.cat([pixels, ones[:, None]], dim=1)
    camera_directions = homogeneous @ torch.linalg.inv(camera.intrinsics).T
    world_directions = camera_directions @ camera.rotation
    return world_directions / torch.linalg.norm(world_directions, dim=1, keepdim=True)


def projection_jacobians(
    camera: CameraView, camera_points: torch.Tensor
) -> torch.Tensor:
    """
    Return the Jacobian of the perspective projection at camera-space points.

    :param camera: CameraView providing the focal lengths
    :param camera_points: Camera-space points, shape (N, 3), with positive depth
    :return: Tensor of shape (N, 2, 3)
    """
    x, y, z = camera_points.unbind(dim=-1)
    fx = camera.intrinsics[0, 0]
    fy = camera.intrinsics[1, 1]
    zeros = torch.zeros_like(z)
    row_x = torch.stack([fx / z, zeros, -fx * x / (z * z)], dim=-1)
    row_y = torch.stack([zeros, fy / z, -fy * y / (z * z)], dim=-1)
    return torch.stack([row_x, row_y], dim=-2)


def project_covariances(
    camera: CameraView,
    means: torch.Tensor,
    covariances: torch.Tensor,
    low_pass: float = SCREEN_LOW_PASS,
) -> torch.Tensor:
    """
    Project 3D covariances to screen space, J R Sigma R^T J^T + low_pass * I.

    :param camera: CameraView to project into
    :param means: World-space centers, shape (N, 3), in front of the camera
    :param covariances: World-space covariances, shape (N, 3, 3)
    :param low_pass: Isotropic variance in px^2 added for anti-aliasing
    :return: Screen-space covariances, shape (N, 2, 2)
    """
    camera_points = world_to_camera(camera, means)
    jacobians = projection_jacobians(camera, camera_points)
    transform = jacobians @ camera.rotation
    screen = transform @ covariances @ transform.transpose(-1, -2)
    screen = 0.5 * (screen + screen.transpose(-1, -2))
    return screen + low_pass * torch.eye(2, dtype=DTYPE)


def project_covariance(
    camera: CameraView, gaussian: GaussianPrimitive, low_pass: float = SCREEN_LOW_PASS
) -> torch.Tensor:
    """
    Project the covariance of a single Gaussian to screen space.

    :param camera: CameraView to project into
    :param gaussian: GaussianPrimitive in front of the camera
    :param low_pass: Isotropic variance in px^2 added for anti-aliasing
    :return: Screen-space covariance, shape (2, 2)
    """
    _, depth, in_front = project_point(camera, gaussian.mean)
    if not in_front:
        raise ValueError(
            f"Cannot project the covariance of a Gaussian at camera depth "
            f"{float(depth):.3e}: it is behind the camera."
        )
    return project_covariances(
        camera, gaussian.mean[None, :], covariance_of(gaussian)[None], low_pass
    )[0]
