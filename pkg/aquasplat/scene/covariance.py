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

import torch

from aquasplat.data_models import GaussianCloud, GaussianPrimitive
from aquasplat.data_models.utils import to_tensor

EIGENVALUE_FLOOR = 1e-7
# Relative to the squared scene extent


def normalize_quaternions(quaternions: torch.Tensor) -> torch.Tensor:
    """
    Return the quaternions scaled to unit norm along the last axis.

    :param quaternions: Tensor of shape (..., 4)
    :return: Tensor of unit quaternions with the same shape
    """
    return quaternions / torch.linalg.norm(quaternions, dim=-1, keepdim=True)


def quaternion_to_rotation(quaternions: torch.Tensor) -> torch.Tensor:
    """
    Convert quaternions (w, x, y, z) to rotation matrices.

    The quaternions are normalized first, so any non-zero quaternion is accepted.

    :param quaternions: Tensor of shape (..., 4)
    :return: Tensor of rotation matrices of shape (..., 3, 3)
    """
    q = normalize_quaternions(quaternions)
    w, x, y, z = q.unbind(dim=-1)
    rows = [
        torch.stack(
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)], -1
        ),
        torch.stack(
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)], -1
        ),
        torch.stack(
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)], -1
        ),
    ]
    return torch.stack(rows, dim=-2)


def build_covariances(
    log_scales: torch.Tensor, rotations: torch.Tensor
) -> torch.Tensor:
    """
    Compute R diag(exp(2 log_scale)) R^T for a batch of Gaussians.

    :param log_scales: Log standard deviations, shape (..., 3)
    :param rotations: Quaternions, shape (..., 4)
    :return: Symmetric covariance matrices, shape (..., 3, 3)
    """
    rotation_matrices = quaternion_to_rotation(rotations)
    factor = rotation_matrices * torch.exp(log_scales)[..., None, :]
    covariance = factor @ factor.transpose(-1, -2)
    return 0.5 * (covariance + covariance.transpose(-1, -2))


def covariance_of(gaussian: GaussianPrimitive) -> torch.Tensor:
    """
    Return the 3x3 covariance matrix of a single Gaussian.

    :param gaussian: GaussianPrimitive to compute the covariance for
    :return: Symmetric positive-definite tensor of shape (3, 3)
    """
    return build_covariances(gaussian.log_scale, gaussian.rotation)


def cloud_covariances(cloud: GaussianCloud) -> torch.Tensor:
    """
    Return the covariance matrices of all Gaussians in a cloud.

    :param cloud: GaussianCloud to compute the covariances for
    :return: Tensor of shape (N, 3, 3)
    """
    return build_covariances(cloud.log_scales, cloud.rotations)


def eval_gaussian(
    gaussian: GaussianPrimitive, point: torch.Tensor, scene_extent: float = 1.0
) -> torch.Tensor:
    """
    Evaluate the unnormalized density exp(-1/2 (X - mu)^T Sigma^-1 (X - mu)).

    Eigenvalues of the covariance below 1e-7 times the squared scene extent are
    clamped to that floor before inversion, and a warning is logged.

    :param gaussian: GaussianPrimitive to evaluate
    :param point: World-space point X, shape (3,) or (M, 3)
    :param scene_extent: Length scale of the scene, used for the eigenvalue floor
    :return: Weight in (0, 1], shape () or (M,)
    """
    covariance = covariance_of(gaussian)
    eigenvalues, eigenvectors = torch.linalg.eigh(covariance)
    floor = EIGENVALUE_FLOOR * scene_extent**2
    if bool(torch.any(eigenvalues < floor)):
        logging.warning(
            f"Near-singular Gaussian covariance with smallest eigenvalue "
            f"{float(eigenvalues.min()):.3e}; eigenvalues clamped to {floor:.3e}."
        )
        eigenvalues = torch.clamp(eigenvalues, min=floor)
    precision = eigenvectors @ torch.diag_embed(1.0 / eigenvalues) @ eigenvectors.T
    offset = to_tensor(point) - gaussian.mean
    mahalanobis = torch.einsum("...i,ij,...j->...", offset, precision, offset)
    return torch.exp(-0.5 * mahalanobis)
