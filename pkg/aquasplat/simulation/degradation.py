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

import torch

from aquasplat.data_models import MediumPreset
from aquasplat.exceptions import DepthRangeError


def normalize_depth(depth: torch.Tensor) -> torch.Tensor:
    """
    Min-max normalize a depth map to [0, 1].

    A constant depth map normalizes to all zeros.

    :param depth: Depth map, shape (H, W)
    :return: Normalized depth map with the same shape
    """
    minimum = depth.min()
    span = depth.max() - minimum
    if float(span) <= 0.0:
        return torch.zeros_like(depth)
    return (depth - minimum) / span


def degrade(
    clean_image: torch.Tensor, depth: torch.Tensor, preset: MediumPreset
) -> torch.Tensor:
    """
    Apply the scattering medium image formation model to a clean image.

    Per channel c: out = I * exp(-beta_D[c] z) + beta_inf[c] (1 - exp(-beta_B[c] z)),
    clamped to [0, 1].

    :param clean_image: Medium-free image, shape (H, W, 3), values in [0, 1]
    :param depth: Normalized depth map z, shape (H, W), values in [0, 1]
    :param preset: MediumPreset holding beta_D, beta_B and beta_inf
    :raises DepthRangeError: If the depth map is not normalized
    :return: Degraded image, shape (H, W, 3)
    """
    if depth.numel() > 0 and (float(depth.min()) < 0.0 or float(depth.max()) > 1.0):
        raise DepthRangeError(
            f"Depth must be normalized to [0, 1] before degradation, got values in "
            f"[{float(depth.min()):.4g}, {float(depth.max()):.4g}]."
        )
    if clean_image.shape[:2] != depth.shape:
        raise ValueError(
            f"Image of shape {tuple(clean_image.shape)} does not match depth map of "
            f"shape {tuple(depth.shape)}."
        )
    z = depth[..., None]
    direct = clean_image * torch.exp(-preset.beta_d * z)
    backscatter = preset.beta_inf * (1.0 - torch.exp(-preset.beta_b * z))
    return torch.clamp(direct + backscatter, 0.0, 1.0)
