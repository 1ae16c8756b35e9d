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

"""
Slow, loop-based reference implementations used to check the vectorized code.
"""

import math
from typing import Tuple

import numpy as np
import torch

from aquasplat.data_models import DTYPE, MediumParameters, SplatList
from aquasplat.rendering import MAX_ALPHA, MIN_ALPHA

FOOTPRINT_SIGMAS = 3.0


def naive_bilinear(image: np.ndarray, x: float, y: float) -> np.ndarray:
    """
    Interpolate an (H, W) or (H, W, C) image at (x, y) inside the pixel grid.
    """
    height, width = image.shape[:2]
    x0, y0 = int(math.floor(x)), int(math.floor(y))
    x1, y1 = min(x0 + 1, width - 1), min(y0 + 1, height - 1)
    fx, fy = x - x0, y - y0
    top = (1 - fx) * image[y0, x0] + fx * image[y0, x1]
    bottom = (1 - fx) * image[y1, x0] + fx * image[y1, x1]
    return (1 - fy) * top + fy * bottom


def naive_alpha(splats: SplatList, index: int, x: float, y: float) -> float:
    """
    Opacity of one splat at one pixel, with footprint, clipping and skipping.
    """
    covariance = splats.covariances2d[index].detach().numpy()
    mean = splats.means2d[index].detach().numpy()
    offset = np.array([x, y]) - mean
    a, b, c = covariance[0, 0], covariance[0, 1], covariance[1, 1]
    major = 0.5 * (a + c) + math.sqrt(0.25 * (a - c) ** 2 + b * b)
    if offset @ offset > FOOTPRINT_SIGMAS**2 * major:
        return 0.0
    power = offset @ np.linalg.inv(covariance) @ offset
    alpha = float(splats.opacities[index]) * math.exp(-0.5 * power)
    alpha = min(alpha, MAX_ALPHA)
    return alpha if alpha >= MIN_ALPHA else 0.0


def brute_force_composite(
    splats: SplatList, width: int, height: int, medium: MediumParameters
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Composite sorted splats through a constant medium, one pixel and one splat at a
    time.

    :return: Tuple of object image, medium image (both (H, W, 3)) and the sum of
        T_i alpha_i plus the final transmittance per pixel, shape (H, W)
    """
    sigma_attn = medium.sigma_attn.numpy()
    sigma_bs = medium.sigma_bs.numpy()
    c_med = medium.c_med.numpy()
    depths = splats.depths.detach().numpy()
    colors = splats.colors.detach().numpy()
    object_image = np.zeros((height, width, 3))
    medium_image = np.zeros((height, width, 3))
    partition = np.zeros((height, width))
    for y in range(height):
        for x in range(width):
            transmittance = 1.0
            previous_depth = 0.0
            total_weight = 0.0
            for index in range(len(splats)):
                alpha = naive_alpha(splats, index, float(x), float(y))
                depth = depths[index]
                object_image[y, x] += (
                    transmittance * alpha * colors[index] * np.exp(-sigma_attn * depth)
                )
                medium_image[y, x] += (
                    transmittance
                    * c_med
                    * (np.exp(-sigma_bs * previous_depth) - np.exp(-sigma_bs * depth))
                )
                total_weight += transmittance * alpha
                transmittance *= 1.0 - alpha
                previous_depth = depth
            medium_image[y, x] += (
                transmittance * c_med * np.exp(-sigma_bs * previous_depth)
            )
            partition[y, x] = total_weight + transmittance
    return object_image, medium_image, partition


def direct_ssim(image1: np.ndarray, image2: np.ndarray, window: np.ndarray) -> float:
    """
    Mean SSIM over all fully covered windows and channels, from explicit sums.
    """
    c1, c2 = 0.01**2, 0.03**2
    size = window.shape[0]
    height, width, channels = image1.shape
    values = []
    for channel in range(channels):
        for top in range(height - size + 1):
            for left in range(width - size + 1):
                x = image1[top : top + size, left : left + size, channel]
                y = image2[top : top + size, left : left + size, channel]
                mu_x = float(np.sum(window * x))
                mu_y = float(np.sum(window * y))
                var_x = float(np.sum(window * (x - mu_x) ** 2))
                var_y = float(np.sum(window * (y - mu_y) ** 2))
                cov = float(np.sum(window * (x - mu_x) * (y - mu_y)))
                values.append(
                    ((2 * mu_x * mu_y + c1) * (2 * cov + c2))
                    / ((mu_x**2 + mu_y**2 + c1) * (var_x + var_y + c2))
                )
    return float(np.mean(values))


def random_image(
    height: int, width: int, generator: torch.Generator, channels: int = 3
) -> torch.Tensor:
    """
    Uniformly random float64 image with values in [0, 1).
    """
    return torch.rand((height, width, channels), generator=generator, dtype=DTYPE)
