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
import torch.nn.functional as F

from aquasplat.data_models import DTYPE

SSIM_WINDOW_SIZE = 11
SSIM_SIGMA = 1.5
SSIM_C1 = 0.01**2
SSIM_C2 = 0.03**2


def gaussian_window(
    size: int = SSIM_WINDOW_SIZE, sigma: float = SSIM_SIGMA
) -> torch.Tensor:
    """
    Return a normalized 2D Gaussian window of shape (size, size).
    """
    coordinates = torch.arange(size, dtype=DTYPE) - (size - 1) / 2.0
    profile = torch.exp(-(coordinates**2) / (2.0 * sigma**2))
    profile = profile / profile.sum()
    return profile[:, None] * profile[None, :]


def ssim_map(
    image1: torch.Tensor, image2: torch.Tensor, same_padding: bool = False
) -> torch.Tensor:
    """
    Compute the local structural similarity of two images.

    Local statistics are Gaussian-weighted (11x11 window, sigma 1.5). With
    `same_padding` the images are zero-padded so that the map has the size of the
    input, otherwise only fully covered windows are evaluated.

    :param image1: First image, shape (H, W, C)
    :param image2: Second image, shape (H, W, C)
    :param same_padding: True to zero-pad the images
    :return: SSIM map of shape (C, H', W')
    """
    if image1.shape != image2.shape:
        raise ValueError(
            f"Cannot compare images of shapes {tuple(image1.shape)} and "
            f"{tuple(image2.shape)}."
        )
    height, width, channels = image1.shape
    if not same_padding and min(height, width) < SSIM_WINDOW_SIZE:
        raise ValueError(
            f"Image of size {width}x{height} is smaller than the "
            f"{SSIM_WINDOW_SIZE}x{SSIM_WINDOW_SIZE} SSIM window."
        )
    window = gaussian_window().expand(channels, 1, SSIM_WINDOW_SIZE, SSIM_WINDOW_SIZE)
    padding = SSIM_WINDOW_SIZE // 2 if same_padding else 0

    def filtered(values: torch.Tensor) -> torch.Tensor:
        return F.conv2d(values, window, padding=padding, groups=channels)

    x = image1.permute(2, 0, 1)[None]
    y = image2.permute(2, 0, 1)[None]
    mu_x = filtered(x)
    mu_y = filtered(y)
    mu_xx = mu_x * mu_x
    mu_yy = mu_y * mu_y
    mu_xy = mu_x * mu_y
    sigma_xx = filtered(x * x) - mu_xx
    sigma_yy = filtered(y * y) - mu_yy
    sigma_xy = filtered(x * y) - mu_xy
    numerator = (2.0 * mu_xy + SSIM_C1) * (2.0 * sigma_xy + SSIM_C2)
    denominator = (mu_xx + mu_yy + SSIM_C1) * (sigma_xx + sigma_yy + SSIM_C2)
    return (numerator / denominator)[0]


def structural_similarity(
    image1: torch.Tensor, image2: torch.Tensor, same_padding: bool = False
) -> torch.Tensor:
    """
    Return the mean SSIM of two images, averaged over pixels and channels.

    :param image1: First image, shape (H, W, C)
    :param image2: Second image, shape (H, W, C)
    :param same_padding: True to zero-pad the images so that windows at the border
        are evaluated too
    :return: Scalar tensor in [-1, 1]
    """
    return ssim_map(image1, image2, same_padding=same_padding).mean()
