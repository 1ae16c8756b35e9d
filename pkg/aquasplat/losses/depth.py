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
import torch.nn.functional as F

from aquasplat.data_models import DTYPE, CameraView, GaussianCloud
from aquasplat.geometry import DEPTH_EPSILON, inside_image, project_points
from aquasplat.gradients.tape import note_branch, stop_gradient


def nearest_pixels(pixels: torch.Tensor) -> torch.Tensor:
    """
    Round continuous pixel coordinates to integer (x, y) indices.

    :param pixels: Pixel coordinates, shape (N, 2)
    :return: Long tensor of shape (N, 2)
    """
    return torch.round(pixels.detach()).to(torch.long)


def sample_nearest(image: torch.Tensor, pixels: torch.Tensor) -> torch.Tensor:
    """
    Sample an image at the nearest pixel of each location.

    :param image: Image of shape (H, W) or (H, W, C)
    :param pixels: Pixel coordinates inside the image, shape (N, 2)
    :return: Samples of shape (N,) or (N, C)
    """
    indices = nearest_pixels(pixels)
    return image[indices[:, 1], indices[:, 0]]


def sample_bilinear(image: torch.Tensor, pixels: torch.Tensor) -> torch.Tensor:
    """
    Sample a single-channel image bilinearly at continuous pixel locations.

    Gradients flow into both the image and the locations.

    :param image: Image of shape (H, W)
    :param pixels: Pixel coordinates inside the image, shape (N, 2)
    :return: Samples of shape (N,)
    """
    height, width = image.shape
    grid_x = 2.0 * pixels[:, 0] / max(width - 1, 1) - 1.0
    grid_y = 2.0 * pixels[:, 1] / max(height - 1, 1) - 1.0
    grid = torch.stack([grid_x, grid_y], dim=-1)[None, None]
    sampled = F.grid_sample(
        image[None, None],
        grid,
        mode="bilinear",
        padding_mode="border",
        align_corners=True,
    )
    return sampled[0, 0, 0]


def edge_weights(image: torch.Tensor, pixels: torch.Tensor) -> torch.Tensor:
    """
    Return exp(-|grad_k I|) for both image axes at the given pixels.

    Gradients are forward differences averaged over channels in absolute value. The
    last column and row repeat their neighbour, so the difference there is zero. The
    image is detached.

    :param image: Image of shape (H, W, C)
    :param pixels: Integer pixel indices (x, y), shape (N, 2)
    :return: Tensor of shape (N, 2) holding the weights along x and y
    """
    image = stop_gradient(image)
    padded_x = torch.cat([image, image[:, -1:, :]], dim=1)
    padded_y = torch.cat([image, image[-1:, :, :]], dim=0)
    grad_x = torch.abs(padded_x[:, 1:, :] - padded_x[:, :-1, :]).mean(dim=-1)
    grad_y = torch.abs(padded_y[1:, :, :] - padded_y[:-1, :, :]).mean(dim=-1)
    xs, ys = pixels[:, 0], pixels[:, 1]
    return torch.exp(-torch.stack([grad_x[ys, xs], grad_y[ys, xs]], dim=-1))


def epipolar_loss(
    depth_samples: torch.Tensor,
    prior_samples: torch.Tensor,
    image: torch.Tensor,
    pixel_locations: torch.Tensor,
) -> torch.Tensor:
    """
    Edge-aware Log-L1 loss between rendered depths and triangulated depth priors.

    The loss is the mean over samples and both image axes of
    log(1 + |D'_c - D_epi|) exp(-|grad_k I_c|). The priors carry no gradient.

    :param depth_samples: Rendered depths D'_c at the sample locations, shape (N,)
    :param prior_samples: Triangulated depths D_epi, shape (N,)
    :param image: Rendered central image I_c, shape (H, W, 3)
    :param pixel_locations: Integer pixel indices (x, y) of the samples, shape (N, 2)
    :return: Scalar tensor
    """
    if depth_samples.shape != prior_samples.shape:
        raise ValueError(
            f"Got {tuple(depth_samples.shape)} depth samples but "
            f"{tuple(prior_samples.shape)} depth priors."
        )
    if depth_samples.numel() == 0:
        logging.info("No epipolar depth candidates in this step; epipolar loss is 0.")
        return torch.zeros((), dtype=DTYPE)
    priors = stop_gradient(prior_samples)
    log_error = torch.log1p(torch.abs(depth_samples - priors))
    weights = edge_weights(image, pixel_locations.to(torch.long))
    return (log_error[:, None] * weights).mean()


def residual_loss(
    cloud: GaussianCloud,
    camera: CameraView,
    depth: torch.Tensor,
    bilinear: bool = False,
    depth_epsilon: float = DEPTH_EPSILON,
) -> torch.Tensor:
    """
    Depth residual loss, the mean of |D_c(x_i) - z_i| over the Gaussians whose
    center projects inside the image in front of the camera.

    The rendered depth is sampled at the nearest pixel of each projected center, or
    bilinearly. Gradients flow into both the rendered depth and the Gaussian depths.

    :param cloud: GaussianCloud that was rendered
    :param camera: CameraView of the render
    :param depth: Rendered depth map D_c, shape (H, W)
    :param bilinear: True to sample the depth map bilinearly
    :param depth_epsilon: Minimum camera depth of a Gaussian that counts
    :return: Scalar tensor, 0 when no Gaussian is in view
    """
    pixels, depths, in_front = project_points(
        camera, cloud.means, depth_epsilon=depth_epsilon
    )
    in_view = in_front & inside_image(camera, pixels.detach())
    note_branch(in_view)
    if not bool(in_view.any()):
        return torch.zeros((), dtype=DTYPE)
    pixels = pixels[in_view]
    if bilinear:
        rendered = sample_bilinear(depth, pixels)
    else:
        rendered = sample_nearest(depth, pixels)
        note_branch(nearest_pixels(pixels))
    return torch.abs(rendered - depths[in_view]).mean()
