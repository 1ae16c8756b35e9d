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
from typing import List, Tuple

import torch

from aquasplat.data_models import (
    DTYPE,
    DisparityMaps,
    RenderBundle,
    TrinocularLosses,
    WarpAxis,
    WarpResult,
)
from aquasplat.rendering import composite_full

from .photometric import DEFAULT_EPSILON, r_l1

MIN_WARP_COVERAGE = 0.1


def image_gradients(
    image: torch.Tensor,
) -> Tuple[torch.Tensor, torch.Tensor]:
    """
    Return the forward differences of an image along x and y, averaged over
    channels in absolute value.

    :param image: Image of shape (H, W, C)
    :return: Tuple of |grad_x| with shape (H, W - 1) and |grad_y| with shape
        (H - 1, W)
    """
    grad_x = torch.abs(image[:, 1:, :] - image[:, :-1, :]).mean(dim=-1)
    grad_y = torch.abs(image[1:, :, :] - image[:-1, :, :]).mean(dim=-1)
    return grad_x, grad_y


def _masked_mean(values: torch.Tensor, mask: torch.Tensor) -> torch.Tensor:
    """
    Return the mean of `values` where `mask` is True, or 0 for an empty mask.
    """
    if not bool(mask.any()):
        return torch.zeros((), dtype=DTYPE)
    return values[mask].mean()


def smoothness_loss(
    disparities: DisparityMaps, ground_truth: torch.Tensor, gamma: float = 1.0
) -> torch.Tensor:
    """
    Edge-aware smoothness of the disparity maps.

    For both disparities and both image axes, |grad d| exp(-gamma |grad I_gt|) is
    averaged over the neighbouring pixel pairs where both disparities are valid. The
    four averages are averaged again.

    :param disparities: Horizontal and vertical disparity maps with validity mask
    :param ground_truth: Ground truth image I_gt, shape (H, W, 3)
    :param gamma: Edge sensitivity of the weighting
    :return: Scalar tensor
    """
    edge_x, edge_y = image_gradients(ground_truth)
    weight_x = torch.exp(-gamma * edge_x)
    weight_y = torch.exp(-gamma * edge_y)
    valid = disparities.valid
    valid_x = valid[:, 1:] & valid[:, :-1]
    valid_y = valid[1:, :] & valid[:-1, :]
    terms: List[torch.Tensor] = []
    for disparity in (disparities.horizontal, disparities.vertical):
        grad_x = torch.abs(disparity[:, 1:] - disparity[:, :-1])
        grad_y = torch.abs(disparity[1:, :] - disparity[:-1, :])
        terms.append(_masked_mean(grad_x * weight_x, valid_x))
        terms.append(_masked_mean(grad_y * weight_y, valid_y))
    return torch.stack(terms).mean()


def trinocular_losses(
    central: RenderBundle,
    warped_h: WarpResult,
    warped_v: WarpResult,
    ground_truth: torch.Tensor,
    disparities: DisparityMaps,
    gamma: float = 1.0,
    epsilon: float = DEFAULT_EPSILON,
    min_coverage: float = MIN_WARP_COVERAGE,
) -> TrinocularLosses:
    """
    Trinocular view consistency loss.

    The object renders of the horizontal and vertical views, warped onto the central
    view, must agree with the central object render (object stereo term) and,
    composited with the central medium image, with the ground truth (full stereo
    term). All regularized L1 distances are scaled by the central composite. The
    smoothness term regularizes both disparity maps. An axis whose warp covers less
    than `min_coverage` of the image contributes no stereo terms for the step.

    :param central: RenderBundle of the central view
    :param warped_h: Object render of the horizontal view warped onto the central one
    :param warped_v: Object render of the vertical view warped onto the central one
    :param ground_truth: Ground truth image of the central view, shape (H, W, 3)
    :param disparities: Disparity maps used for the warps
    :param gamma: Edge sensitivity of the smoothness term
    :param epsilon: Stabilizer of the regularized L1 distances
    :param min_coverage: Minimum fraction of valid warp pixels for an axis to count
    :return: TrinocularLosses holding all terms
    """
    reference = central.composite
    zero = torch.zeros((), dtype=DTYPE)
    obj_stereo = zero
    full_stereo = zero
    skipped: List[str] = []
    axes = ((WarpAxis.HORIZONTAL, warped_h), (WarpAxis.VERTICAL, warped_v))
    for axis, warped in axes:
        coverage = warped.coverage
        if coverage < min_coverage:
            logging.info(
                f"Skipping {axis} stereo terms: warp coverage {coverage:.1%} is "
                f"below {min_coverage:.0%}."
            )
            skipped.append(str(axis))
            continue
        obj_stereo = obj_stereo + r_l1(
            warped.image,
            central.object_image,
            reference,
            epsilon=epsilon,
            mask=warped.mask,
        )
        full_stereo = full_stereo + r_l1(
            composite_full(warped.image, central.medium_image),
            ground_truth,
            reference,
            epsilon=epsilon,
            mask=warped.mask,
        )
    smooth = smoothness_loss(disparities, ground_truth, gamma=gamma)
    return TrinocularLosses(
        obj_stereo=obj_stereo,
        full_stereo=full_stereo,
        smooth=smooth,
        total=obj_stereo + full_stereo + smooth,
        skipped_axes=skipped,
    )
