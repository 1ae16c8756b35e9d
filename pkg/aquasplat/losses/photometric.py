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
from typing import Optional

import torch

from aquasplat.data_models import DTYPE
from aquasplat.gradients.tape import stop_gradient

from .ssim import structural_similarity

DEFAULT_EPSILON = 1e-3


def r_l1(
    image: torch.Tensor,
    target: torch.Tensor,
    reference: torch.Tensor,
    epsilon: float = DEFAULT_EPSILON,
    mask: Optional[torch.Tensor] = None,
) -> torch.Tensor:
    """
    Regularized L1 distance, the mean of |I1 - I2| / (sg(I_ref) + eps).

    Dividing by the detached reference image emphasizes dark regions. Pixels outside
    `mask` do not contribute to the value or its gradient.

    :param image: First image I1, shape (H, W, C)
    :param target: Second image I2, shape (H, W, C)
    :param reference: Reference image I_ref defining the per-pixel scale, shape
        (H, W, C). No gradient flows through it
    :param epsilon: Positive stabilizer of the denominator
    :param mask: Optional boolean mask of valid pixels, shape (H, W)
    :return: Scalar tensor
    """
    if epsilon <= 0:
        raise ValueError(f"Regularization constant must be positive, got {epsilon}")
    if image.shape != target.shape or image.shape != reference.shape:
        raise ValueError(
            f"Image shapes {tuple(image.shape)}, {tuple(target.shape)} and "
            f"{tuple(reference.shape)} do not match."
        )
    scale = stop_gradient(reference) + epsilon
    difference = torch.abs(image - target) / scale
    if mask is None:
        return difference.mean()
    if not bool(mask.any()):
        logging.warning("Regularized L1 loss evaluated on an empty mask; using 0.")
        return torch.zeros((), dtype=DTYPE)
    return difference[mask].mean()


def regularized_ssim_loss(
    image: torch.Tensor, target: torch.Tensor, epsilon: float = DEFAULT_EPSILON
) -> torch.Tensor:
    """
    Return 1 - SSIM of both images divided by (sg(image) + eps).

    :param image: Rendered image, shape (H, W, C)
    :param target: Ground truth image, shape (H, W, C)
    :param epsilon: Positive stabilizer of the denominator
    :return: Scalar tensor in [0, 2]
    """
    scale = stop_gradient(image) + epsilon
    return 1.0 - structural_similarity(image / scale, target / scale, same_padding=True)


def photometric_loss(
    image: torch.Tensor,
    target: torch.Tensor,
    lambda_ssim: float = 0.2,
    epsilon: float = DEFAULT_EPSILON,
) -> torch.Tensor:
    """
    Photometric loss (1 - lambda) R-L1(I_c, I_gt) + lambda R-SSIM(I_c, I_gt).

    :param image: Rendered composite I_c, shape (H, W, 3)
    :param target: Ground truth image I_gt, shape (H, W, 3)
    :param lambda_ssim: Weight of the SSIM part, in [0, 1]
    :param epsilon: Positive stabilizer of the regularization
    :return: Scalar tensor
    """
    if not 0.0 <= lambda_ssim <= 1.0:
        raise ValueError(f"SSIM weight must be in [0, 1], got {lambda_ssim}")
    l1_term = r_l1(image, target, image, epsilon=epsilon)
    if lambda_ssim == 0.0:
        return l1_term
    ssim_term = regularized_ssim_loss(image, target, epsilon=epsilon)
    return (1.0 - lambda_ssim) * l1_term + lambda_ssim * ssim_term
