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

import attr
import torch

from .camera import CameraView


@attr.define(slots=False)
class DisparityMaps:
    """
    Per-pixel disparities of the two virtual views relative to the central view.

    :var horizontal: Horizontal disparity d_h, shape (H, W)
    :var vertical: Vertical disparity d_v, shape (H, W)
    :var valid: Boolean mask, True where the depth was positive and the disparities
        are defined, shape (H, W)
    """

    horizontal: torch.Tensor
    vertical: torch.Tensor
    valid: torch.Tensor


@attr.define(slots=False)
class WarpResult:
    """
    Result of inverse-warping an image with a disparity map.

    :var image: Warped image, shape (H, W, C), zero where `mask` is False
    :var mask: Validity mask, True where the source location was inside the image
    """

    image: torch.Tensor
    mask: torch.Tensor

    @property
    def coverage(self) -> float:
        """
        Return the fraction of valid pixels.
        """
        if self.mask.numel() == 0:
            return 0.0
        return float(self.mask.to(torch.float64).mean())


@attr.define(slots=False)
class VirtualViews:
    """
    The central camera and its horizontally and vertically translated companions.

    :var central: Central camera P_c
    :var horizontal: Horizontally shifted camera P_h
    :var vertical: Vertically shifted camera P_v
    :var baseline_h: Horizontal baseline b_h
    :var baseline_v: Vertical baseline b_v
    """

    central: CameraView
    horizontal: CameraView
    vertical: CameraView
    baseline_h: float
    baseline_v: float
