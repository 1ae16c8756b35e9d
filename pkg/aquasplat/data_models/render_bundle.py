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

from typing import Dict

import attr
import torch

from .camera import CameraView
from .enums import RenderComponent


@attr.define(slots=False)
class SplatList:
    """
    Screen-space footprints of the Gaussians that are in front of a camera, sorted
    front to back by camera depth with ties broken by cloud index.

    :var indices: Index of each splat in the source GaussianCloud, shape (M,)
    :var means2d: Projected centers in pixel coordinates, shape (M, 2)
    :var covariances2d: Screen-space covariances including the low-pass floor,
        shape (M, 2, 2)
    :var depths: Camera-space depth of each center, shape (M,)
    :var opacities: Peak opacity used for compositing (after any adjustment),
        shape (M,)
    :var colors: RGB colors, shape (M, 3)
    """

    indices: torch.Tensor
    means2d: torch.Tensor
    covariances2d: torch.Tensor
    depths: torch.Tensor
    opacities: torch.Tensor
    colors: torch.Tensor

    def __len__(self) -> int:
        """
        Return the number of splats in the list.
        """
        return self.indices.shape[0]


@attr.define(slots=False)
class RenderBundle:
    """
    All images produced by a single render call.

    :var object_image: Attenuated object radiance I_obj, shape (H, W, 3)
    :var medium_image: Backscatter radiance I_med, shape (H, W, 3)
    :var composite: Composite image I = I_obj + I_med, shape (H, W, 3)
    :var depth: Normalized expected depth D, shape (H, W)
    :var transmittance: Residual transmittance after the last splat, shape (H, W)
    :var splats: Sorted screen-space splats that were composited
    :var camera: Camera that was rendered
    """

    object_image: torch.Tensor
    medium_image: torch.Tensor
    composite: torch.Tensor
    depth: torch.Tensor
    transmittance: torch.Tensor
    splats: SplatList
    camera: CameraView

    @property
    def accumulated_alpha(self) -> torch.Tensor:
        """
        Return the per-pixel coverage 1 - T, shape (H, W).
        """
        return 1.0 - self.transmittance

    def component(self, component: RenderComponent) -> torch.Tensor:
        """
        Return the image for a single render component.

        The RESTORED component is only meaningful for bundles rendered with
        `restore=True`, where it equals the object image.

        :param component: Component to return
        :return: Tensor of shape (H, W, 3) for images or (H, W) for depth
        """
        mapping: Dict[RenderComponent, torch.Tensor] = {
            RenderComponent.COMPOSITE: self.composite,
            RenderComponent.OBJECT: self.object_image,
            RenderComponent.MEDIUM: self.medium_image,
            RenderComponent.DEPTH: self.depth,
            RenderComponent.RESTORED: self.object_image,
        }
        if component not in mapping:
            raise ValueError(f"Render component '{component}' is not a single image.")
        return mapping[component]
