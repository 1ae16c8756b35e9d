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

from typing import List, Optional

import attr
import torch

from .camera import CameraView
from .medium import MediumPreset
from .utils import to_optional_tensor, to_tensor


@attr.define(slots=False)
class DatasetView:
    """
    A single posed image of a dataset.

    :var name: Name of the view, used for file names
    :var camera: Camera that captured the view
    :var image: Observed (degraded) image, shape (H, W, 3), values in [0, 1]
    :var clean_image: Optional medium-free image of the same view
    :var depth: Optional true camera depth per pixel, shape (H, W)
    """

    name: str
    camera: CameraView
    image: torch.Tensor = attr.field(converter=to_tensor)
    clean_image: Optional[torch.Tensor] = attr.field(
        default=None, converter=to_optional_tensor
    )
    depth: Optional[torch.Tensor] = attr.field(
        default=None, converter=to_optional_tensor
    )

    def __attrs_post_init__(self) -> None:
        """
        Validate that the image matches the camera resolution.
        """
        expected = (self.camera.height, self.camera.width, 3)
        if tuple(self.image.shape) != expected:
            raise ValueError(
                f"Image of view '{self.name}' has shape {tuple(self.image.shape)}, "
                f"expected {expected} from its camera."
            )


@attr.define(slots=False)
class TrainingDataset:
    """
    Posed images split into views for training and held-out views for evaluation.

    :var train_views: Views used for optimization
    :var test_views: Held-out views
    :var preset: Medium preset that produced the observations, if known
    """

    train_views: List[DatasetView]
    test_views: List[DatasetView] = attr.field(factory=list)
    preset: Optional[MediumPreset] = None

    def __attrs_post_init__(self) -> None:
        """
        Validate that there is at least one training view.
        """
        if len(self.train_views) == 0:
            raise ValueError("A training dataset needs at least one training view.")

    @property
    def views(self) -> List[DatasetView]:
        """
        Return all views, training views first.
        """
        return self.train_views + self.test_views

    @property
    def scene_extent(self) -> float:
        """
        Return the radius of the sphere around the mean camera center that holds all
        training cameras, enlarged by 10 percent. Used to scale positional learning
        rates and the densification size threshold.
        """
        centers = torch.stack([view.camera.center for view in self.train_views])
        mean_center = centers.mean(dim=0)
        radius = float(torch.linalg.norm(centers - mean_center, dim=1).max())
        return max(radius, 1.0) * 1.1
