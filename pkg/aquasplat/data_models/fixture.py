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

from .dataset import TrainingDataset
from .enums import MediumPresetName
from .gaussians import GaussianCloud
from .utils import str_to_enum_converter


@attr.define(slots=False)
class FixtureSpec:
    """
    Description of a synthetic scene to generate.

    :var num_gaussians: Number of Gaussians in the ground-truth cloud
    :var num_train_views: Number of training views
    :var num_test_views: Number of held-out views
    :var width: Image width in pixels
    :var height: Image height in pixels
    :var preset: Medium preset used to degrade the clean renders
    :var seed: Seed of the scene generator
    :var camera_distance: Distance of the cameras to the scene center
    :var scene_radius: Radius of the region that holds the Gaussians
    :var field_of_view: Horizontal field of view of the cameras, in degrees
    """

    num_gaussians: int = 200
    num_train_views: int = 12
    num_test_views: int = 3
    width: int = 64
    height: int = 48
    preset: MediumPresetName = attr.field(
        default=MediumPresetName.FOG, converter=str_to_enum_converter(MediumPresetName)
    )
    seed: int = 0
    camera_distance: float = 4.0
    scene_radius: float = 1.0
    field_of_view: float = 50.0

    def __attrs_post_init__(self) -> None:
        """
        Validate the fixture description.
        """
        if self.num_gaussians < 1:
            raise ValueError("A fixture needs at least one Gaussian.")
        if self.num_train_views < 1 or self.num_test_views < 0:
            raise ValueError("A fixture needs at least one training view.")
        if not 0.0 < self.field_of_view < 180.0:
            raise ValueError(
                f"Field of view must be in (0, 180) degrees, got {self.field_of_view}"
            )


@attr.define(slots=False)
class SyntheticFixture:
    """
    A generated scene together with its rendered dataset.

    :var spec: Description the fixture was generated from
    :var cloud: Ground-truth Gaussian cloud
    :var dataset: Clean, degraded and depth images of all views
    """

    spec: FixtureSpec
    cloud: GaussianCloud
    dataset: TrainingDataset
