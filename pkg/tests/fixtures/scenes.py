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

import math

import pytest
import torch

from aquasplat.data_models import (
    DTYPE,
    CameraView,
    GaussianCloud,
    MediumParameters,
)
from aquasplat.networks import MediumField
from aquasplat.scene import opacity_to_logit


@pytest.fixture()
def fxt_camera() -> CameraView:
    """
    Camera at the origin looking down +z, 16x12 pixels
    """
    yield CameraView.centered(20.0, 16, 12, name="center")


@pytest.fixture()
def fxt_cloud() -> GaussianCloud:
    """
    Four Gaussians in front of `fxt_camera`, at different depths
    """
    yield GaussianCloud(
        means=torch.tensor(
            [
                [0.0, 0.0, 3.0],
                [0.3, -0.2, 4.0],
                [-0.4, 0.25, 5.0],
                [0.1, 0.1, 6.0],
            ],
            dtype=DTYPE,
        ),
        log_scales=torch.log(
            torch.tensor(
                [
                    [0.2, 0.15, 0.1],
                    [0.25, 0.2, 0.2],
                    [0.3, 0.3, 0.1],
                    [0.6, 0.5, 0.2],
                ],
                dtype=DTYPE,
            )
        ),
        rotations=torch.tensor(
            [
                [1.0, 0.0, 0.0, 0.0],
                [math.cos(0.3), 0.0, 0.0, math.sin(0.3)],
                [0.9, 0.1, -0.2, 0.3],
                [1.0, 0.0, 0.0, 0.0],
            ],
            dtype=DTYPE,
        ),
        opacity_logits=torch.tensor(
            [opacity_to_logit(value) for value in (0.7, 0.5, 0.8, 0.9)], dtype=DTYPE
        ),
        colors=torch.tensor(
            [
                [0.9, 0.2, 0.1],
                [0.1, 0.8, 0.3],
                [0.2, 0.3, 0.9],
                [0.6, 0.6, 0.6],
            ],
            dtype=DTYPE,
        ),
    )


@pytest.fixture()
def fxt_medium() -> MediumParameters:
    """
    Constant medium with different coefficients per channel
    """
    yield MediumParameters(
        sigma_attn=[0.3, 0.2, 0.1], sigma_bs=[0.2, 0.25, 0.3], c_med=[0.1, 0.3, 0.5]
    )


@pytest.fixture()
def fxt_medium_field() -> MediumField:
    """
    Small medium network with a fixed seed
    """
    yield MediumField(hidden_width=8, hidden_layers=1, frequencies=2, seed=0)
