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
import math

import pytest
import torch

from aquasplat.data_models import (
    DTYPE,
    CameraView,
    DisparityMaps,
    GaussianCloud,
    MediumParameters,
    WarpResult,
)
from aquasplat.geometry import inverse_warp
from aquasplat.losses import DEFAULT_EPSILON, smoothness_loss, trinocular_losses
from aquasplat.rendering import render


def _zero_disparities(height: int, width: int) -> DisparityMaps:
    zeros = torch.zeros(height, width, dtype=DTYPE)
    return DisparityMaps(
        horizontal=zeros,
        vertical=zeros,
        valid=torch.ones(height, width, dtype=torch.bool),
    )


def _loop_smoothness(disparities: DisparityMaps, image: torch.Tensor) -> float:
    height, width = disparities.valid.shape
    terms = []
    for disparity in (disparities.horizontal, disparities.vertical):
        for dy, dx in ((0, 1), (1, 0)):
            values = []
            for y in range(height - dy):
                for x in range(width - dx):
                    if not (
                        disparities.valid[y, x] and disparities.valid[y + dy, x + dx]
                    ):
                        continue
                    edge = float(torch.abs(image[y + dy, x + dx] - image[y, x]).mean())
                    step = abs(float(disparity[y + dy, x + dx] - disparity[y, x]))
                    values.append(step * math.exp(-edge))
            terms.append(sum(values) / len(values) if values else 0.0)
    return sum(terms) / len(terms)


class TestSmoothnessLoss:
    def test_constant_disparities(self):
        # Arrange
        generator = torch.Generator().manual_seed(0)
        image = torch.rand(5, 6, 3, generator=generator, dtype=DTYPE)
        disparities = DisparityMaps(
            horizontal=torch.full((5, 6), 2.0, dtype=DTYPE),
            vertical=torch.full((5, 6), 1.0, dtype=DTYPE),
            valid=torch.ones(5, 6, dtype=torch.bool),
        )

        # Act and Assert
        assert float(smoothness_loss(disparities, image)) == 0.0

    def test_hand_built_three_by_three(self):
        # Arrange
        image = torch.tensor(
            [
                [[0.1] * 3, [0.2] * 3, [0.9] * 3],
                [[0.1] * 3, [0.5] * 3, [0.4] * 3],
                [[0.0] * 3, [0.3] * 3, [0.3] * 3],
            ],
            dtype=DTYPE,
        )
        disparities = DisparityMaps(
            horizontal=torch.tensor(
                [[1.0, 1.5, 0.5], [2.0, 1.0, 1.0], [0.0, 0.5, 3.0]], dtype=DTYPE
            ),
            vertical=torch.tensor(
                [[0.2, 0.4, 0.1], [0.3, 0.3, 0.9], [0.6, 0.0, 0.2]], dtype=DTYPE
            ),
            valid=torch.tensor(
                [[True, True, True], [True, False, True], [True, True, True]]
            ),
        )

        # Act
        value = smoothness_loss(disparities, image)

        # Assert
        assert float(value) == pytest.approx(
            _loop_smoothness(disparities, image), abs=1e-12
        )


class TestTrinocularLosses:
    def test_identity_warps(
        self,
        fxt_camera: CameraView,
        fxt_cloud: GaussianCloud,
        fxt_medium: MediumParameters,
    ):
        # Arrange
        central = render(fxt_cloud, fxt_camera, fxt_medium)
        disparities = _zero_disparities(fxt_camera.height, fxt_camera.width)
        warped = inverse_warp(central.object_image, disparities.horizontal, "vertical")

        # Act
        losses = trinocular_losses(
            central, warped, warped, central.composite, disparities
        )

        # Assert
        assert float(losses.obj_stereo) == pytest.approx(0.0, abs=1e-12)
        assert float(losses.full_stereo) == pytest.approx(0.0, abs=1e-12)
        assert float(losses.smooth) == 0.0
        assert losses.skipped_axes == []

    def test_hand_built_images(self):
        # Arrange
        camera = CameraView.centered(5.0, 3, 3)
        central = render(GaussianCloud.empty(), camera)
        central.object_image = torch.full((3, 3, 3), 0.4, dtype=DTYPE)
        central.medium_image = torch.full((3, 3, 3), 0.1, dtype=DTYPE)
        central.composite = central.object_image + central.medium_image
        ground_truth = torch.full((3, 3, 3), 0.6, dtype=DTYPE)
        image_h = torch.full((3, 3, 3), 0.3, dtype=DTYPE)
        image_v = torch.full((3, 3, 3), 0.45, dtype=DTYPE)
        mask_h = torch.ones(3, 3, dtype=torch.bool)
        mask_h[:, 0] = False
        mask_v = torch.ones(3, 3, dtype=torch.bool)
        disparities = _zero_disparities(3, 3)

        # Act
        losses = trinocular_losses(
            central,
            WarpResult(image=image_h * mask_h[..., None], mask=mask_h),
            WarpResult(image=image_v, mask=mask_v),
            ground_truth,
            disparities,
        )

        # Assert
        scale = 0.5 + DEFAULT_EPSILON
        expected_obj = (0.1 + 0.05) / scale
        expected_full = (abs(0.4 - 0.6) + abs(0.55 - 0.6)) / scale
        assert float(losses.obj_stereo) == pytest.approx(expected_obj, rel=1e-12)
        assert float(losses.full_stereo) == pytest.approx(expected_full, rel=1e-12)
        assert float(losses.total) == pytest.approx(
            expected_obj + expected_full, rel=1e-12
        )

    def test_low_coverage_axis_is_skipped(
        self,
        fxt_camera: CameraView,
        fxt_cloud: GaussianCloud,
        fxt_medium: MediumParameters,
        caplog,
    ):
        # Arrange
        central = render(fxt_cloud, fxt_camera, fxt_medium)
        shape = (fxt_camera.height, fxt_camera.width)
        disparities = _zero_disparities(*shape)
        empty = WarpResult(
            image=torch.zeros_like(central.object_image),
            mask=torch.zeros(shape, dtype=torch.bool),
        )
        full = inverse_warp(central.object_image, disparities.vertical, "vertical")

        # Act
        with caplog.at_level(logging.INFO):
            losses = trinocular_losses(
                central, empty, full, central.composite, disparities
            )

        # Assert
        assert losses.skipped_axes == ["horizontal"]
        assert "Skipping horizontal stereo terms" in caplog.text
        assert float(losses.obj_stereo) == pytest.approx(0.0, abs=1e-12)
        assert set(losses.to_dict()) == {"obj_stereo", "full_stereo", "smooth"}
