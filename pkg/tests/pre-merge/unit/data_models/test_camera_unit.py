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

from aquasplat.data_models import DTYPE, CameraView


class TestCameraView:
    def test_center_and_projection_matrix(self):
        # Arrange
        angle = 0.4
        rotation = torch.tensor(
            [
                [math.cos(angle), 0.0, math.sin(angle)],
                [0.0, 1.0, 0.0],
                [-math.sin(angle), 0.0, math.cos(angle)],
            ],
            dtype=DTYPE,
        )
        translation = torch.tensor([0.5, -0.2, 3.0], dtype=DTYPE)

        # Act
        camera = CameraView.centered(
            25.0, 20, 10, rotation=rotation, translation=translation
        )

        # Assert
        assert torch.allclose(
            rotation @ camera.center + translation, torch.zeros(3, dtype=DTYPE)
        )
        assert camera.projection_matrix.shape == (3, 4)
        assert camera.fx == camera.fy == 25.0
        assert float(camera.intrinsics[0, 2]) == 9.5
        assert float(camera.intrinsics[1, 2]) == 4.5
        assert camera.num_pixels == 200

    def test_downscaled_keeps_pixel_block_alignment(self, fxt_camera: CameraView):
        # Act
        downscaled = fxt_camera.downscaled(2)

        # Assert
        assert (downscaled.width, downscaled.height) == (8, 6)
        assert downscaled.fx == fxt_camera.fx / 2
        assert float(downscaled.intrinsics[0, 2]) == pytest.approx(3.5)
        assert float(downscaled.intrinsics[1, 2]) == pytest.approx(2.5)
        assert fxt_camera.downscaled(1) is fxt_camera
        with pytest.raises(ValueError):
            fxt_camera.downscaled(0)

    def test_invalid_cameras_raise(self):
        # Arrange
        intrinsics = torch.eye(3, dtype=DTYPE)
        skewed = torch.tensor(
            [[1.0, 0.1, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]], dtype=DTYPE
        )

        # Act and Assert
        with pytest.raises(ValueError):
            CameraView(intrinsics, skewed, torch.zeros(3), 4, 4)
        with pytest.raises(ValueError):
            CameraView(-intrinsics, torch.eye(3), torch.zeros(3), 4, 4)
        with pytest.raises(ValueError):
            CameraView(intrinsics, torch.eye(3), torch.zeros(2), 4, 4)
        with pytest.raises(ValueError):
            CameraView(intrinsics, torch.eye(3), torch.zeros(3), 0, 4)

    def test_with_translation(self, fxt_camera: CameraView):
        # Arrange
        translation = torch.tensor([0.1, 0.0, 0.0], dtype=DTYPE)

        # Act
        moved = fxt_camera.with_translation(translation)

        # Assert
        assert torch.equal(moved.translation, translation)
        assert torch.equal(moved.intrinsics, fxt_camera.intrinsics)
        assert moved.name == fxt_camera.name
