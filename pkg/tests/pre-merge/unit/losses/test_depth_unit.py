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
    GaussianPrimitive,
)
from aquasplat.geometry import project_point
from aquasplat.losses import (
    edge_weights,
    epipolar_loss,
    residual_loss,
    sample_bilinear,
    sample_nearest,
)
from aquasplat.rendering import render
from tests.helpers import random_image


def _on_axis_cloud(depths, opacity: float = 0.99) -> GaussianCloud:
    return GaussianCloud.from_primitives(
        [
            GaussianPrimitive(
                mean=[0.0, 0.0, depth],
                log_scale=[math.log(0.1)] * 3,
                rotation=[1.0, 0.0, 0.0, 0.0],
                opacity_logit=math.log(opacity / (1.0 - opacity)),
                color=[0.5, 0.5, 0.5],
            )
            for depth in depths
        ]
    )


class TestSampling:
    def test_nearest_and_bilinear(self):
        # Arrange
        ys, xs = torch.meshgrid(
            torch.arange(4, dtype=DTYPE), torch.arange(5, dtype=DTYPE), indexing="ij"
        )
        image = 2.0 * xs + ys
        pixels = torch.tensor([[1.2, 2.6], [3.5, 0.25]], dtype=DTYPE)

        # Act
        nearest = sample_nearest(image, pixels)
        bilinear = sample_bilinear(image, pixels)

        # Assert
        assert nearest.tolist() == [2.0 + 3.0, 8.0 + 0.0]
        assert torch.allclose(
            bilinear, torch.tensor([2.4 + 2.6, 7.0 + 0.25], dtype=DTYPE), atol=1e-12
        )

    def test_edge_weights_on_a_flat_image(self):
        # Arrange
        image = torch.full((3, 4, 3), 0.5, dtype=DTYPE)
        pixels = torch.tensor([[0, 0], [3, 2]])

        # Act and Assert
        assert torch.equal(edge_weights(image, pixels), torch.ones(2, 2, dtype=DTYPE))


class TestEpipolarLoss:
    def test_equal_depths(self):
        # Arrange
        depths = torch.tensor([1.0, 2.5], dtype=DTYPE)
        image = torch.full((3, 3, 3), 0.2, dtype=DTYPE)
        pixels = torch.tensor([[0, 0], [1, 2]])

        # Act and Assert
        assert float(epipolar_loss(depths, depths.clone(), image, pixels)) == 0.0

    def test_unit_log_error_on_a_flat_image(self):
        # Arrange
        priors = torch.tensor([1.0, 3.0, 2.0], dtype=DTYPE)
        depths = priors + torch.tensor([1.0, -1.0, 1.0], dtype=DTYPE) * (math.e - 1)
        image = torch.full((3, 3, 3), 0.7, dtype=DTYPE)
        pixels = torch.tensor([[0, 0], [2, 1], [1, 2]])

        # Act
        value = epipolar_loss(depths, priors, image, pixels)

        # Assert
        assert float(value) == pytest.approx(1.0, abs=1e-14)

    def test_matches_scalar_evaluation(self):
        # Arrange
        generator = torch.Generator().manual_seed(12)
        height, width = 5, 6
        image = random_image(height, width, generator)
        count = 20
        xs = torch.randint(0, width, (count,), generator=generator)
        ys = torch.randint(0, height, (count,), generator=generator)
        pixels = torch.stack([xs, ys], dim=1)
        depths = 1.0 + 3.0 * torch.rand(count, generator=generator, dtype=DTYPE)
        priors = 1.0 + 3.0 * torch.rand(count, generator=generator, dtype=DTYPE)

        # Act
        value = epipolar_loss(depths, priors, image, pixels)

        # Assert
        total = 0.0
        for index in range(count):
            x, y = int(xs[index]), int(ys[index])
            next_x, next_y = min(x + 1, width - 1), min(y + 1, height - 1)
            grad_x = float(torch.abs(image[y, next_x] - image[y, x]).mean())
            grad_y = float(torch.abs(image[next_y, x] - image[y, x]).mean())
            error = math.log1p(abs(float(depths[index] - priors[index])))
            total += error * (math.exp(-grad_x) + math.exp(-grad_y))
        assert float(value) == pytest.approx(total / (2 * count), abs=1e-12)

    def test_no_gradient_into_the_priors(self):
        # Arrange
        depths = torch.tensor([1.0, 2.0], dtype=DTYPE, requires_grad=True)
        priors = torch.tensor([1.5, 1.0], dtype=DTYPE, requires_grad=True)
        image = torch.full((2, 2, 3), 0.5, dtype=DTYPE)

        # Act
        epipolar_loss(depths, priors, image, torch.tensor([[0, 0], [1, 1]])).backward()

        # Assert
        assert priors.grad is None
        assert depths.grad is not None

    def test_no_samples(self):
        # Arrange
        empty = torch.zeros(0, dtype=DTYPE)
        image = torch.full((2, 2, 3), 0.5, dtype=DTYPE)

        # Act
        value = epipolar_loss(empty, empty, image, torch.zeros((0, 2)))

        # Assert
        assert float(value) == 0.0

    def test_mismatched_samples(self):
        # Act and Assert
        with pytest.raises(ValueError):
            epipolar_loss(
                torch.zeros(2, dtype=DTYPE),
                torch.zeros(3, dtype=DTYPE),
                torch.zeros((2, 2, 3), dtype=DTYPE),
                torch.zeros((2, 2)),
            )


class TestResidualLoss:
    def test_single_opaque_gaussian(self):
        # Arrange
        camera = CameraView.centered(20.0, 5, 5)
        cloud = _on_axis_cloud([4.0])
        bundle = render(cloud, camera)

        # Act
        value = residual_loss(cloud, camera, bundle.depth)

        # Assert
        assert float(value) < 1e-6

    def test_two_gaussians_on_one_pixel(self):
        # Arrange
        camera = CameraView.centered(20.0, 5, 5)
        cloud = _on_axis_cloud([1.0, 3.0])
        depth = torch.full((5, 5), 2.0, dtype=DTYPE)

        # Act
        value = residual_loss(cloud, camera, depth)

        # Assert
        assert float(value) == 1.0

    def test_matches_per_gaussian_loop(
        self, fxt_camera: CameraView, fxt_cloud: GaussianCloud
    ):
        # Arrange
        generator = torch.Generator().manual_seed(13)
        depth = 2.0 + 5.0 * torch.rand(
            fxt_camera.height, fxt_camera.width, generator=generator, dtype=DTYPE
        )

        # Act
        value = residual_loss(fxt_cloud, fxt_camera, depth)

        # Assert
        errors = []
        for gaussian in fxt_cloud:
            pixel, z, in_front = project_point(fxt_camera, gaussian.mean)
            x, y = float(pixel[0]), float(pixel[1])
            if not in_front or not (
                0 <= x <= fxt_camera.width - 1 and 0 <= y <= fxt_camera.height - 1
            ):
                continue
            errors.append(abs(float(depth[round(y), round(x)]) - float(z)))
        assert len(errors) == 4
        assert float(value) == pytest.approx(sum(errors) / len(errors), abs=1e-14)

    def test_bilinear_sampling_of_a_ramp(self, fxt_camera: CameraView):
        # Arrange
        cloud = _on_axis_cloud([3.0])
        cloud.means = torch.tensor([[0.13, 0.07, 3.0]], dtype=DTYPE)
        xs = torch.arange(fxt_camera.width, dtype=DTYPE)
        depth = xs[None, :].expand(fxt_camera.height, fxt_camera.width).clone()

        # Act
        value = residual_loss(cloud, fxt_camera, depth, bilinear=True)

        # Assert
        pixel, _, _ = project_point(fxt_camera, cloud.means[0])
        assert float(value) == pytest.approx(abs(float(pixel[0]) - 3.0), abs=1e-12)

    def test_nothing_in_view(self, fxt_camera: CameraView):
        # Arrange
        cloud = _on_axis_cloud([-2.0])

        # Act
        value = residual_loss(cloud, fxt_camera, torch.ones(12, 16, dtype=DTYPE))

        # Assert
        assert float(value) == 0.0
