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

import pytest
import torch

from aquasplat.data_models import DTYPE, CameraView, GaussianCloud, GaussianPrimitive
from aquasplat.geometry import (
    make_virtual_poses,
    project_points,
    select_candidates,
    triangulate_depth,
    triangulate_depths,
    triangulate_points,
    world_to_camera,
)
from aquasplat.scene import opacity_to_logit
from aquasplat.simulation import look_at


def _cloud(means, opacities) -> GaussianCloud:
    return GaussianCloud.from_primitives(
        [
            GaussianPrimitive(
                mean=mean,
                log_scale=[-2.0, -2.0, -2.0],
                rotation=[1.0, 0.0, 0.0, 0.0],
                opacity_logit=opacity_to_logit(opacity),
                color=[0.5, 0.5, 0.5],
            )
            for mean, opacity in zip(means, opacities)
        ]
    )


class TestSelectCandidates:
    def test_frustum_and_opacity_rules(self, fxt_camera: CameraView):
        # Arrange
        views = make_virtual_poses(fxt_camera, 0.5, 0.5)
        cameras = [views.central, views.horizontal, views.vertical]
        cloud = _cloud(
            means=[
                [0.0, 0.0, -3.0],
                [0.0, 0.0, 4.0],
                [0.0, 0.0, 4.0],
                [1.2, 0.0, 4.0],
            ],
            opacities=[0.9, 0.9, 0.5, 0.9],
        )

        # Act
        selected = select_candidates(cloud, cameras, opacity_threshold=0.8)

        # Assert
        assert selected.tolist() == [1]

    def test_visible_in_central_and_horizontal_only(self, fxt_camera: CameraView):
        # Arrange
        views = make_virtual_poses(fxt_camera, 0.0, 1.0)
        cloud = _cloud(means=[[0.0, 0.5, 4.0]], opacities=[0.9])

        # Act
        central_only = select_candidates(
            cloud, [views.central, views.horizontal], opacity_threshold=0.8
        )
        all_views = select_candidates(
            cloud,
            [views.central, views.horizontal, views.vertical],
            opacity_threshold=0.8,
        )

        # Assert
        assert central_only.tolist() == [0]
        assert all_views.tolist() == []

    @pytest.mark.parametrize("threshold", [0.0, 1.0, -0.5])
    def test_threshold_outside_open_interval(
        self, fxt_camera: CameraView, fxt_cloud: GaussianCloud, threshold: float
    ):
        # Act and Assert
        with pytest.raises(ValueError):
            select_candidates(fxt_cloud, [fxt_camera], opacity_threshold=threshold)


class TestTriangulation:
    def test_noise_free_projections_recover_depth(self):
        # Arrange
        generator = torch.Generator().manual_seed(21)
        for _ in range(5):
            center = 5.0 * torch.randn(3, generator=generator, dtype=DTYPE)
            rotation, translation = look_at(center, torch.zeros(3, dtype=DTYPE))
            camera = CameraView.centered(40.0, 32, 24, rotation, translation)
            views = make_virtual_poses(camera, 0.3, 0.3)
            offsets = 0.8 * torch.randn(200, 3, generator=generator, dtype=DTYPE)
            points = offsets + camera.center + 4.0 * camera.rotation[2]
            pixels_h, _, _ = project_points(views.horizontal, points)
            pixels_v, _, _ = project_points(views.vertical, points)

            # Act
            depths, accepted = triangulate_depths(
                pixels_h,
                pixels_v,
                views.horizontal.projection_matrix,
                views.vertical.projection_matrix,
                camera,
            )

            # Assert
            expected = world_to_camera(camera, points)[:, 2]
            assert torch.all(accepted)
            relative = torch.abs(depths - expected) / torch.abs(expected)
            assert float(relative.max()) <= 1e-8

    def test_on_axis_point_with_axis_aligned_baselines(self, fxt_camera: CameraView):
        # Arrange
        views = make_virtual_poses(fxt_camera, 0.5, 0.5)
        point = torch.tensor([[0.0, 0.0, 3.5]], dtype=DTYPE)
        pixel_h, _, _ = project_points(views.horizontal, point)
        pixel_v, _, _ = project_points(views.vertical, point)

        # Act
        depth = triangulate_depth(
            pixel_h[0],
            pixel_v[0],
            views.horizontal.projection_matrix,
            views.vertical.projection_matrix,
            fxt_camera,
        )

        # Assert
        assert depth == pytest.approx(3.5, rel=1e-12)

    def test_pixel_noise_error_follows_disparity_sensitivity(self):
        # Arrange
        focal_length, baseline, depth, noise = 500.0, 0.5, 4.0, 0.25
        camera = CameraView.centered(focal_length, 64, 48)
        views = make_virtual_poses(camera, baseline, baseline)
        point = torch.tensor([[0.05, -0.03, depth]], dtype=DTYPE)
        pixel_h, _, _ = project_points(views.horizontal, point)
        pixel_v, _, _ = project_points(views.vertical, point)
        generator = torch.Generator().manual_seed(8)
        signs_h = torch.randint(0, 2, (300, 2), generator=generator) * 2 - 1
        signs_v = torch.randint(0, 2, (300, 2), generator=generator) * 2 - 1

        # Act
        depths, accepted = triangulate_depths(
            pixel_h + noise * signs_h.to(DTYPE),
            pixel_v + noise * signs_v.to(DTYPE),
            views.horizontal.projection_matrix,
            views.vertical.projection_matrix,
            camera,
        )

        # Assert
        sensitivity = depth**2 * noise / (focal_length * baseline)
        assert torch.all(accepted)
        assert float(torch.abs(depths - depth).max()) <= 3.0 * sensitivity

    def test_parallel_rays_are_rejected(self, fxt_camera: CameraView):
        # Arrange
        pixel = torch.tensor([9.0, 4.0], dtype=DTYPE)
        projection = fxt_camera.projection_matrix

        # Act
        depth = triangulate_depth(pixel, pixel, projection, projection, fxt_camera)

        # Assert
        assert depth is None

    def test_empty_input(self, fxt_camera: CameraView):
        # Act
        points, accepted = triangulate_points(
            torch.zeros((0, 2), dtype=DTYPE),
            torch.zeros((0, 2), dtype=DTYPE),
            fxt_camera.projection_matrix,
            fxt_camera.projection_matrix,
        )

        # Assert
        assert points.shape == (0, 3)
        assert accepted.shape == (0,)
