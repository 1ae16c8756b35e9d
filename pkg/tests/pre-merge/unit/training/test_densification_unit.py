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

from aquasplat.data_models import CameraView, GaussianCloud, TrainConfig
from aquasplat.rendering import render
from aquasplat.scene import opacity_to_logit
from aquasplat.training import DensificationStats, densify_prune, split_children
from aquasplat.training.densification import SPLIT_SCALE_FACTOR


def _stats_for(num_gaussians: int, index: int, gradient: float = 1.0):
    stats = DensificationStats.zeros(num_gaussians)
    stats.gradient_sum[index] = gradient
    stats.counts[index] = 1.0
    return stats


class TestDensificationStats:
    def test_accumulate_after_backward(
        self, fxt_cloud: GaussianCloud, fxt_camera: CameraView
    ):
        # Arrange
        fxt_cloud.requires_grad_()
        bundle = render(fxt_cloud, fxt_camera)
        bundle.composite.sum().backward()
        stats = DensificationStats.zeros(len(fxt_cloud))

        # Act
        stats.accumulate(bundle.splats)
        stats.accumulate(bundle.splats)

        # Assert
        rendered = bundle.splats.indices
        assert torch.all(stats.counts[rendered] == 2.0)
        expected = torch.linalg.norm(bundle.splats.means2d.grad, dim=1)
        assert torch.allclose(stats.average()[rendered], expected, rtol=1e-12)

    def test_accumulate_without_gradient(
        self, fxt_cloud: GaussianCloud, fxt_camera: CameraView
    ):
        # Arrange
        with torch.no_grad():
            bundle = render(fxt_cloud, fxt_camera)
        stats = DensificationStats.zeros(len(fxt_cloud))

        # Act
        stats.accumulate(bundle.splats)

        # Assert
        assert float(stats.counts.sum()) == 0.0

    def test_average_of_unrendered_gaussians(self):
        # Act and Assert
        assert DensificationStats.zeros(3).average().tolist() == [0.0, 0.0, 0.0]


class TestSplitChildren:
    def test_children_are_smaller_and_inside_the_parent(self, fxt_cloud: GaussianCloud):
        # Arrange
        parent = fxt_cloud.masked(torch.tensor([True, False, False, False]))

        # Act
        children = split_children(parent, torch.Generator().manual_seed(0))

        # Assert
        assert len(children) == 2
        assert torch.allclose(
            children.scales, parent.scales.repeat(2, 1) / SPLIT_SCALE_FACTOR
        )
        assert torch.equal(children.rotations, parent.rotations.repeat(2, 1))
        assert torch.equal(children.colors, parent.colors.repeat(2, 1))
        # identity rotation: the offset in units of the parent scale is the noise
        normalized = (children.means - parent.means) / parent.scales
        assert float(normalized.abs().max()) < 6.0

    def test_same_seed_same_children(self, fxt_cloud: GaussianCloud):
        # Act
        first = split_children(fxt_cloud, torch.Generator().manual_seed(3))
        second = split_children(fxt_cloud, torch.Generator().manual_seed(3))
        other = split_children(fxt_cloud, torch.Generator().manual_seed(4))

        # Assert
        assert torch.equal(first.means, second.means)
        assert not torch.equal(first.means, other.means)


class TestDensifyPrune:
    def test_below_thresholds_is_a_no_op(self, fxt_cloud: GaussianCloud):
        # Act
        result = densify_prune(
            fxt_cloud,
            DensificationStats.zeros(4),
            TrainConfig(),
            scene_extent=10.0,
            generator=torch.Generator().manual_seed(0),
        )

        # Assert
        assert not result.changed
        assert torch.equal(result.cloud.means, fxt_cloud.means)
        assert result.sources.tolist() == [0, 1, 2, 3]
        assert not bool(result.fresh.any())

    def test_low_opacity_is_pruned(self, fxt_cloud: GaussianCloud):
        # Arrange
        fxt_cloud.opacity_logits[1] = opacity_to_logit(0.001)

        # Act
        result = densify_prune(
            fxt_cloud,
            DensificationStats.zeros(4),
            TrainConfig(),
            scene_extent=10.0,
            generator=torch.Generator().manual_seed(0),
        )

        # Assert
        assert result.num_pruned == 1
        assert result.sources.tolist() == [0, 2, 3]
        assert torch.equal(result.cloud.means, fxt_cloud.means[[0, 2, 3]])

    def test_small_gaussian_is_cloned(self, fxt_cloud: GaussianCloud):
        # Act
        result = densify_prune(
            fxt_cloud,
            _stats_for(4, 2),
            TrainConfig(),
            scene_extent=100.0,
            generator=torch.Generator().manual_seed(0),
        )

        # Assert
        assert (result.num_cloned, result.num_split, result.num_pruned) == (1, 0, 0)
        assert result.sources.tolist() == [0, 1, 2, 3, 2]
        assert result.fresh.tolist() == [False, False, False, False, True]
        rows = result.cloud.to_rows()
        assert rows[4] == rows[2]

    def test_large_gaussian_is_split(self, fxt_cloud: GaussianCloud):
        # Act
        result = densify_prune(
            fxt_cloud,
            _stats_for(4, 0),
            TrainConfig(),
            scene_extent=10.0,
            generator=torch.Generator().manual_seed(0),
        )

        # Assert
        assert (result.num_cloned, result.num_split, result.num_pruned) == (0, 1, 0)
        assert result.sources.tolist() == [1, 2, 3, 0, 0]
        assert result.fresh.tolist() == [False, False, False, True, True]
        expected_log_scales = fxt_cloud.log_scales[0] - math.log(1.6)
        assert torch.allclose(result.cloud.log_scales[3], expected_log_scales)
        assert torch.allclose(result.cloud.log_scales[4], expected_log_scales)

    def test_split_is_deterministic_under_a_seed(self, fxt_cloud: GaussianCloud):
        # Arrange
        def run(seed: int) -> torch.Tensor:
            return densify_prune(
                fxt_cloud,
                _stats_for(4, 0),
                TrainConfig(),
                scene_extent=10.0,
                generator=torch.Generator().manual_seed(seed),
            ).cloud.means

        # Act and Assert
        assert torch.equal(run(5), run(5))

    def test_size_cap_keeps_the_first_gaussians(self, fxt_cloud: GaussianCloud):
        # Act
        result = densify_prune(
            fxt_cloud,
            _stats_for(4, 2),
            TrainConfig(max_gaussians=4),
            scene_extent=100.0,
            generator=torch.Generator().manual_seed(0),
        )

        # Assert
        assert len(result.cloud) == 4
        assert result.sources.tolist() == [0, 1, 2, 3]
        assert result.num_pruned == 1

    def test_statistics_length_mismatch(self, fxt_cloud: GaussianCloud):
        # Act and Assert
        with pytest.raises(ValueError):
            densify_prune(
                fxt_cloud,
                DensificationStats.zeros(3),
                TrainConfig(),
                scene_extent=10.0,
                generator=torch.Generator().manual_seed(0),
            )
