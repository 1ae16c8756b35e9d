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

from aquasplat.data_models import DTYPE, GaussianCloud, GaussianPrimitive


class TestGaussianCloud:
    def test_rows_round_trip(self, fxt_cloud: GaussianCloud):
        # Act
        rows = torch.tensor(fxt_cloud.to_rows(), dtype=DTYPE)
        cloud = GaussianCloud.from_rows(rows)

        # Assert
        assert rows.shape == (4, 14)
        for name, value in fxt_cloud.parameters().items():
            assert torch.equal(getattr(cloud, name), value)

    def test_indexing_returns_primitive(self, fxt_cloud: GaussianCloud):
        # Act
        primitive = fxt_cloud[1]
        primitives = list(fxt_cloud)

        # Assert
        assert isinstance(primitive, GaussianPrimitive)
        assert len(primitives) == len(fxt_cloud) == 4
        assert torch.equal(primitive.mean, fxt_cloud.means[1])
        assert torch.allclose(primitive.scale, torch.exp(fxt_cloud.log_scales[1]))
        assert 0.0 < float(primitive.opacity) < 1.0

    def test_masked_and_concatenated(self, fxt_cloud: GaussianCloud):
        # Arrange
        keep = torch.tensor([True, False, True, False])

        # Act
        masked = fxt_cloud.masked(keep)
        combined = masked.concatenated(fxt_cloud)

        # Assert
        assert len(masked) == 2
        assert torch.equal(masked.means[1], fxt_cloud.means[2])
        assert len(combined) == 6
        assert torch.equal(combined.colors[2:], fxt_cloud.colors)

    def test_requires_grad_creates_leaves(self, fxt_cloud: GaussianCloud):
        # Act
        fxt_cloud.requires_grad_(True)
        detached = fxt_cloud.detached()

        # Assert
        for value in fxt_cloud.parameters().values():
            assert value.requires_grad
            assert value.is_leaf
        for value in detached.parameters().values():
            assert not value.requires_grad

    def test_empty_cloud(self):
        # Act
        cloud = GaussianCloud.empty()

        # Assert
        assert len(cloud) == 0
        assert cloud.to_rows() == []

    def test_shape_mismatch_raises(self, fxt_cloud: GaussianCloud):
        # Act and Assert
        with pytest.raises(ValueError):
            GaussianCloud(
                means=fxt_cloud.means,
                log_scales=fxt_cloud.log_scales[:3],
                rotations=fxt_cloud.rotations,
                opacity_logits=fxt_cloud.opacity_logits,
                colors=fxt_cloud.colors,
            )
        with pytest.raises(ValueError):
            GaussianPrimitive(
                mean=[0.0, 0.0],
                log_scale=[0.0, 0.0, 0.0],
                rotation=[1.0, 0.0, 0.0, 0.0],
                opacity_logit=0.0,
                color=[0.5, 0.5, 0.5],
            )
