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

from aquasplat.data_models import SyntheticFixture
from aquasplat.evaluation import validate


class TestValidate:
    def test_ground_truth_cloud(self, fxt_tiny_fixture: SyntheticFixture):
        # Arrange
        views = fxt_tiny_fixture.dataset.test_views

        # Act
        result = validate(fxt_tiny_fixture.cloud, None, views)

        # Assert
        assert result["num_views"] == 1
        novel_view = result["novel-view"]
        assert len(novel_view) == 2
        assert novel_view[0]["view"] == views[0].name
        restored = result["restoration"][-1]["psnr"]
        assert restored == "inf" or restored > 60.0
        assert result["degraded_vs_clean"]["num_views"] == 1
        assert math.isfinite(result["depth_mae"])
        assert result["depth_mae"] >= 0.0

    def test_views_without_references(self, fxt_tiny_fixture: SyntheticFixture):
        # Arrange
        view = fxt_tiny_fixture.dataset.test_views[0]
        bare = type(view)(name=view.name, camera=view.camera, image=view.image)

        # Act
        result = validate(fxt_tiny_fixture.cloud, None, [bare])

        # Assert
        assert "restoration" not in result
        assert "depth_mae" not in result
        assert len(result["novel-view"]) == 2
