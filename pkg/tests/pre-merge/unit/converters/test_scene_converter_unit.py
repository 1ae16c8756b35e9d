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

import os

import pytest
import torch

from aquasplat.converters import SceneConverter
from aquasplat.data_models import PARAMETER_NAMES, GaussianCloud
from aquasplat.exceptions import SceneFormatError


class TestSceneConverter:
    def test_text_holds_the_cloud_exactly(self, fxt_cloud: GaussianCloud):
        # Act
        text = SceneConverter.to_text(fxt_cloud)
        cloud = SceneConverter.from_text(text)

        # Assert
        assert text.splitlines()[:3] == ["# aquasplat-scene", "version 1", "count 4"]
        for name in PARAMETER_NAMES:
            assert torch.equal(getattr(cloud, name), getattr(fxt_cloud, name))

    def test_save_and_load(self, fxt_cloud: GaussianCloud, tmp_path):
        # Arrange
        path = os.path.join(tmp_path, "scene.txt")

        # Act
        SceneConverter.save(fxt_cloud, path)
        cloud = SceneConverter.load(path)

        # Assert
        assert cloud.to_rows() == fxt_cloud.to_rows()

    def test_empty_scene(self):
        # Act
        cloud = SceneConverter.from_text("# aquasplat-scene\nversion 1\ncount 0\n")

        # Assert
        assert len(cloud) == 0

    def test_missing_header(self):
        # Act and Assert
        with pytest.raises(SceneFormatError) as error:
            SceneConverter.from_text("version 1\ncount 0\n", path="scene.txt")
        assert error.value.line_number == 1
        assert "'scene.txt', line 1" in str(error.value)

    def test_short_row(self, fxt_cloud: GaussianCloud):
        # Arrange
        lines = SceneConverter.to_text(fxt_cloud).splitlines()
        lines[4] = " ".join(lines[4].split()[:13])

        # Act and Assert
        with pytest.raises(SceneFormatError) as error:
            SceneConverter.from_text("\n".join(lines))
        assert error.value.line_number == 5
        assert "expected 14 values, found 13" in str(error.value)

    def test_non_numeric_value(self, fxt_cloud: GaussianCloud):
        # Arrange
        lines = SceneConverter.to_text(fxt_cloud).splitlines()
        lines[3] = lines[3].replace(lines[3].split()[0], "abc", 1)

        # Act and Assert
        with pytest.raises(SceneFormatError) as error:
            SceneConverter.from_text("\n".join(lines))
        assert error.value.line_number == 4

    def test_count_mismatch(self, fxt_cloud: GaussianCloud):
        # Arrange
        text = SceneConverter.to_text(fxt_cloud).replace("count 4", "count 5")

        # Act and Assert
        with pytest.raises(SceneFormatError, match="announces 5 Gaussians, found 4"):
            SceneConverter.from_text(text)

    def test_non_finite_values(self, fxt_cloud: GaussianCloud):
        # Arrange
        lines = SceneConverter.to_text(fxt_cloud).splitlines()
        fields = lines[3].split()
        fields[0] = "nan"
        lines[3] = " ".join(fields)

        # Act and Assert
        with pytest.raises(SceneFormatError, match="non-finite"):
            SceneConverter.from_text("\n".join(lines))
