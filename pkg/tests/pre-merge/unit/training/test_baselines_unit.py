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

import numpy as np
import pytest

from aquasplat.training import sample_baselines


class TestSampleBaselines:
    def test_distribution_is_centered(self):
        # Arrange
        rng = np.random.default_rng(0)
        num_samples = 100000

        # Act
        samples = np.array([sample_baselines(rng)[1] for _ in range(num_samples)])

        # Assert
        standard_error = 0.4 / math.sqrt(3.0) / math.sqrt(num_samples)
        assert abs(samples.mean()) < 3 * standard_error
        assert samples.min() >= -0.4
        assert samples.max() <= 0.4

    def test_horizontal_baseline_ratio(self):
        # Arrange
        rng = np.random.default_rng(1)

        # Act
        pairs = [sample_baselines(rng) for _ in range(100)]

        # Assert
        assert all(horizontal == 1.5 * vertical for horizontal, vertical in pairs)

    def test_same_seed_same_baselines(self):
        # Act
        first = [sample_baselines(np.random.default_rng(7)) for _ in range(3)]
        second = [sample_baselines(np.random.default_rng(7)) for _ in range(3)]

        # Assert
        assert first == second

    def test_zero_range(self):
        # Act and Assert
        assert sample_baselines(np.random.default_rng(2), baseline_range=0.0) == (
            0.0,
            0.0,
        )

    def test_negative_range(self):
        # Act and Assert
        with pytest.raises(ValueError):
            sample_baselines(np.random.default_rng(3), baseline_range=-0.1)
