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
from pytest_mock import MockerFixture
from torch import nn

from aquasplat.data_models import DTYPE
from aquasplat.networks import (
    MediumField,
    alpha_adjust,
    build_mlp,
    encode_direction,
    encoded_size,
    linear_layers,
    medium_eval,
)


def _directions(count: int, seed: int = 0) -> torch.Tensor:
    generator = torch.Generator().manual_seed(seed)
    directions = torch.randn(count, 3, generator=generator, dtype=DTYPE)
    return directions / torch.linalg.norm(directions, dim=1, keepdim=True)


class TestEncoding:
    def test_layout(self):
        # Arrange
        directions = _directions(5)

        # Act
        encoded = encode_direction(directions, 2)

        # Assert
        assert encoded.shape == (5, encoded_size(2)) == (5, 15)
        assert torch.equal(encoded[:, :3], directions)
        assert torch.allclose(encoded[:, 3:6], torch.sin(math.pi * directions))
        assert torch.allclose(encoded[:, 12:15], torch.cos(2 * math.pi * directions))

    def test_zero_frequencies_is_the_direction(self):
        # Arrange
        directions = _directions(3)

        # Act and Assert
        assert torch.equal(encode_direction(directions, 0), directions)

    def test_negative_frequencies(self):
        # Act and Assert
        with pytest.raises(ValueError):
            encode_direction(_directions(1), -1)


class TestBuildMlp:
    def test_layers_and_precision(self):
        # Act
        network = build_mlp(7, 2, hidden_width=5, hidden_layers=3)

        # Assert
        layers = linear_layers(network)
        assert len(layers) == 4
        assert sum(isinstance(module, nn.ReLU) for module in network) == 3
        assert layers[0].in_features == 7
        assert layers[-1].out_features == 2
        assert all(layer.weight.dtype == DTYPE for layer in layers)


class TestMediumField:
    def test_same_seed_gives_same_weights(self):
        # Act
        first = MediumField(8, 1, 2, seed=3)
        second = MediumField(8, 1, 2, seed=3)
        other = MediumField(8, 1, 2, seed=4)

        # Assert
        for a, b in zip(first.parameters(), second.parameters()):
            assert torch.equal(a, b)
        assert not torch.equal(
            linear_layers(first.phi_med)[0].weight,
            linear_layers(other.phi_med)[0].weight,
        )

    def test_seed_does_not_touch_global_generator(self):
        # Arrange
        torch.manual_seed(123)
        expected = torch.rand(3)
        torch.manual_seed(123)

        # Act
        MediumField(8, 1, 2, seed=9)

        # Assert
        assert torch.equal(torch.rand(3), expected)

    def test_medium_ranges(self, fxt_medium_field: MediumField):
        # Act
        sigma_attn, sigma_bs, c_med = fxt_medium_field.medium(_directions(64))

        # Assert
        assert sigma_attn.shape == sigma_bs.shape == c_med.shape == (64, 3)
        assert torch.all(sigma_attn >= 0) and torch.all(sigma_bs >= 0)
        assert torch.all((c_med > 0) & (c_med < 1))

    def test_initial_depth_aware_opacity(self, fxt_medium_field: MediumField):
        # Arrange
        opacities = torch.tensor([0.1, 0.5, 0.9], dtype=DTYPE)
        depths = torch.tensor([1.0, 2.0, 3.0], dtype=DTYPE)

        # Act
        adjusted = fxt_medium_field.depth_aware_opacity(
            opacities, depths, _directions(3)
        )

        # Assert
        assert torch.equal(adjusted, torch.full((3,), 0.5, dtype=DTYPE))

    def test_describe(self):
        # Act
        description = MediumField(16, 2, 3, scene_extent=4.0, seed=1).describe()

        # Assert
        assert description == {
            "hidden_width": 16,
            "hidden_layers": 2,
            "frequencies": 3,
            "scene_extent": 4.0,
            "seed": 1,
        }

    def test_non_positive_scene_extent(self):
        # Act and Assert
        with pytest.raises(ValueError):
            MediumField(scene_extent=0.0)


class TestMediumEval:
    def test_single_direction(self, fxt_medium_field: MediumField):
        # Act
        sigma_attn, _, c_med = medium_eval(fxt_medium_field, [0.0, 0.0, 1.0])

        # Assert
        assert sigma_attn.shape == c_med.shape == (3,)

    def test_non_unit_direction_warns_and_is_normalized(
        self, fxt_medium_field: MediumField
    ):
        # Arrange
        direction = torch.tensor([0.0, 3.0, 4.0], dtype=DTYPE)

        # Act
        with pytest.warns(UserWarning):
            scaled = medium_eval(fxt_medium_field, direction)
        unit = medium_eval(fxt_medium_field, direction / 5.0)

        # Assert
        for a, b in zip(scaled, unit):
            assert torch.allclose(a, b, atol=1e-15)


class TestAlphaAdjust:
    def test_zero_weight_skips_the_network(
        self, fxt_medium_field: MediumField, mocker: MockerFixture
    ):
        # Arrange
        spy = mocker.spy(fxt_medium_field, "depth_aware_opacity")
        opacity = torch.tensor([0.3, 0.7], dtype=DTYPE)

        # Act
        adjusted = alpha_adjust(
            fxt_medium_field, opacity, torch.ones(2, dtype=DTYPE), _directions(2), 0.0
        )

        # Assert
        assert adjusted is opacity
        spy.assert_not_called()

    def test_blend(self, fxt_medium_field: MediumField):
        # Act
        adjusted = alpha_adjust(
            fxt_medium_field,
            torch.tensor([0.2, 0.8], dtype=DTYPE),
            torch.tensor([1.0, 5.0], dtype=DTYPE),
            _directions(2),
            0.5,
        )

        # Assert
        expected = torch.tensor([0.35, 0.65], dtype=DTYPE)
        assert torch.allclose(adjusted, expected, atol=1e-15)

    def test_scalar_input(self, fxt_medium_field: MediumField):
        # Act
        adjusted = alpha_adjust(fxt_medium_field, 0.4, 2.0, [1.0, 0.0, 0.0], 1.0)

        # Assert
        assert adjusted.ndim == 0
        assert float(adjusted) == 0.5

    @pytest.mark.parametrize("weight", [-0.1, 1.5])
    def test_weight_out_of_range(self, fxt_medium_field: MediumField, weight: float):
        # Act and Assert
        with pytest.raises(ValueError):
            alpha_adjust(fxt_medium_field, 0.4, 2.0, [1.0, 0.0, 0.0], weight)
