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

import pytest
import torch

from aquasplat.data_models import DTYPE, GaussianCloud
from aquasplat.exceptions import NonFiniteGradientError
from aquasplat.gradients import ParamSet, backward, gradients_of
from aquasplat.networks import MediumField


class TestParamSet:
    def test_from_model_order(
        self, fxt_cloud: GaussianCloud, fxt_medium_field: MediumField
    ):
        # Arrange
        cloud = fxt_cloud.detached().requires_grad_()

        # Act
        params = ParamSet.from_model(cloud, {"phi_med": fxt_medium_field.phi_med})

        # Assert
        assert params.names[:5] == [
            "means",
            "log_scales",
            "rotations",
            "opacity_logits",
            "colors",
        ]
        assert params.names[5] == "phi_med.0.weight"
        num_network = sum(p.numel() for p in fxt_medium_field.phi_med.parameters())
        assert len(params) == 4 * 14 + num_network
        assert params.sizes()["rotations"] == 16

    def test_locate_and_flatten(self):
        # Arrange
        first = torch.arange(6, dtype=DTYPE).reshape(2, 3)
        second = torch.tensor([10.0, 11.0], dtype=DTYPE)
        params = ParamSet(names=["a", "b"], tensors=[first, second])

        # Act and Assert
        assert params.locate(0) == (0, 0)
        assert params.locate(5) == (0, 5)
        assert params.locate(7) == (1, 1)
        assert params.flatten().tolist() == [0, 1, 2, 3, 4, 5, 10, 11]
        with pytest.raises(IndexError):
            params.locate(8)


class TestGradients:
    def test_unused_groups_get_zero_gradients(self):
        # Arrange
        x = torch.tensor([1.0, 2.0], dtype=DTYPE, requires_grad=True)
        y = torch.tensor([3.0], dtype=DTYPE, requires_grad=True)
        params = ParamSet(names=["x", "y"], tensors=[x, y])

        # Act
        grads = gradients_of((x**2).sum(), params)
        constant = gradients_of(torch.tensor(1.0, dtype=DTYPE), params)

        # Assert
        assert grads["x"].tolist() == [2.0, 4.0]
        assert grads["y"].tolist() == [0.0]
        assert x.grad is None
        assert constant.flatten().tolist() == [0.0, 0.0, 0.0]

    def test_backward_fills_grad_attributes(self):
        # Arrange
        x = torch.tensor([1.0, -2.0], dtype=DTYPE, requires_grad=True)
        params = ParamSet(names=["x"], tensors=[x])

        # Act
        grads = backward((3.0 * x).sum(), params)

        # Assert
        assert x.grad.tolist() == [3.0, 3.0]
        assert grads.is_finite

    def test_non_finite_gradient_is_traced_to_its_term(self, caplog):
        # Arrange
        x = torch.tensor([1.0], dtype=DTYPE, requires_grad=True)
        y = torch.tensor([0.0], dtype=DTYPE, requires_grad=True)
        params = ParamSet(names=["x", "y"], tensors=[x, y])
        terms = {"smooth": x.sum(), "rough": torch.sqrt(y).sum()}

        # Act
        with caplog.at_level(logging.ERROR):
            with pytest.raises(NonFiniteGradientError) as error:
                backward(terms["smooth"] + terms["rough"], params, terms)

        # Assert
        assert error.value.term == "rough"
        assert error.value.parameter == "y"
        assert "rough" in caplog.text
