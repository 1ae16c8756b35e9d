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

import warnings
from typing import Dict, List, Tuple

import torch
from torch import nn

from aquasplat.data_models import DTYPE
from aquasplat.data_models.utils import to_tensor

from .encoding import encode_direction, encoded_size

UNIT_NORM_TOLERANCE = 1e-6


def build_mlp(
    in_features: int, out_features: int, hidden_width: int, hidden_layers: int
) -> nn.Sequential:
    """
    Build a fully connected ReLU network in double precision.

    :param in_features: Size of the input
    :param out_features: Size of the output
    :param hidden_width: Number of units per hidden layer
    :param hidden_layers: Number of hidden layers
    :return: nn.Sequential alternating Linear and ReLU modules, ending in Linear
    """
    layers: List[nn.Module] = []
    width = in_features
    for _ in range(hidden_layers):
        layers.append(nn.Linear(width, hidden_width, dtype=DTYPE))
        layers.append(nn.ReLU())
        width = hidden_width
    layers.append(nn.Linear(width, out_features, dtype=DTYPE))
    return nn.Sequential(*layers)


def linear_layers(network: nn.Sequential) -> List[nn.Linear]:
    """
    Return the linear layers of a network, in order.
    """
    return [module for module in network if isinstance(module, nn.Linear)]


class MediumField(nn.Module):
    """
    The two small networks of the medium model.

    `phi_med` maps an encoded ray direction to the attenuation and backscatter
    coefficients and the medium color. `phi_alpha` maps (opacity, normalized depth,
    viewing direction) to a depth-aware opacity. Its output layer starts at zero, so
    the adjusted opacity starts at 0.5.

    :param hidden_width: Number of units per hidden layer of both networks
    :param hidden_layers: Number of hidden layers of both networks
    :param frequencies: Number of frequencies of the direction encoding
    :param scene_extent: Length scale used to normalize depths for `phi_alpha`
    :param seed: Seed for the weight initialization
    """

    def __init__(
        self,
        hidden_width: int = 32,
        hidden_layers: int = 2,
        frequencies: int = 4,
        scene_extent: float = 1.0,
        seed: int = 0,
    ) -> None:
        super().__init__()
        if scene_extent <= 0:
            raise ValueError(f"Scene extent must be positive, got {scene_extent}")
        self.hidden_width = hidden_width
        self.hidden_layers = hidden_layers
        self.frequencies = frequencies
        self.scene_extent = float(scene_extent)
        self.seed = seed
        with torch.random.fork_rng(devices=[]):
            torch.manual_seed(seed)
            self.phi_med = build_mlp(
                encoded_size(frequencies), 9, hidden_width, hidden_layers
            )
            self.phi_alpha = build_mlp(5, 1, hidden_width, hidden_layers)
        with torch.no_grad():
            output_layer = linear_layers(self.phi_alpha)[-1]
            output_layer.weight.zero_()
            output_layer.bias.zero_()

    def describe(self) -> Dict[str, float]:
        """
        Return the hyperparameters of the field, as needed to rebuild it.
        """
        return {
            "hidden_width": self.hidden_width,
            "hidden_layers": self.hidden_layers,
            "frequencies": self.frequencies,
            "scene_extent": self.scene_extent,
            "seed": self.seed,
        }

    def medium(
        self, directions: torch.Tensor
    ) -> Tuple[torch.Tensor, torch.Tensor, torch.Tensor]:
        """
        Evaluate the medium network for a batch of unit ray directions.

        :param directions: Unit world-space directions, shape (..., 3)
        :return: Tuple of sigma_attn, sigma_bs (both >= 0) and c_med (in (0, 1)),
            each of shape (..., 3)
        """
        raw = self.phi_med(encode_direction(directions, self.frequencies))
        sigma_attn = nn.functional.softplus(raw[..., 0:3])
        sigma_bs = nn.functional.softplus(raw[..., 3:6])
        c_med = torch.sigmoid(raw[..., 6:9])
        return sigma_attn, sigma_bs, c_med

    def depth_aware_opacity(
        self, opacities: torch.Tensor, depths: torch.Tensor, directions: torch.Tensor
    ) -> torch.Tensor:
        """
        Evaluate the opacity network, alpha^d = sigmoid(phi_alpha(alpha, z, v)).

        :param opacities: Opacities in (0, 1), shape (N,)
        :param depths: Camera depths, shape (N,)
        :param directions: Unit viewing directions, shape (N, 3)
        :return: Depth-aware opacities in (0, 1), shape (N,)
        """
        features = torch.cat(
            [
                opacities[:, None],
                (depths / self.scene_extent)[:, None],
                directions,
            ],
            dim=-1,
        )
        return torch.sigmoid(self.phi_alpha(features)[:, 0])


def _unit_directions(directions: torch.Tensor) -> torch.Tensor:
    """
    Return `directions` normalized to unit length, warning if they were not.
    """
    norms = torch.linalg.norm(directions, dim=-1, keepdim=True)
    if bool(torch.any(torch.abs(norms - 1.0) > UNIT_NORM_TOLERANCE)):
        warnings.warn(
            "Ray directions passed to the medium network are not unit vectors; "
            "they are normalized before evaluation.",
            stacklevel=3,
        )
        return directions / norms
    return directions


def medium_eval(
    field: MediumField, ray_direction: torch.Tensor
) -> Tuple[torch.Tensor, torch.Tensor, torch.Tensor]:
    """
    Evaluate the medium coefficients for one or more rays.

    :param field: MediumField holding the medium network
    :param ray_direction: Unit world-space direction(s), shape (3,) or (..., 3).
        Non-unit directions are normalized with a warning
    :return: Tuple of sigma_attn, sigma_bs and c_med, with the shape of the input
    """
    return field.medium(_unit_directions(to_tensor(ray_direction)))


def alpha_adjust(
    field: MediumField,
    opacity: torch.Tensor,
    depth: torch.Tensor,
    view_direction: torch.Tensor,
    weight: float,
) -> torch.Tensor:
    """
    Blend opacities with their depth-aware prediction,
    alpha' = (1 - w) alpha + w alpha^d.

    With w = 0 the network is not evaluated and `opacity` is returned unchanged.

    :param field: MediumField holding the opacity network
    :param opacity: Opacities in (0, 1), shape () or (N,)
    :param depth: Camera depths, same shape as `opacity`
    :param view_direction: Unit viewing directions, shape (3,) or (N, 3)
    :param weight: Blend weight w in [0, 1]
    :return: Adjusted opacities in (0, 1), same shape as `opacity`
    """
    if not 0.0 <= weight <= 1.0:
        raise ValueError(f"Blend weight must be in [0, 1], got {weight}")
    if weight == 0.0:
        return opacity
    opacity = to_tensor(opacity)
    scalar_input = opacity.ndim == 0
    opacities = opacity.reshape(-1)
    depths = to_tensor(depth).reshape(-1)
    directions = _unit_directions(to_tensor(view_direction).reshape(-1, 3))
    adjusted = field.depth_aware_opacity(opacities, depths, directions)
    blended = (1.0 - weight) * opacities + weight * adjusted
    return blended[0] if scalar_input else blended
